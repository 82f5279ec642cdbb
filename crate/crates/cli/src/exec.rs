//! Command execution: build the requested computation, run its parallel
//! map inside a sized worker pool, reduce in a fixed order, and render.
//!
//! Determinism contract: every row is computed independently of scheduling
//! (the heavy numerics are sequential per row), rows are collected in input
//! order, and reduction/rendering happen after the parallel phase. Hence
//! identical configurations produce byte-identical output for any
//! `--threads` value. Only `--timings` (wall-clock measurements) breaks
//! run-to-run identity, and only in the `runtime_ms` column it fills.

use std::fs;
use std::io::Write;
use std::path::Path;
use std::time::Instant;

use anyhow::{Context, Result};
use rayon::prelude::*;

use lmoment_core::characters::{enumerate_characters, gauss_sum, IdentityRoute, Modulus};
use lmoment_core::coefficients::HeckeCoefficients;
use lmoment_core::identity_lab::default_suite;
use lmoment_core::lvalues::FamilyContext;
use lmoment_core::moments::moment_report;
use lmoment_core::special_functions::ContourPlan;

use crate::config::{CommandConfig, RunConfig, DEFAULT_AB_LIMIT};
use crate::report::{
    render_table, CharacterRow, LvalueRow, MomentRow, OutputFormat, ScanHit, ScanSummary,
    VerifyRow, CHARACTERS_HEADER, LVALUE_HEADER, MOMENT_HEADER, SCAN_HEADER, VERIFY_HEADER,
};

/// Process-level result of a run; `main` maps it onto the exit code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    /// Output produced; all verifications (if any) passed.
    Success,
    /// Output produced, but at least one verification report failed.
    VerificationFailed,
}

/// A fully rendered run: the output body plus diagnostics that belong on
/// stderr (trend and scan summaries), kept out of the body so stdout stays
/// machine-readable.
#[derive(Debug)]
pub struct RenderedRun {
    pub body: String,
    pub outcome: Outcome,
    pub notes: Vec<String>,
}

/// Render the run and deliver it: body to the output target, notes to
/// stderr.
pub fn execute(config: &RunConfig) -> Result<Outcome> {
    let run = render(config)?;
    for note in &run.notes {
        eprintln!("{note}");
    }
    write_output(config.output.as_deref(), &run.body)?;
    Ok(run.outcome)
}

/// The pure part of [`execute`]: compute and format, no IO.
pub fn render(config: &RunConfig) -> Result<RenderedRun> {
    match &config.command {
        CommandConfig::Verify {
            q_max,
            extended,
            tolerance_exact,
            tolerance_quad,
        } => render_verify(
            config.format,
            *q_max,
            *extended,
            *tolerance_exact,
            *tolerance_quad,
        ),
        CommandConfig::Lvalue { modulus, coeff } => {
            render_lvalue(config.format, config.threads, modulus, coeff)
        }
        CommandConfig::Moment {
            moduli,
            coeff,
            trend_target,
            timings,
        } => render_moment(
            config.format,
            config.threads,
            moduli,
            coeff,
            *trend_target,
            *timings,
        ),
        CommandConfig::Scan {
            modulus,
            coeff,
            threshold,
        } => render_scan(config.format, config.threads, modulus, coeff, *threshold),
        CommandConfig::Characters { modulus } => render_characters(config.format, modulus),
    }
}

fn pool(threads: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .context("building the worker pool")
}

fn write_output(target: Option<&Path>, body: &str) -> Result<()> {
    match target {
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(body.as_bytes())?;
            stdout.flush()?;
            Ok(())
        }
        Some(path) => {
            fs::write(path, body).with_context(|| format!("writing `{}`", path.display()))
        }
    }
}

fn render_verify(
    format: OutputFormat,
    q_max: u64,
    extended: bool,
    tolerance_exact: f64,
    tolerance_quad: f64,
) -> Result<RenderedRun> {
    let reports = default_suite(
        q_max,
        DEFAULT_AB_LIMIT,
        tolerance_exact,
        tolerance_quad,
        extended,
    )?;
    let rows: Vec<VerifyRow> = reports.iter().map(VerifyRow::from_report).collect();
    let body = render_table(format, VERIFY_HEADER, &rows, VerifyRow::csv)?;
    let failed = rows.iter().filter(|r| !r.passed).count();
    let outcome = if failed == 0 {
        Outcome::Success
    } else {
        Outcome::VerificationFailed
    };
    let notes = vec![format!(
        "verify: {} of {} checks passed",
        rows.len() - failed,
        rows.len()
    )];
    Ok(RenderedRun {
        body,
        outcome,
        notes,
    })
}

fn render_lvalue(
    format: OutputFormat,
    threads: usize,
    modulus: &Modulus,
    coeff: &HeckeCoefficients,
) -> Result<RenderedRun> {
    let plan = ContourPlan::central_weight_default();
    let ctx = FamilyContext::new(coeff, modulus, &plan)?;
    let ids: Vec<usize> = ctx.even_primitive_ids().to_vec();
    let rows: Vec<Result<LvalueRow>> = pool(threads)?.install(|| {
        ids.par_iter()
            .map(|&id| Ok(LvalueRow::from_record(&ctx.record(id)?)))
            .collect()
    });
    let rows = rows.into_iter().collect::<Result<Vec<_>>>()?;
    let body = render_table(format, LVALUE_HEADER, &rows, LvalueRow::csv)?;
    Ok(RenderedRun {
        body,
        outcome: Outcome::Success,
        notes: Vec::new(),
    })
}

fn render_moment(
    format: OutputFormat,
    threads: usize,
    moduli: &[Modulus],
    coeff: &HeckeCoefficients,
    trend_target: f64,
    timings: bool,
) -> Result<RenderedRun> {
    let plan = ContourPlan::central_weight_default();
    let rows: Vec<Result<MomentRow>> = pool(threads)?.install(|| {
        moduli
            .par_iter()
            .map(|m| {
                let started = timings.then(Instant::now);
                let report = moment_report(coeff, m, &plan, IdentityRoute::Direct)?;
                let mut row = MomentRow::from_report(&report);
                if let Some(t0) = started {
                    row.runtime_ms = t0.elapsed().as_millis() as u64;
                }
                Ok(row)
            })
            .collect()
    });
    let rows = rows.into_iter().collect::<Result<Vec<_>>>()?;
    let body = render_table(format, MOMENT_HEADER, &rows, MomentRow::csv)?;
    // Trend diagnostic at the largest modulus (the rows are ascending in q).
    let notes = match rows.last() {
        Some(top) => {
            let dev = (top.re_ratio - 1.0).hypot(top.im_ratio);
            let status = if dev <= trend_target { "ok" } else { "exceeded" };
            vec![format!(
                "trend: |ratio - 1| = {dev:.6} at q = {} (target {trend_target}): {status}",
                top.q
            )]
        }
        None => Vec::new(),
    };
    Ok(RenderedRun {
        body,
        outcome: Outcome::Success,
        notes,
    })
}

fn render_scan(
    format: OutputFormat,
    threads: usize,
    modulus: &Modulus,
    coeff: &HeckeCoefficients,
    threshold: f64,
) -> Result<RenderedRun> {
    let plan = ContourPlan::central_weight_default();
    let ctx = FamilyContext::new(coeff, modulus, &plan)?;
    let ids: Vec<usize> = ctx.even_primitive_ids().to_vec();
    let magnitudes: Vec<Result<(usize, f64)>> = pool(threads)?.install(|| {
        ids.par_iter()
            .map(|&id| Ok((id, ctx.product_central(id)?.norm())))
            .collect()
    });
    let magnitudes = magnitudes.into_iter().collect::<Result<Vec<_>>>()?;
    let mut hits: Vec<ScanHit> = magnitudes
        .into_iter()
        .filter(|&(_, magnitude)| magnitude > threshold)
        .map(|(chi_id, abs_product)| ScanHit {
            chi_id,
            abs_product,
        })
        .collect();
    // Largest product first; ties resolved by character id so the order is
    // total (same rule as the library-level scan).
    hits.sort_by(|x, y| {
        y.abs_product
            .partial_cmp(&x.abs_product)
            .unwrap_or(core::cmp::Ordering::Equal)
            .then(x.chi_id.cmp(&y.chi_id))
    });
    let notes = vec![format!(
        "scan: {} of {} even primitive characters mod {} above threshold {}",
        hits.len(),
        ids.len(),
        modulus.q(),
        threshold
    )];
    let body = match format {
        OutputFormat::Csv => render_table(format, SCAN_HEADER, &hits, ScanHit::csv)?,
        OutputFormat::Json => {
            // One object, not one line per hit: an empty scan still gets an
            // explicit report.
            let summary = ScanSummary {
                q: modulus.q(),
                threshold,
                n_even_primitive: ids.len(),
                hits,
            };
            let mut line = serde_json::to_string(&summary)?;
            line.push('\n');
            line
        }
    };
    Ok(RenderedRun {
        body,
        outcome: Outcome::Success,
        notes,
    })
}

fn render_characters(format: OutputFormat, modulus: &Modulus) -> Result<RenderedRun> {
    let rows: Vec<CharacterRow> = enumerate_characters(modulus)
        .iter()
        .map(|chi| {
            let tau = gauss_sum(chi);
            CharacterRow {
                chi_id: chi.chi_id(),
                exponents: chi.exponents().to_vec(),
                parity: if chi.is_even() { "even" } else { "odd" },
                conductor: chi.conductor(),
                primitive: chi.is_primitive(),
                even_primitive: chi.is_even_primitive(),
                re_gauss: tau.re,
                im_gauss: tau.im,
            }
        })
        .collect();
    let body = render_table(format, CHARACTERS_HEADER, &rows, CharacterRow::csv)?;
    Ok(RenderedRun {
        body,
        outcome: Outcome::Success,
        notes: Vec::new(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use lmoment_core::lvalues::nonvanishing_scan;
    use lmoment_core::special_functions::SpectralParameter;

    fn eisenstein(t: f64) -> HeckeCoefficients {
        HeckeCoefficients::eisenstein(SpectralParameter::new(t).unwrap(), 64)
    }

    fn config(command: CommandConfig, format: OutputFormat, threads: usize) -> RunConfig {
        RunConfig {
            command,
            format,
            output: None,
            threads,
        }
    }

    #[test]
    fn characters_table_lists_the_whole_group() {
        let m = Modulus::new(5).unwrap();
        let run = render(&config(
            CommandConfig::Characters { modulus: m },
            OutputFormat::Csv,
            1,
        ))
        .unwrap();
        let lines: Vec<&str> = run.body.lines().collect();
        assert_eq!(lines.len(), 1 + 4, "header plus phi(5) rows");
        assert_eq!(lines[0], CHARACTERS_HEADER);
        // chi_id 0 is principal: even, conductor 1, not primitive.
        assert!(lines[1].starts_with("0,0,even,1,false,false,"));
        // chi_id 2 is the quadratic character: even, primitive, tau = sqrt(5).
        let quad: Vec<&str> = lines[3].split(',').collect();
        assert_eq!(&quad[..6], &["2", "2", "even", "5", "true", "true"]);
        let tau_re: f64 = quad[6].parse().unwrap();
        assert!((tau_re - 5f64.sqrt()).abs() < 1e-12);
        assert_eq!(run.outcome, Outcome::Success);
    }

    #[test]
    fn scan_agrees_with_the_library_routine() {
        let f = eisenstein(1.0);
        let m = Modulus::new(35).unwrap();
        let plan = ContourPlan::central_weight_default();
        let expected = nonvanishing_scan(&f, &m, 1e-4, &plan).unwrap();
        assert!(!expected.is_empty(), "the example family scans nonempty");

        let run = render(&config(
            CommandConfig::Scan {
                modulus: m,
                coeff: f,
                threshold: 1e-4,
            },
            OutputFormat::Csv,
            2,
        ))
        .unwrap();
        let lines: Vec<&str> = run.body.lines().collect();
        assert_eq!(lines[0], SCAN_HEADER);
        assert_eq!(lines.len() - 1, expected.len());
        for (line, (chi_id, magnitude)) in lines[1..].iter().zip(&expected) {
            let fields: Vec<&str> = line.split(',').collect();
            assert_eq!(fields[0].parse::<usize>().unwrap(), *chi_id);
            assert_eq!(fields[1].parse::<f64>().unwrap(), *magnitude);
        }
        assert_eq!(run.notes.len(), 1);
        assert!(run.notes[0].contains("above threshold"), "{}", run.notes[0]);
    }

    #[test]
    fn scan_json_reports_an_empty_result_explicitly() {
        let f = eisenstein(1.0);
        let m = Modulus::new(15).unwrap();
        let run = render(&config(
            CommandConfig::Scan {
                modulus: m,
                coeff: f,
                threshold: f64::INFINITY,
            },
            OutputFormat::Json,
            1,
        ))
        .unwrap();
        let value: serde_json::Value = serde_json::from_str(run.body.trim()).unwrap();
        assert_eq!(value["q"], 15);
        assert_eq!(value["n_even_primitive"], 2);
        assert_eq!(value["hits"].as_array().unwrap().len(), 0);
    }

    #[test]
    fn lvalue_rows_match_the_family_records() {
        let f = eisenstein(1.0);
        let m = Modulus::new(15).unwrap();
        let plan = ContourPlan::central_weight_default();
        let ctx = FamilyContext::new(&f, &m, &plan).unwrap();
        let records = ctx.records().unwrap();

        let run = render(&config(
            CommandConfig::Lvalue {
                modulus: m,
                coeff: f,
            },
            OutputFormat::Json,
            3,
        ))
        .unwrap();
        let lines: Vec<&str> = run.body.lines().collect();
        assert_eq!(lines.len(), records.len());
        for (line, record) in lines.iter().zip(&records) {
            let value: serde_json::Value = serde_json::from_str(line).unwrap();
            assert_eq!(value["chi_id"], record.chi_id);
            assert_eq!(value["re_product"], record.product_afe.re);
            assert_eq!(value["truncation_n"], record.truncation_n);
        }
    }

    #[test]
    fn moment_output_is_identical_across_thread_counts() {
        let m15 = Modulus::new(15).unwrap();
        let m21 = Modulus::new(21).unwrap();
        let make = |threads: usize| {
            config(
                CommandConfig::Moment {
                    moduli: vec![m15.clone(), m21.clone()],
                    coeff: eisenstein(1.0),
                    trend_target: 0.5,
                    timings: false,
                },
                OutputFormat::Csv,
                threads,
            )
        };
        let one = render(&make(1)).unwrap();
        let four = render(&make(4)).unwrap();
        assert_eq!(one.body, four.body);
        assert_eq!(one.notes, four.notes);
        let lines: Vec<&str> = one.body.lines().collect();
        assert_eq!(lines[0], MOMENT_HEADER);
        assert_eq!(lines.len(), 3);
        assert!(lines[1].starts_with("15,3,5,"));
        assert!(lines[2].starts_with("21,3,7,"));
        assert!(one.notes[0].starts_with("trend: |ratio - 1| = "), "{}", one.notes[0]);
        assert!(one.notes[0].contains("at q = 21"), "{}", one.notes[0]);
    }

    #[test]
    fn moment_timings_fill_only_the_runtime_column() {
        let m = Modulus::new(15).unwrap();
        let run = render(&config(
            CommandConfig::Moment {
                moduli: vec![m],
                coeff: eisenstein(1.0),
                trend_target: 0.5,
                timings: true,
            },
            OutputFormat::Json,
            1,
        ))
        .unwrap();
        let value: serde_json::Value = serde_json::from_str(run.body.lines().next().unwrap()).unwrap();
        assert!(value["runtime_ms"].is_u64());
        // The zero default is what keeps untimed runs reproducible; a timed
        // run merely reports whatever the clock said, possibly still 0 ms.
    }

    #[test]
    fn verify_failure_is_an_outcome_not_an_error() {
        // An absurdly tight exact tolerance forces at least one failing
        // report while every computation still succeeds.
        let run = render(&config(
            CommandConfig::Verify {
                q_max: 15,
                extended: false,
                tolerance_exact: 1e-300,
                tolerance_quad: 1e-4,
            },
            OutputFormat::Json,
            1,
        ))
        .unwrap();
        assert_eq!(run.outcome, Outcome::VerificationFailed);
        let mut names = Vec::new();
        let mut any_failed = false;
        for line in run.body.lines() {
            let value: serde_json::Value = serde_json::from_str(line).unwrap();
            names.push(value["name"].as_str().unwrap().to_string());
            any_failed |= !value["passed"].as_bool().unwrap();
        }
        assert!(any_failed);
        assert!(names.contains(&"orthogonality".to_string()), "{names:?}");
        assert!(names.contains(&"voronoi".to_string()), "{names:?}");
        assert!(run.notes[0].starts_with("verify: "), "{}", run.notes[0]);
    }
}
