//! Deterministic rendering of result tables.
//!
//! Two formats are supported everywhere: CSV with a fixed header, and JSON
//! lines (one object per row, keys in declaration order). All numbers are
//! printed in shortest round-trip form, so a rendered table is a pure
//! function of the computed values — byte-identical across runs and thread
//! counts. The only caveat is JSON's lack of non-finite numbers:
//! `serde_json` writes `null` where a CSV cell would say `NaN` or `inf`.

use anyhow::Result;
use lmoment_core::identity_lab::VerificationReport;
use lmoment_core::lvalues::CentralValueRecord;
use lmoment_core::moments::MomentReport;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

impl From<crate::args::FormatArg> for OutputFormat {
    fn from(arg: crate::args::FormatArg) -> Self {
        match arg {
            crate::args::FormatArg::Csv => Self::Csv,
            crate::args::FormatArg::Json => Self::Json,
        }
    }
}

/// Quote a CSV field if it contains a delimiter, a quote, or a line break
/// (interior quotes are doubled per the usual CSV convention).
pub fn csv_field(raw: &str) -> String {
    if raw.contains([',', '"', '\n', '\r']) {
        let mut out = String::with_capacity(raw.len() + 2);
        out.push('"');
        for ch in raw.chars() {
            if ch == '"' {
                out.push('"');
            }
            out.push(ch);
        }
        out.push('"');
        out
    } else {
        raw.to_string()
    }
}

/// Shortest round-trip decimal form (`NaN`, `inf`, `-inf` for specials).
pub fn num(x: f64) -> String {
    format!("{x}")
}

/// Empty cell for a missing integer.
fn opt(x: Option<u64>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

/// A table as `header` + one CSV line per row, or as JSON lines.
pub fn render_table<R: Serialize>(
    format: OutputFormat,
    header: &str,
    rows: &[R],
    to_csv: impl Fn(&R) -> String,
) -> Result<String> {
    let mut out = String::new();
    match format {
        OutputFormat::Csv => {
            out.push_str(header);
            out.push('\n');
            for row in rows {
                out.push_str(&to_csv(row));
                out.push('\n');
            }
        }
        OutputFormat::Json => {
            for row in rows {
                out.push_str(&serde_json::to_string(row)?);
                out.push('\n');
            }
        }
    }
    Ok(out)
}

pub const VERIFY_HEADER: &str = "name,cases_run,max_abs_deviation,tolerance,passed,worst_case";

#[derive(Debug, Serialize)]
pub struct VerifyRow {
    pub name: String,
    pub cases_run: usize,
    pub max_abs_deviation: f64,
    pub tolerance: f64,
    pub passed: bool,
    pub worst_case: String,
}

impl VerifyRow {
    pub fn from_report(r: &VerificationReport) -> Self {
        Self {
            name: r.name.clone(),
            cases_run: r.cases_run,
            max_abs_deviation: r.max_abs_deviation,
            tolerance: r.tolerance,
            passed: r.passed,
            worst_case: r.worst_case.clone(),
        }
    }

    pub fn csv(&self) -> String {
        format!(
            "{},{},{},{},{},{}",
            csv_field(&self.name),
            self.cases_run,
            num(self.max_abs_deviation),
            num(self.tolerance),
            self.passed,
            csv_field(&self.worst_case)
        )
    }
}

pub const MOMENT_HEADER: &str =
    "q,q1,q2,re_sum,im_sum,main_term,re_ratio,im_ratio,s1_re,s1_im,s2_re,s2_im,n_chars,runtime_ms";

#[derive(Debug, Serialize)]
pub struct MomentRow {
    pub q: u64,
    pub q1: Option<u64>,
    pub q2: Option<u64>,
    pub re_sum: f64,
    pub im_sum: f64,
    pub main_term: f64,
    pub re_ratio: f64,
    pub im_ratio: f64,
    pub s1_re: f64,
    pub s1_im: f64,
    pub s2_re: f64,
    pub s2_im: f64,
    pub n_chars: usize,
    pub runtime_ms: u64,
}

impl MomentRow {
    pub fn from_report(r: &MomentReport) -> Self {
        Self {
            q: r.q,
            q1: r.q1,
            q2: r.q2,
            re_sum: r.family_sum.re,
            im_sum: r.family_sum.im,
            main_term: r.main_term,
            re_ratio: r.ratio.re,
            im_ratio: r.ratio.im,
            s1_re: r.s1.re,
            s1_im: r.s1.im,
            s2_re: r.s2.re,
            s2_im: r.s2.im,
            n_chars: r.num_characters,
            runtime_ms: r.runtime_ms,
        }
    }

    pub fn csv(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
            self.q,
            opt(self.q1),
            opt(self.q2),
            num(self.re_sum),
            num(self.im_sum),
            num(self.main_term),
            num(self.re_ratio),
            num(self.im_ratio),
            num(self.s1_re),
            num(self.s1_im),
            num(self.s2_re),
            num(self.s2_im),
            self.n_chars,
            self.runtime_ms
        )
    }
}

pub const LVALUE_HEADER: &str =
    "chi_id,re_product,im_product,re_l_chi,im_l_chi,re_twist,im_twist,truncation_n,tail_estimate";

#[derive(Debug, Serialize)]
pub struct LvalueRow {
    pub chi_id: usize,
    pub re_product: f64,
    pub im_product: f64,
    pub re_l_chi: f64,
    pub im_l_chi: f64,
    pub re_twist: f64,
    pub im_twist: f64,
    pub truncation_n: u64,
    pub tail_estimate: f64,
}

impl LvalueRow {
    pub fn from_record(r: &CentralValueRecord) -> Self {
        Self {
            chi_id: r.chi_id,
            re_product: r.product_afe.re,
            im_product: r.product_afe.im,
            re_l_chi: r.l_chi.re,
            im_l_chi: r.l_chi.im,
            re_twist: r.l_twist.re,
            im_twist: r.l_twist.im,
            truncation_n: r.truncation_n,
            tail_estimate: r.tail_estimate,
        }
    }

    pub fn csv(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{}",
            self.chi_id,
            num(self.re_product),
            num(self.im_product),
            num(self.re_l_chi),
            num(self.im_l_chi),
            num(self.re_twist),
            num(self.im_twist),
            self.truncation_n,
            num(self.tail_estimate)
        )
    }
}

pub const SCAN_HEADER: &str = "chi_id,abs_product";

#[derive(Debug, Serialize)]
pub struct ScanHit {
    pub chi_id: usize,
    pub abs_product: f64,
}

impl ScanHit {
    pub fn csv(&self) -> String {
        format!("{},{}", self.chi_id, num(self.abs_product))
    }
}

/// The scan's JSON form is a single object so an empty hit list is still an
/// explicit report.
#[derive(Debug, Serialize)]
pub struct ScanSummary {
    pub q: u64,
    pub threshold: f64,
    pub n_even_primitive: usize,
    pub hits: Vec<ScanHit>,
}

pub const CHARACTERS_HEADER: &str =
    "chi_id,exponents,parity,conductor,primitive,even_primitive,re_gauss,im_gauss";

#[derive(Debug, Serialize)]
pub struct CharacterRow {
    pub chi_id: usize,
    pub exponents: Vec<u64>,
    pub parity: &'static str,
    pub conductor: u64,
    pub primitive: bool,
    pub even_primitive: bool,
    pub re_gauss: f64,
    pub im_gauss: f64,
}

impl CharacterRow {
    pub fn csv(&self) -> String {
        let exponents = self
            .exponents
            .iter()
            .map(u64::to_string)
            .collect::<Vec<_>>()
            .join(";");
        format!(
            "{},{},{},{},{},{},{},{}",
            self.chi_id,
            exponents,
            self.parity,
            self.conductor,
            self.primitive,
            self.even_primitive,
            num(self.re_gauss),
            num(self.im_gauss)
        )
    }
}
