//! Flag/config-file merging and the parsing of user-facing value grammars.
//!
//! Precedence is flags > config file > built-in defaults. The config file
//! (pointed at by the `LMOMENT_CONFIG` environment variable) is a
//! reproducible experiment manifest: `key = value`, one per line, `#`
//! comments, keys spelled like the long flags without the dashes. A single
//! manifest may carry keys for several subcommands; keys the current
//! command does not consult are ignored, but every key must belong to the
//! known vocabulary and parse to its declared type, so a broken manifest
//! fails loudly no matter which command reads it.

use std::collections::BTreeMap;
use std::env;
use std::fs;
use std::path::PathBuf;
use std::str::FromStr;

use anyhow::{anyhow, bail, Context, Result};
use lmoment_core::characters::Modulus;
use lmoment_core::coefficients::HeckeCoefficients;
use lmoment_core::identity_lab::{TOLERANCE_EXACT, TOLERANCE_QUADRATURE};
use lmoment_core::lvalues::DEFAULT_NONVANISHING_THRESHOLD;
use lmoment_core::special_functions::SpectralParameter;

use crate::args::{Cli, Command, FormatArg};
use crate::report::OutputFormat;

/// Environment variable naming the config file to merge under the flags.
pub const ENV_CONFIG_VAR: &str = "LMOMENT_CONFIG";

/// Largest standard modulus the verify suite sweeps by default.
pub const DEFAULT_Q_MAX: u64 = 221;

/// Coprime-argument sweep limit for the family-identity checks.
pub const DEFAULT_AB_LIMIT: u64 = 50;

/// Default gate for the moment-trend diagnostic `|ratio - 1|` at the
/// largest modulus of a run.
pub const DEFAULT_TREND_TARGET: f64 = 0.5;

/// Initial length of a synthetic coefficient table; family computations
/// extend their working copy to whatever horizon they need.
const SEED_TABLE_LEN: u64 = 64;

/// Key vocabulary of the config file, mirroring the long flags.
const CONFIG_KEYS: &[&str] = &[
    "modulus",
    "moduli",
    "coeff",
    "format",
    "output",
    "threads",
    "tolerance-exact",
    "tolerance-quad",
    "q-max",
    "all",
    "threshold",
    "timings",
];

/// Parsed `key = value` manifest with typed accessors.
#[derive(Debug, Default)]
pub struct ConfigFile {
    entries: BTreeMap<String, String>,
}

impl ConfigFile {
    pub fn parse(text: &str) -> Result<Self> {
        let mut entries = BTreeMap::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let body = raw.trim();
            if body.is_empty() || body.starts_with('#') {
                continue;
            }
            let Some((key, value)) = body.split_once('=') else {
                bail!("config line {line}: expected `key = value`");
            };
            let key = key.trim();
            let value = value.trim();
            if !CONFIG_KEYS.contains(&key) {
                bail!("config line {line}: unknown key `{key}`");
            }
            if entries.insert(key.to_string(), value.to_string()).is_some() {
                bail!("config line {line}: duplicate key `{key}`");
            }
        }
        let cfg = Self { entries };
        cfg.validate_types()?;
        Ok(cfg)
    }

    /// Every present key must parse to its declared type, even when the
    /// current command would not consult it.
    fn validate_types(&self) -> Result<()> {
        self.parsed::<usize>("threads")?;
        self.parsed::<u64>("q-max")?;
        self.parsed::<f64>("tolerance-exact")?;
        self.parsed::<f64>("tolerance-quad")?;
        self.parsed::<f64>("threshold")?;
        self.flag("all")?;
        self.flag("timings")?;
        self.format()?;
        Ok(())
    }

    pub fn raw(&self, key: &str) -> Option<&str> {
        self.entries.get(key).map(String::as_str)
    }

    pub fn parsed<T: FromStr>(&self, key: &str) -> Result<Option<T>> {
        match self.entries.get(key) {
            None => Ok(None),
            Some(v) => v
                .parse()
                .map(Some)
                .map_err(|_| anyhow!("config key `{key}`: unreadable value `{v}`")),
        }
    }

    pub fn flag(&self, key: &str) -> Result<Option<bool>> {
        match self.entries.get(key).map(String::as_str) {
            None => Ok(None),
            Some("true") => Ok(Some(true)),
            Some("false") => Ok(Some(false)),
            Some(v) => bail!("config key `{key}`: expected `true` or `false`, got `{v}`"),
        }
    }

    pub fn format(&self) -> Result<Option<FormatArg>> {
        match self.entries.get("format").map(String::as_str) {
            None => Ok(None),
            Some("csv") => Ok(Some(FormatArg::Csv)),
            Some("json") => Ok(Some(FormatArg::Json)),
            Some(v) => bail!("config key `format`: expected `csv` or `json`, got `{v}`"),
        }
    }
}

/// A modulus spec: an odd prime written plainly, or `q1xq2` for a product
/// of two distinct odd primes (order of the factors does not matter). A
/// plain composite like `15` is also accepted — it names the same modulus
/// as `3x5`.
pub fn parse_modulus_spec(spec: &str) -> Result<Modulus> {
    let body = spec.trim();
    if body.is_empty() {
        bail!("empty modulus spec");
    }
    let q = if let Some((a, b)) = body.split_once('x') {
        let q1: u64 = a
            .trim()
            .parse()
            .map_err(|_| anyhow!("modulus spec `{body}`: unreadable factor `{}`", a.trim()))?;
        let q2: u64 = b
            .trim()
            .parse()
            .map_err(|_| anyhow!("modulus spec `{body}`: unreadable factor `{}`", b.trim()))?;
        q1.checked_mul(q2)
            .ok_or_else(|| anyhow!("modulus spec `{body}`: the product overflows"))?
    } else {
        body.parse()
            .map_err(|_| anyhow!("modulus spec `{body}` is neither an integer nor `q1xq2`"))?
    };
    Modulus::new(q).map_err(|e| anyhow!("modulus spec `{body}`: {e}"))
}

/// A coefficient source spec: `eisenstein:<t>` for the synthetic family at
/// spectral parameter `t`, or `file:<path>` for an external table.
pub fn load_coefficients(spec: &str) -> Result<HeckeCoefficients> {
    let body = spec.trim();
    let Some((kind, rest)) = body.split_once(':') else {
        bail!("coefficient spec `{body}` must be `eisenstein:<t>` or `file:<path>`");
    };
    match kind {
        "eisenstein" => {
            let t: f64 = rest
                .parse()
                .map_err(|_| anyhow!("coefficient spec `{body}`: unreadable parameter `{rest}`"))?;
            let t = SpectralParameter::new(t).map_err(|e| anyhow!("coefficient spec `{body}`: {e}"))?;
            Ok(HeckeCoefficients::eisenstein(t, SEED_TABLE_LEN))
        }
        "file" => {
            let text =
                fs::read_to_string(rest).with_context(|| format!("coefficient file `{rest}`"))?;
            HeckeCoefficients::from_text(&text, rest)
                .map_err(|e| anyhow!("coefficient file `{rest}`: {e}"))
        }
        other => bail!("unknown coefficient source `{other}` (use `eisenstein:<t>` or `file:<path>`)"),
    }
}

/// Fully merged, validated run description.
#[derive(Debug)]
pub struct RunConfig {
    pub command: CommandConfig,
    pub format: OutputFormat,
    /// `None` writes to stdout.
    pub output: Option<PathBuf>,
    pub threads: usize,
}

#[derive(Debug)]
pub enum CommandConfig {
    Verify {
        q_max: u64,
        extended: bool,
        tolerance_exact: f64,
        tolerance_quad: f64,
    },
    Lvalue {
        modulus: Modulus,
        coeff: HeckeCoefficients,
    },
    Moment {
        /// Ascending by `q`, deduplicated.
        moduli: Vec<Modulus>,
        coeff: HeckeCoefficients,
        trend_target: f64,
        timings: bool,
    },
    Scan {
        modulus: Modulus,
        coeff: HeckeCoefficients,
        threshold: f64,
    },
    Characters {
        modulus: Modulus,
    },
}

impl RunConfig {
    /// Merge the parsed command line with the manifest named by
    /// [`ENV_CONFIG_VAR`], if any.
    pub fn from_cli(cli: Cli) -> Result<Self> {
        let text = match env::var_os(ENV_CONFIG_VAR) {
            Some(path) => {
                let path = PathBuf::from(path);
                Some(
                    fs::read_to_string(&path)
                        .with_context(|| format!("config file `{}`", path.display()))?,
                )
            }
            None => None,
        };
        Self::assemble(cli, text.as_deref())
    }

    /// Merge with an explicit manifest text (the testable core of
    /// [`Self::from_cli`]).
    pub fn assemble(cli: Cli, config_text: Option<&str>) -> Result<Self> {
        let cfg = match config_text {
            Some(text) => ConfigFile::parse(text)?,
            None => ConfigFile::default(),
        };
        let (io, command) = match cli.command {
            Command::Verify(a) => {
                let q_max = a.q_max.or(cfg.parsed("q-max")?).unwrap_or(DEFAULT_Q_MAX);
                let extended = a.all || cfg.flag("all")?.unwrap_or(false);
                let tolerance_exact = a
                    .tolerance_exact
                    .or(cfg.parsed("tolerance-exact")?)
                    .unwrap_or(TOLERANCE_EXACT);
                let tolerance_quad = a
                    .tolerance_quad
                    .or(cfg.parsed("tolerance-quad")?)
                    .unwrap_or(TOLERANCE_QUADRATURE);
                require_positive(tolerance_exact, "--tolerance-exact")?;
                require_positive(tolerance_quad, "--tolerance-quad")?;
                (
                    a.io,
                    CommandConfig::Verify {
                        q_max,
                        extended,
                        tolerance_exact,
                        tolerance_quad,
                    },
                )
            }
            Command::Lvalue(a) => {
                let modulus = required_modulus(a.modulus, &cfg)?;
                let coeff = required_coeff(a.coeff, &cfg)?;
                (a.io, CommandConfig::Lvalue { modulus, coeff })
            }
            Command::Moment(a) => {
                let coeff = required_coeff(a.coeff, &cfg)?;
                let moduli = moment_moduli(a.moduli, a.modulus, &cfg)?;
                let trend_target = a
                    .threshold
                    .or(cfg.parsed("threshold")?)
                    .unwrap_or(DEFAULT_TREND_TARGET);
                require_positive(trend_target, "--threshold")?;
                let timings = a.timings || cfg.flag("timings")?.unwrap_or(false);
                (
                    a.io,
                    CommandConfig::Moment {
                        moduli,
                        coeff,
                        trend_target,
                        timings,
                    },
                )
            }
            Command::Scan(a) => {
                let modulus = required_modulus(a.modulus, &cfg)?;
                let coeff = required_coeff(a.coeff, &cfg)?;
                let threshold = a
                    .threshold
                    .or(cfg.parsed("threshold")?)
                    .unwrap_or(DEFAULT_NONVANISHING_THRESHOLD);
                if !(threshold >= 0.0) {
                    bail!("--threshold must be a nonnegative number");
                }
                (
                    a.io,
                    CommandConfig::Scan {
                        modulus,
                        coeff,
                        threshold,
                    },
                )
            }
            Command::Characters(a) => {
                let modulus = required_modulus(a.modulus, &cfg)?;
                (a.io, CommandConfig::Characters { modulus })
            }
        };
        let format = io
            .format
            .or(cfg.format()?)
            .map(OutputFormat::from)
            .unwrap_or_else(|| default_format(&command));
        let output = io.output.or_else(|| cfg.raw("output").map(PathBuf::from));
        let threads = io.threads.or(cfg.parsed("threads")?).unwrap_or(1);
        if threads == 0 {
            bail!("--threads must be at least 1");
        }
        Ok(Self {
            command,
            format,
            output,
            threads,
        })
    }
}

/// Verification reports are line-oriented JSON by convention; every table
/// command defaults to CSV.
fn default_format(command: &CommandConfig) -> OutputFormat {
    match command {
        CommandConfig::Verify { .. } => OutputFormat::Json,
        _ => OutputFormat::Csv,
    }
}

fn require_positive(x: f64, what: &str) -> Result<()> {
    if !(x > 0.0) || !x.is_finite() {
        bail!("{what} must be a positive number");
    }
    Ok(())
}

fn required_modulus(flag: Option<String>, cfg: &ConfigFile) -> Result<Modulus> {
    let spec = flag
        .as_deref()
        .or_else(|| cfg.raw("modulus"))
        .ok_or_else(|| anyhow!("missing --modulus (or config key `modulus`)"))?;
    parse_modulus_spec(spec)
}

fn required_coeff(flag: Option<String>, cfg: &ConfigFile) -> Result<HeckeCoefficients> {
    let spec = flag
        .as_deref()
        .or_else(|| cfg.raw("coeff"))
        .ok_or_else(|| anyhow!("missing --coeff (or config key `coeff`)"))?;
    load_coefficients(spec)
}

/// The moment command accepts `--moduli` (a comma list) or `--modulus`
/// (one spec), but not both at once; the list is normalized to ascending
/// `q` with duplicates removed, matching the order the trend diagnostic
/// assumes.
fn moment_moduli(
    moduli: Option<String>,
    modulus: Option<String>,
    cfg: &ConfigFile,
) -> Result<Vec<Modulus>> {
    if moduli.is_some() && modulus.is_some() {
        bail!("give either --moduli or --modulus, not both");
    }
    let list_spec = moduli.as_deref().or_else(|| cfg.raw("moduli"));
    let single_spec = modulus.as_deref().or_else(|| cfg.raw("modulus"));
    let specs: Vec<&str> = match (list_spec, single_spec) {
        (Some(list), _) => list.split(',').collect(),
        (None, Some(single)) => vec![single],
        (None, None) => bail!("missing --moduli (or --modulus, or the matching config keys)"),
    };
    let mut parsed = Vec::with_capacity(specs.len());
    for spec in specs {
        parsed.push(parse_modulus_spec(spec)?);
    }
    parsed.sort_by_key(Modulus::q);
    parsed.dedup_by_key(|m| m.q());
    Ok(parsed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::args::{MomentArgs, ScanArgs, VerifyArgs};

    fn verify_cli(args: VerifyArgs) -> Cli {
        Cli {
            command: Command::Verify(args),
        }
    }

    #[test]
    fn modulus_specs_cover_both_grammars() {
        assert_eq!(parse_modulus_spec("5x7").unwrap().q(), 35);
        assert_eq!(parse_modulus_spec("7x5").unwrap().q(), 35);
        assert_eq!(parse_modulus_spec(" 11x13 ").unwrap().q(), 143);
        assert_eq!(parse_modulus_spec("101").unwrap().q(), 101);
        assert_eq!(parse_modulus_spec("15").unwrap().q(), 15);
        let (q1, q2) = parse_modulus_spec("7x5").unwrap().prime_pair().unwrap();
        assert!(q1 < q2, "factors come out normalized");
    }

    #[test]
    fn modulus_specs_reject_bad_inputs() {
        for bad in ["", "abc", "3x", "x5", "9", "4x6", "5x5", "2x7", "0x5"] {
            assert!(parse_modulus_spec(bad).is_err(), "accepted `{bad}`");
        }
        let huge = format!("{0}x{0}", u64::MAX);
        assert!(parse_modulus_spec(&huge)
            .unwrap_err()
            .to_string()
            .contains("overflows"));
    }

    #[test]
    fn coefficient_specs_build_the_right_sources() {
        let f = load_coefficients("eisenstein:1.5").unwrap();
        assert!(f.is_eisenstein());
        assert_eq!(f.t().t(), 1.5);

        let dir = env::temp_dir().join(format!("lmoment-config-test-{}", std::process::id()));
        fs::create_dir_all(&dir).unwrap();
        let path = dir.join("coeffs.txt");
        fs::write(&path, "t 1.25\n1 1.0\n2 0.7\n3 -0.3\n").unwrap();
        let g = load_coefficients(&format!("file:{}", path.display())).unwrap();
        assert!(!g.is_eisenstein());
        assert_eq!(g.t().t(), 1.25);
        assert_eq!(g.lambda(2), Some(0.7));
        fs::remove_dir_all(&dir).unwrap();
    }

    #[test]
    fn coefficient_specs_reject_bad_inputs() {
        assert!(load_coefficients("eisenstein").is_err());
        assert!(load_coefficients("eisenstein:abc").is_err());
        assert!(load_coefficients("eisenstein:inf").is_err());
        assert!(load_coefficients("gaussian:1").is_err());
        assert!(load_coefficients("file:/definitely/not/here.txt").is_err());
    }

    #[test]
    fn manifest_grammar_and_vocabulary_are_enforced() {
        let cfg = ConfigFile::parse(
            "# comment\n\n  threads = 4\nformat=json\nq-max = 77\nall = true\n",
        )
        .unwrap();
        assert_eq!(cfg.parsed::<usize>("threads").unwrap(), Some(4));
        assert_eq!(cfg.format().unwrap(), Some(FormatArg::Json));
        assert_eq!(cfg.parsed::<u64>("q-max").unwrap(), Some(77));
        assert_eq!(cfg.flag("all").unwrap(), Some(true));
        assert_eq!(cfg.raw("coeff"), None);

        for bad in [
            "threads 4",
            "warp = 9",
            "threads = 4\nthreads = 8",
            "threads = many",
            "all = yes",
            "format = yaml",
        ] {
            assert!(ConfigFile::parse(bad).is_err(), "accepted `{bad}`");
        }
    }

    #[test]
    fn flags_beat_the_manifest_and_the_manifest_beats_defaults() {
        let manifest = "q-max = 35\ntolerance-exact = 1e-7\nformat = csv\nthreads = 3\n";

        let merged = RunConfig::assemble(verify_cli(VerifyArgs::default()), Some(manifest)).unwrap();
        match merged.command {
            CommandConfig::Verify {
                q_max,
                extended,
                tolerance_exact,
                tolerance_quad,
            } => {
                assert_eq!(q_max, 35, "manifest beats the default");
                assert!(!extended);
                assert_eq!(tolerance_exact, 1e-7);
                assert_eq!(tolerance_quad, TOLERANCE_QUADRATURE, "default survives");
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(merged.format, OutputFormat::Csv, "manifest beats the default");
        assert_eq!(merged.threads, 3);

        let flags = VerifyArgs {
            q_max: Some(143),
            ..VerifyArgs::default()
        };
        let merged = RunConfig::assemble(verify_cli(flags), Some(manifest)).unwrap();
        match merged.command {
            CommandConfig::Verify { q_max, .. } => assert_eq!(q_max, 143, "flag beats the manifest"),
            other => panic!("{other:?}"),
        }

        let bare = RunConfig::assemble(verify_cli(VerifyArgs::default()), None).unwrap();
        match bare.command {
            CommandConfig::Verify {
                q_max,
                tolerance_exact,
                ..
            } => {
                assert_eq!(q_max, DEFAULT_Q_MAX);
                assert_eq!(tolerance_exact, TOLERANCE_EXACT);
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(bare.format, OutputFormat::Json, "verify defaults to JSON lines");
        assert_eq!(bare.threads, 1);
        assert!(bare.output.is_none());
    }

    #[test]
    fn scan_pulls_required_values_from_the_manifest() {
        let manifest = "modulus = 5x7\ncoeff = eisenstein:1\nthreshold = 0.25\n";
        let cli = Cli {
            command: Command::Scan(ScanArgs::default()),
        };
        let merged = RunConfig::assemble(cli, Some(manifest)).unwrap();
        match merged.command {
            CommandConfig::Scan {
                modulus,
                coeff,
                threshold,
            } => {
                assert_eq!(modulus.q(), 35);
                assert!(coeff.is_eisenstein());
                assert_eq!(threshold, 0.25);
            }
            other => panic!("{other:?}"),
        }

        let cli = Cli {
            command: Command::Scan(ScanArgs::default()),
        };
        let err = RunConfig::assemble(cli, None).unwrap_err().to_string();
        assert!(err.contains("--modulus"), "{err}");
    }

    #[test]
    fn moment_moduli_normalize_and_exclude_double_specs() {
        let args = MomentArgs {
            moduli: Some("35, 15,5x3 ,221".to_string()),
            coeff: Some("eisenstein:2".to_string()),
            ..MomentArgs::default()
        };
        let merged = RunConfig::assemble(
            Cli {
                command: Command::Moment(args),
            },
            None,
        )
        .unwrap();
        match merged.command {
            CommandConfig::Moment {
                moduli,
                trend_target,
                timings,
                ..
            } => {
                let qs: Vec<u64> = moduli.iter().map(Modulus::q).collect();
                assert_eq!(qs, vec![15, 35, 221], "sorted, deduplicated");
                assert_eq!(trend_target, DEFAULT_TREND_TARGET);
                assert!(!timings);
            }
            other => panic!("{other:?}"),
        }

        let both = MomentArgs {
            moduli: Some("15".to_string()),
            modulus: Some("35".to_string()),
            coeff: Some("eisenstein:2".to_string()),
            ..MomentArgs::default()
        };
        let err = RunConfig::assemble(
            Cli {
                command: Command::Moment(both),
            },
            None,
        )
        .unwrap_err()
        .to_string();
        assert!(err.contains("not both"), "{err}");
    }

    #[test]
    fn degenerate_numbers_are_rejected() {
        let zero_threads = VerifyArgs::default();
        let cli = Cli {
            command: Command::Verify(zero_threads),
        };
        let err = RunConfig::assemble(cli, Some("threads = 0"))
            .unwrap_err()
            .to_string();
        assert!(err.contains("--threads"), "{err}");

        let bad_tol = VerifyArgs {
            tolerance_exact: Some(-1.0),
            ..VerifyArgs::default()
        };
        let cli = Cli {
            command: Command::Verify(bad_tol),
        };
        assert!(RunConfig::assemble(cli, None).is_err());

        let bad_threshold = ScanArgs {
            modulus: Some("15".to_string()),
            coeff: Some("eisenstein:1".to_string()),
            threshold: Some(f64::NAN),
            ..ScanArgs::default()
        };
        let cli = Cli {
            command: Command::Scan(bad_threshold),
        };
        assert!(RunConfig::assemble(cli, None).is_err());
    }
}
