//! Command-line grammar.
//!
//! Every value-carrying flag is optional at the parser level; required
//! values are enforced after the configuration file referenced by
//! `LMOMENT_CONFIG` has been merged in (flags win over the file). See
//! [`crate::config`] for the merge rules.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Moment computations over families of even primitive Dirichlet
/// characters: identity verification, central values, family averages
/// against their asymptotic main terms, and nonvanishing scans.
#[derive(Debug, Parser)]
#[command(name = "lmoment", version, about)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the identity verification suite and report every check.
    Verify(VerifyArgs),
    /// Central values for every even primitive character of one modulus.
    Lvalue(LvalueArgs),
    /// Family averages, main terms, and the S1/S2 split across moduli.
    Moment(MomentArgs),
    /// List the characters whose central product exceeds a threshold.
    Scan(ScanArgs),
    /// Enumerate the characters of a modulus with their invariants.
    Characters(CharactersArgs),
}

/// Flags shared by every subcommand.
#[derive(Debug, Default, Args)]
pub struct IoArgs {
    /// Output format (default: json for verify, csv otherwise).
    #[arg(long, value_enum)]
    pub format: Option<FormatArg>,

    /// Write the output to this file instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,

    /// Worker threads for the parallel map (>= 1, default 1). Results are
    /// reduced in a fixed order, so the output does not depend on this.
    #[arg(long)]
    pub threads: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Csv,
    Json,
}

#[derive(Debug, Default, Args)]
pub struct VerifyArgs {
    /// Largest standard two-prime modulus to include (default 221).
    #[arg(long)]
    pub q_max: Option<u64>,

    /// Widen the summation-formula sweep to the full configuration grid.
    #[arg(long)]
    pub all: bool,

    /// Tolerance for the algebraically exact identities (default 1e-9).
    #[arg(long)]
    pub tolerance_exact: Option<f64>,

    /// Tolerance for the quadrature-mediated checks (default 1e-4).
    #[arg(long)]
    pub tolerance_quad: Option<f64>,

    #[command(flatten)]
    pub io: IoArgs,
}

#[derive(Debug, Default, Args)]
pub struct LvalueArgs {
    /// Modulus: an odd prime `p` or a product `q1xq2` of two distinct odd
    /// primes.
    #[arg(long)]
    pub modulus: Option<String>,

    /// Coefficient source: `eisenstein:<t>` or `file:<path>`.
    #[arg(long)]
    pub coeff: Option<String>,

    #[command(flatten)]
    pub io: IoArgs,
}

#[derive(Debug, Default, Args)]
pub struct MomentArgs {
    /// Comma-separated moduli, each an odd prime `p` or a product `q1xq2`.
    #[arg(long)]
    pub moduli: Option<String>,

    /// Single modulus (alternative to --moduli).
    #[arg(long)]
    pub modulus: Option<String>,

    /// Coefficient source: `eisenstein:<t>` or `file:<path>`.
    #[arg(long)]
    pub coeff: Option<String>,

    /// Trend target: the |ratio - 1| diagnostic at the largest modulus is
    /// compared against this (default 0.5, reported on stderr).
    #[arg(long)]
    pub threshold: Option<f64>,

    /// Fill runtime_ms with measured wall-clock times. Off by default so
    /// identical runs stay byte-identical.
    #[arg(long)]
    pub timings: bool,

    #[command(flatten)]
    pub io: IoArgs,
}

#[derive(Debug, Default, Args)]
pub struct ScanArgs {
    /// Modulus: an odd prime `p` or a product `q1xq2` of two distinct odd
    /// primes.
    #[arg(long)]
    pub modulus: Option<String>,

    /// Coefficient source: `eisenstein:<t>` or `file:<path>`.
    #[arg(long)]
    pub coeff: Option<String>,

    /// Keep characters with |product| above this bound (default 1e-4).
    #[arg(long)]
    pub threshold: Option<f64>,

    #[command(flatten)]
    pub io: IoArgs,
}

#[derive(Debug, Default, Args)]
pub struct CharactersArgs {
    /// Modulus: an odd prime `p` or a product `q1xq2` of two distinct odd
    /// primes.
    #[arg(long)]
    pub modulus: Option<String>,

    #[command(flatten)]
    pub io: IoArgs,
}
