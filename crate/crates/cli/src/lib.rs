//! Command-line companion to `lmoment-core`.
//!
//! Five subcommands cover the workflow end to end:
//!
//! - `verify` — run the identity verification suite (orthogonality, family
//!   averages, Gauss-sum factorization, dual summation formula, Poisson
//!   harness, exponential-sum gate) and report every check.
//! - `lvalue` — central values for each even primitive character of one
//!   modulus.
//! - `moment` — family averages, asymptotic main terms, and the `S₁ + S₂`
//!   split across a list of moduli, with a trend diagnostic on stderr.
//! - `scan` — characters whose central product stays above a threshold.
//! - `characters` — the character group of a modulus with its invariants.
//!
//! Output is CSV or JSON lines, written to stdout or a file. A config file
//! named by the `LMOMENT_CONFIG` environment variable supplies defaults
//! under the flags (flags win). Exit codes: `0` success, `1` at least one
//! verification report failed, `2` usage or input error.

pub mod args;
pub mod config;
pub mod exec;
pub mod report;

pub use args::Cli;
pub use config::RunConfig;
pub use exec::{execute, render, Outcome, RenderedRun};

/// One-line synopsis of the flag vocabulary, printed under usage errors.
pub const FLAG_SUMMARY: &str = "flags: --modulus <p|q1xq2> --moduli <list> \
--coeff <eisenstein:t|file:path> --format <csv|json> --output <path> \
--threads <n> --tolerance-exact <x> --tolerance-quad <x> --q-max <q> \
--all --threshold <x> --timings   (env: LMOMENT_CONFIG=<manifest>)";

/// Parse-merge-execute pipeline behind `main`.
pub fn run_cli(cli: Cli) -> anyhow::Result<Outcome> {
    let config = RunConfig::from_cli(cli)?;
    execute(&config)
}
