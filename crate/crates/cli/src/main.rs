use std::process::ExitCode;

use clap::Parser;
use lmoment::{run_cli, Cli, Outcome, FLAG_SUMMARY};

fn main() -> ExitCode {
    // Flag-grammar errors are clap's: it prints the diagnostic with usage
    // and exits 2 on its own. Everything past parsing lands here.
    let cli = Cli::parse();
    match run_cli(cli) {
        Ok(Outcome::Success) => ExitCode::SUCCESS,
        Ok(Outcome::VerificationFailed) => ExitCode::from(1),
        Err(err) => {
            eprintln!("lmoment: error: {err:#}");
            eprintln!("{FLAG_SUMMARY}");
            ExitCode::from(2)
        }
    }
}
