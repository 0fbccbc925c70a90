mod args;
mod commands;
mod output;

use std::fmt;
use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};

/// Bad flag combinations caught after parsing.
#[derive(Debug)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

const USAGE: u8 = 2;
const NOT_CONVERGED: u8 = 3;
const FIT_FAILED: u8 = 4;

fn exit_code(err: &anyhow::Error) -> u8 {
    for cause in err.chain() {
        if cause.is::<UsageError>() {
            return USAGE;
        }
        if let Some(e) = cause.downcast_ref::<zetalab::Error>() {
            return match e {
                zetalab::Error::Solver(_) => NOT_CONVERGED,
                zetalab::Error::Fit(_) => FIT_FAILED,
                zetalab::Error::Io(_) => 1,
                _ => USAGE,
            };
        }
    }
    1
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let run = match &cli.command {
        Command::Atom(a) => commands::atom(a),
        Command::Tf(a) => commands::tf(a),
        Command::Scale(a) => commands::scale(a),
        Command::Eval(a) => commands::eval(a),
        Command::Fit(a) => commands::fit(a),
        Command::Regions(a) => commands::regions(a),
        Command::Figures(a) => commands::figures(a),
    };
    match run {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
