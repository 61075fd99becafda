//! The `qtrig` command line: evaluate functions, check identities, dump
//! formal series.
//!
//! Exit codes: 0 success, 1 a pass-expected check failed, 2 usage error,
//! 3 domain error, 4 only inconclusive checks (nothing failed).

use std::io::Write;

use clap::{Parser, Subcommand};
use qtrig_core::Error;

pub mod check;
pub mod dump;
pub mod eval;
pub mod grid;
pub mod report;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;
pub const EXIT_INCONCLUSIVE: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "qtrig", version, about = "q-trigonometric functions and their identities")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate one function with a certified truncation bound.
    Eval(eval::EvalArgs),
    /// Check identities numerically and/or formally.
    Check(check::CheckArgs),
    /// Print the coefficients of a formal series.
    DumpSeries(dump::DumpArgs),
}

/// A failure with the exit code it maps to.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        Self { code: EXIT_USAGE, message: message.into() }
    }

    pub fn domain(message: impl Into<String>) -> Self {
        Self { code: EXIT_DOMAIN, message: message.into() }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::QOutOfRange(_)
            | Error::InvalidBudget(_)
            | Error::UnknownIdentity(_)
            | Error::NotFormal(_)
            | Error::LatticeMismatch(..) => EXIT_USAGE,
            Error::Domain(_) | Error::OffLattice { .. } | Error::NotInvertible => EXIT_DOMAIN,
            Error::BudgetExhausted { .. } => EXIT_INCONCLUSIVE,
            Error::Internal(_) => EXIT_FAIL,
        };
        Self { code, message: e.to_string() }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        Self { code: EXIT_FAIL, message: format!("write failed: {e}") }
    }
}

/// Runs a parsed command, writing results to `out` and diagnostics to `err`.
pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let result = match &cli.command {
        Command::Eval(args) => eval::run(args, out),
        Command::Check(args) => check::run(args, out),
        Command::DumpSeries(args) => dump::run(args, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "qtrig: {}", e.message);
            e.code
        }
    }
}

/// Parses `args` (including the program name) and runs them.
pub fn run_args<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli, out, err),
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{rendered}");
            } else {
                let _ = write!(err, "{rendered}");
            }
            code
        }
    }
}
