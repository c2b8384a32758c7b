//! Command-line front end for `lattice-speedup-core`: optimizer tables,
//! bound constants, coefficient checks, small-instance solvers and file IO.

pub mod args;
pub mod commands;
pub mod output;
pub mod solver;

use std::fmt;
use std::process::ExitCode;

use clap::Parser;
use lattice_speedup_core::Error as CoreError;

use args::{Cli, Command};

/// Malformed input that clap cannot catch, such as a bad instance file.
#[derive(Debug)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

/// `Ok(false)` means a `--verify` check failed.
pub fn run(cli: &Cli) -> anyhow::Result<bool> {
    match &cli.command {
        Command::Tables(a) => commands::tables(a),
        Command::Figure(a) => commands::figure(a),
        Command::Appendix(a) => commands::appendix(a),
        Command::Bounds(a) => commands::bounds(a),
        Command::Coeff(a) => commands::coeff(a),
        Command::Smc(a) => commands::smc(a),
        Command::Simulate(a) => commands::simulate(a),
        Command::Path(a) => commands::path(a),
    }
}

fn is_usage(e: &anyhow::Error) -> bool {
    if e.downcast_ref::<UsageError>().is_some() {
        return true;
    }
    matches!(
        e.chain().find_map(|c| c.downcast_ref::<CoreError>()),
        Some(CoreError::InvalidArgument(_) | CoreError::InvalidProfile(_) | CoreError::InvalidSchedule(_))
    )
}

/// Exit codes: 0 success, 1 failed verification or computation, 2 bad usage.
pub fn main_with_args<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(if is_usage(&e) { 2 } else { 1 })
        }
    }
}
