//! Command-line front end for `comvar`.
//!
//! Every subcommand produces one report (JSON by default) with the tool
//! version, an echo of the configuration, a status and the wall time.
//!
//! Exit codes: 0 success, 1 a checked property failed, 2 bad configuration,
//! 3 enumeration budget exceeded.

mod args;
mod commands;
mod input;
mod report;

use std::fs;
use std::time::Instant;

pub use args::{Cli, Command, Format, GlobalArgs, VarietyKind};
pub use input::parse_matrices;
pub use report::{flatten, Report};

use comvar::bounds::BoundsError;
use comvar::pluecker::PlueckerError;
use comvar::pointcount::CountError;
use comvar::spectral::SpectralError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("budget exceeded: {0}")]
    Budget(CountError),
    #[error("check failed: {0}")]
    Failure(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Budget(_) => 3,
            CliError::Failure(_) | CliError::Internal(_) => 1,
        }
    }

    pub(crate) fn internal(e: impl std::fmt::Display) -> Self {
        CliError::Internal(e.to_string())
    }
}

impl From<BoundsError> for CliError {
    fn from(e: BoundsError) -> Self {
        CliError::Config(e.to_string())
    }
}

impl From<CountError> for CliError {
    fn from(e: CountError) -> Self {
        match e {
            CountError::BudgetExceeded { .. } => CliError::Budget(e),
            other => CliError::Failure(other.to_string()),
        }
    }
}

impl From<SpectralError> for CliError {
    fn from(e: SpectralError) -> Self {
        match e {
            SpectralError::Check(_) | SpectralError::Bezout(_) | SpectralError::Assignment { .. } => {
                CliError::Failure(e.to_string())
            }
            other => CliError::Config(other.to_string()),
        }
    }
}

impl From<PlueckerError> for CliError {
    fn from(e: PlueckerError) -> Self {
        match e {
            PlueckerError::Count(c) => c.into(),
            PlueckerError::FiberTestsDisagree => CliError::Failure(e.to_string()),
            other => CliError::Config(other.to_string()),
        }
    }
}

/// Runs one command and builds its report.
pub fn run(cli: &Cli) -> Result<Report, CliError> {
    let config = report::config_echo(&cli.global, &cli.command)?;
    let start = Instant::now();
    let work = || commands::dispatch(&cli.command, cli.global.budget, cli.global.seed);
    let outcome = match cli.global.threads {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t as usize)
            .build()
            .map_err(CliError::internal)?
            .install(work),
        None => work(),
    }?;
    Ok(Report {
        tool: "comvar",
        version: env!("CARGO_PKG_VERSION"),
        command: cli.command.name(),
        config,
        status: if outcome.verified {
            "ok"
        } else {
            "verification_failed"
        },
        result: outcome.result,
        wall_time: start.elapsed().as_secs_f64(),
    })
}

/// Runs, writes the report, and returns the process exit code.
pub fn execute(cli: &Cli) -> i32 {
    let result = run(cli).and_then(|report| {
        let text = report.render(cli.global.format)?;
        match &cli.global.out {
            Some(path) => fs::write(path, text)
                .map_err(|e| CliError::Config(format!("cannot write {}: {e}", path.display())))?,
            None => print!("{text}"),
        }
        Ok(report)
    });
    match result {
        Ok(report) if report.failed() => 1,
        Ok(_) => 0,
        Err(e) => {
            eprintln!("comvar: {e}");
            e.exit_code()
        }
    }
}
