//! Command-line front end for `reidlab`.
//!
//! Exit codes: 0 success, 1 a verdict failed, 2 invalid configuration,
//! 3 numerical singularity.

pub mod args;
pub mod commands;
pub mod config;
pub mod error;
pub mod report;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use args::{Cli, Command, Destination};
use config::OutputFormat;
use error::{exit, CliResult};
use report::{Report, Status};

/// Runs one command and returns its exit code. Errors are printed to stderr.
pub fn run(cli: Cli) -> u8 {
    let outcome = match cli.command {
        Command::Simulate(a) => commands::simulate::run(&a),
        Command::Verify(a) => commands::verify::run(&a),
        Command::Parametric(a) => commands::parametric::run(&a),
        Command::Kepler(a) => commands::kepler::run(&a),
    };
    match outcome {
        Ok(report) if report.passed() => exit::SUCCESS,
        Ok(_) => exit::VERIFICATION_FAILED,
        Err(e) => {
            log::debug!("{e:?}");
            eprintln!("reidlab: {e}");
            e.exit_code()
        }
    }
}

fn open(path: Option<&Path>) -> CliResult<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(io::stdout().lock()),
    })
}

/// Writes `report` in the configured format: the named table as CSV (with the
/// table-free report to `dest.report` if requested), or the whole report as JSON.
pub(crate) fn emit(report: &Report, table: &str, format: OutputFormat, dest: &Destination) -> CliResult<()> {
    match format {
        OutputFormat::Csv => {
            report.tables[table].write_csv(open(dest.out.as_deref())?)?;
            if let Some(path) = &dest.report {
                report.summary().write_json(open(Some(path))?)?;
            }
        }
        OutputFormat::Json => report.write_json(open(dest.out.as_deref())?)?,
    }
    summarize(report);
    Ok(())
}

/// One line per verdict on stderr.
pub(crate) fn summarize(report: &Report) {
    for v in &report.verdicts {
        let mark = match v.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::ExpectedSkip => "SKIP",
        };
        let detail = v.detail.as_deref().map(|d| format!(" ({d})")).unwrap_or_default();
        eprintln!("{mark} {}: {:.3e} <= {:.1e}{detail}", v.name, v.measured, v.threshold);
    }
}
