use serde::Serialize;

use reidlab::mechanics::{radial_energy, radial_invariant, radial_solution, KeplerParams};
use reidlab::numerics::uniform_grid;

use crate::args::KeplerArgs;
use crate::config::RunConfig;
use crate::error::{CliError, CliResult};
use crate::report::{Report, Table, Verdict};

pub const COLUMNS: [&str; 7] = ["t", "R", "R_dot", "I", "kinetic", "nonlinear", "potential"];

/// The closed-form radial solution has `I = 0` up to round-off.
pub const INVARIANT_TOL: f64 = 1e-8;

#[derive(Serialize)]
struct Echo<'a> {
    t0: f64,
    t1: f64,
    n: usize,
    output: crate::config::OutputFormat,
    kepler: &'a KeplerParams,
}

pub fn run(args: &KeplerArgs) -> CliResult<Report> {
    let config = RunConfig::resolve(args.config.config.as_deref(), args.config.overrides())?;
    let kp = KeplerParams::new(args.mass, args.l, config.m).map_err(CliError::config)?;
    if args.n < 2 {
        return Err(CliError::Config(format!("need at least 2 samples, got {}", args.n)));
    }
    let report = tabulate(&kp, config.t0, config.t1, args.n, config.output)?;
    crate::emit(&report, "kepler", config.output, &args.dest)?;
    Ok(report)
}

pub fn tabulate(
    kp: &KeplerParams,
    t0: f64,
    t1: f64,
    n: usize,
    output: crate::config::OutputFormat,
) -> CliResult<Report> {
    let mut table = Table::new(&COLUMNS);
    let mut worst: f64 = 0.0;
    for t in uniform_grid(t0, t1, n) {
        let (r, r_dot) = radial_solution(t, kp)?;
        let invariant = radial_invariant(r, r_dot, kp)?;
        let e = radial_energy(r, r_dot, kp)?;
        worst = worst.max(invariant.abs());
        table.push(vec![t, r, r_dot, invariant, e.kinetic, e.nonlinear, e.potential]);
    }
    let mut report = Report::new("kepler", &Echo { t0, t1, n, output, kepler: kp })?;
    report.tables.insert("kepler".into(), table);
    report.verdicts.push(Verdict::check("max |I| along the radial solution", worst, INVARIANT_TOL));
    Ok(report)
}
