use std::collections::HashMap;

use reidlab::invariant::{drift_report, Formulation};
use reidlab::linear::solve_basis_on;
use reidlab::reid::{simulate_reid, OutputGrid, ReidTrajectory};

use crate::args::SimulateArgs;
use crate::config::RunConfig;
use crate::error::{CliError, CliResult};
use crate::report::{Report, Table, Verdict};

pub const COLUMNS: [&str; 7] = ["t", "q", "q_t", "qtilde", "qtilde_t", "Y", "I"];

pub fn run(args: &SimulateArgs) -> CliResult<Report> {
    let config = RunConfig::resolve(args.config.config.as_deref(), args.config.overrides())?;
    let formulation = match &args.formulation {
        Some(name) => name.parse().map_err(CliError::config)?,
        None if config.m == 2 => Formulation::M2Physical,
        None => Formulation::HigherPhysical,
    };
    let report = simulate(&config, formulation, args.drift_tol)?;
    crate::emit(&report, "trajectory", config.output, &args.dest)?;
    Ok(report)
}

pub fn simulate(config: &RunConfig, formulation: Formulation, drift_tol: f64) -> CliResult<Report> {
    let params = config.params()?;
    let coeffs = config.coefficients()?;
    let basis =
        solve_basis_on(&config.frequency, &[config.t0, config.t1], &config.tol)?.with_wronskian(config.wronskian)?;
    log::info!("integrating m = {} on [{}, {}]", config.m, config.t0, config.t1);
    let traj = simulate_reid(
        &config.frequency,
        &params,
        &basis,
        &coeffs,
        (config.ics.qtilde, config.ics.qtilde_t),
        OutputGrid::Adaptive { t0: config.t0, t1: config.t1 },
        &config.tol,
    )?;
    log::info!("{} accepted steps", traj.len() - 1);
    let drift = drift_report(&traj, formulation, None)?;

    let invariant: HashMap<u64, f64> = drift.samples.iter().map(|&(t, v)| (t.to_bits(), v)).collect();
    let phase = phase_until_zero(&traj);
    let mut table = Table::new(&COLUMNS);
    for (i, &t) in traj.grid().iter().enumerate() {
        let [q, q_t, qt, qt_t] = traj.state(i);
        let i_value = invariant.get(&t.to_bits()).copied().unwrap_or(f64::NAN);
        table.push(vec![t, q, q_t, qt, qt_t, phase[i], i_value]);
    }

    let mut report = Report::new("simulate", config)?;
    report.tables.insert("trajectory".into(), table);
    report.verdicts.push(
        Verdict::check(format!("relative drift of {}", formulation.name()), drift.rel_drift, drift_tol).with_detail(
            format!("reference I = {:.16e}, max |I - ref| = {:.3e}", drift.reference, drift.max_abs_drift),
        ),
    );
    Ok(report)
}

/// `Y = q2 / (a W q)` up to the first zero of `q`; NaN from there on, and
/// everywhere when `a = 0`.
fn phase_until_zero(traj: &ReidTrajectory) -> Vec<f64> {
    let aw = traj.coeffs.a * traj.basis.wronskian;
    let mut out = Vec::with_capacity(traj.len());
    let mut defined = aw != 0.0;
    let sign0 = traj.base.value(0, 0).signum();
    for i in 0..traj.len() {
        let q = traj.base.value(i, 0);
        defined &= q != 0.0 && q.signum() == sign0;
        out.push(if defined { traj.basis.at(i)[2] / (aw * q) } else { f64::NAN });
    }
    out
}
