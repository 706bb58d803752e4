use serde::Serialize;

use reidlab::emden_fowler::{ef_residual, parametric_solution, Branch};
use reidlab::numerics::max_residual;

use crate::args::ParametricArgs;
use crate::config::RunConfig;
use crate::error::CliResult;
use crate::report::{Report, Table, Verdict};

pub const COLUMNS: [&str; 4] = ["Qtilde", "Y", "rtilde", "check_r_eq_QsqrtY"];

/// `r̃ = Q̃ √Y` holds by construction, so the check column is round-off.
pub const IDENTITY_TOL: f64 = 1e-10;
/// Second-difference residual of the Emden-Fowler equation.
pub const RESIDUAL_TOL: f64 = 1e-4;
/// The residual is measured on at least this many nodes, whatever the table size,
/// so the finite-difference error stays below the bound.
pub const RESIDUAL_NODES: usize = 2001;

#[derive(Debug, Clone, Serialize)]
pub struct ParametricRequest {
    pub invariant: f64,
    pub q_range: (f64, f64),
    pub branch: Branch,
    pub tau0: f64,
    pub n: usize,
}

#[derive(Serialize)]
struct Echo<'a> {
    run: &'a RunConfig,
    parametric: &'a ParametricRequest,
}

pub fn run(args: &ParametricArgs) -> CliResult<Report> {
    let config = RunConfig::resolve(args.config.config.as_deref(), args.config.overrides())?;
    let request = ParametricRequest {
        invariant: args.invariant,
        q_range: (args.q_lo, args.q_hi),
        branch: args.branch,
        tau0: args.tau0,
        n: args.n,
    };
    let report = tabulate(&config, &request)?;
    crate::emit(&report, "parametric", config.output, &args.dest)?;
    Ok(report)
}

pub fn tabulate(config: &RunConfig, req: &ParametricRequest) -> CliResult<Report> {
    let params = config.params()?;
    let sol = parametric_solution(&params, config.wronskian, req.invariant, req.q_range, req.branch, req.tau0, req.n)?;
    let errors = sol.sqrt_identity_errors();
    let mut table = Table::new(&COLUMNS);
    for (k, &err) in errors.iter().enumerate() {
        table.push(vec![sol.qtilde_grid[k], sol.y[k], sol.rtilde[k], err]);
    }

    let mut report = Report::new("parametric", &Echo { run: config, parametric: req })?;
    report.tables.insert("parametric".into(), table);
    report.verdicts.push(Verdict::check(
        "max |rtilde - Qtilde sqrt(Y)|",
        errors.iter().copied().fold(0.0, f64::max),
        IDENTITY_TOL,
    ));
    let fine = if req.n >= RESIDUAL_NODES {
        sol
    } else {
        parametric_solution(
            &params,
            config.wronskian,
            req.invariant,
            req.q_range,
            req.branch,
            req.tau0,
            RESIDUAL_NODES,
        )?
    };
    let residual = max_residual(&ef_residual(&fine.ef_path()?, &params, config.wronskian)?);
    report.verdicts.push(
        Verdict::check("Emden-Fowler residual", residual, RESIDUAL_TOL).with_detail(format!("{} nodes", fine.len())),
    );
    Ok(report)
}
