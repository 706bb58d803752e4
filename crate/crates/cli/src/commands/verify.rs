//! Seeded property suites. Each suite draws from its own ChaCha stream derived from
//! the seed, so suites can run concurrently and the report is identical for a
//! given seed regardless of scheduling.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use reidlab::emden_fowler::{
    abel_chain, abel_relation_residual, ef_residual, ef_to_hyperbolic, hyperbolic_residual, hyperbolic_solution,
    hyperbolic_to_ef, parametric_solution, reid_recovery_physical, to_ef, Branch, EFState, EfSolution, ReidFormula,
};
use reidlab::invariant::{
    drift_report, el_invariant_constant_m2, el_invariant_ef, el_invariant_higher_physical, el_invariant_hyperbolic,
    polyanin_invariant, positivity_condition, Formulation,
};
use reidlab::linear::{
    solve_basis, solve_basis_on, wronskian_drift, FrequencyModel, LinearBasis, SuperpositionCoefficients,
};
use reidlab::mechanics::{
    euler_lagrange_residual, hamiltonian_tau, hamiltonian_y, invariant_canonical, legendre_gap_tau, legendre_gap_y,
    poisson_conservation_check, radial_invariant, radial_solution, KeplerParams,
};
use reidlab::numerics::{fd_residual, max_residual, uniform_grid, SampledPath, ToleranceConfig};
use reidlab::reid::{
    pinney_general, polyanin_particular, reid_superposition, simulate_reid, superposition_at, OutputGrid, ReidParams,
    ReidTrajectory,
};
use reidlab::{Error, Result};

use crate::args::{Suite, VerifyArgs};
use crate::error::CliResult;
use crate::report::{Report, Status, Verdict};

/// Finite-difference step for second-derivative residuals.
const FD_H: f64 = 1e-3;

const SUITES: [Suite; 5] = [Suite::Superposition, Suite::Invariants, Suite::EfChain, Suite::Abel, Suite::Mechanics];

#[derive(Serialize)]
struct Echo {
    suite: &'static str,
    seed: u64,
}

pub fn run(args: &VerifyArgs) -> CliResult<Report> {
    let report = verify(args.suite, args.seed)?;
    report.write_json(crate::open(args.out.as_deref())?)?;
    crate::summarize(&report);
    Ok(report)
}

pub fn suite_name(suite: Suite) -> &'static str {
    match suite {
        Suite::Superposition => "superposition",
        Suite::Invariants => "invariants",
        Suite::EfChain => "ef_chain",
        Suite::Abel => "abel",
        Suite::Mechanics => "mechanics",
        Suite::All => "all",
    }
}

/// Runs `suite` (every suite for `All`, each on its own thread).
pub fn verify(suite: Suite, seed: u64) -> CliResult<Report> {
    let selected: Vec<Suite> = if suite == Suite::All { SUITES.to_vec() } else { vec![suite] };
    let results: Vec<Vec<Verdict>> = std::thread::scope(|scope| {
        let handles: Vec<_> = selected.iter().map(|&s| scope.spawn(move || run_suite(s, seed))).collect();
        handles.into_iter().map(|h| h.join().expect("suite thread panicked")).collect()
    });
    let mut report = Report::new("verify", &Echo { suite: suite_name(suite), seed })?;
    report.verdicts = results.into_iter().flatten().collect();
    Ok(report)
}

fn run_suite(suite: Suite, seed: u64) -> Vec<Verdict> {
    let index = SUITES.iter().position(|&s| s == suite).expect("concrete suite") as u64;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index + 1);
    let name = suite_name(suite);
    log::info!("suite {name} started");
    let checks: Vec<(&str, f64, Check)> = match suite {
        Suite::Superposition => vec![
            ("reid_superposition FD residual", 1e-4, superposition_residual),
            ("m = 2 superposition equals the Pinney formula", 1e-14, superposition_is_pinney),
            ("simulate_reid tracks the closed form over length 5", 1e-8, simulation_tracks_closed_form),
            ("Wronskian drift of the linear basis", 1e-8, basis_wronskian),
        ],
        Suite::Invariants => vec![
            ("m = 2 sampled invariant matches the closed constant", 1e-6, m2_constant_vs_sampled),
            ("zero-invariant boundary", 1e-12, zero_invariant_boundary),
            ("positivity condition matches the sign of the constant", 0.0, positivity_agreement),
            ("m = 3 special value 3/8", 1e-15, polyanin_special_value),
            ("physical, EF and hyperbolic invariants agree", 1e-10, transform_chain),
            ("order-m invariant drift along simulations", 1e-6, higher_order_drift),
        ],
        Suite::EfChain => vec![
            ("EF to hyperbolic chart round trip", 1e-12, chart_round_trip),
            ("hyperbolic closed form residual", 1e-4, hyperbolic_closed_form),
            ("Pinney general residual", 1e-4, pinney_residual),
            ("Reid formula recovered from the EF solution", 1e-10, reid_recovery),
            ("parametric solution satisfies rtilde = Qtilde sqrt(Y)", 1e-10, parametric_identity),
            ("parametric solution EF residual", 1e-4, parametric_residual),
            ("parametric branches are reciprocal", 1e-12, parametric_reciprocity),
        ],
        Suite::Abel => vec![
            ("Abel fit recovers I on the Pinney family", 1e-6, abel_pinney),
            ("Abel fit recovers I = 0 on the Reid formula", 1e-6, abel_reid_formula),
            ("Abel relation residual on the Pinney family", 1e-8, abel_relation),
            ("Polyanin ray is degenerate for the Abel chain", 1e-12, abel_polyanin),
        ],
        Suite::Mechanics => vec![
            ("Legendre identity, relative to max(1, |H|)", 1e-12, legendre),
            ("canonical invariant equals 2 I_ef", 1e-10, canonical_invariant),
            ("Euler-Lagrange residual along the Pinney solution", 1e-5, euler_lagrange),
            ("Poisson bracket dI/dt", 1e-5, poisson),
            ("radial solution has I = 0", 1e-8, kepler_invariant),
        ],
        Suite::All => unreachable!("expanded by the caller"),
    };
    let verdicts = checks
        .into_iter()
        .map(|(label, threshold, check)| {
            let full = format!("{name}: {label}");
            match check(&mut rng) {
                Ok(m) => m.into_verdict(full, threshold),
                Err(e) => Verdict::error(full, threshold, e),
            }
        })
        .collect();
    log::info!("suite {name} finished");
    verdicts
}

type Check = fn(&mut ChaCha8Rng) -> Result<Measurement>;

/// Outcome of one check before it is named and bounded by the suite table.
struct Measurement {
    value: f64,
    detail: Option<String>,
    /// The check hit its documented singular case.
    expected_skip: bool,
}

impl Measurement {
    fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }

    fn into_verdict(self, name: String, threshold: f64) -> Verdict {
        let mut v = Verdict::check(name, self.value, threshold);
        if self.expected_skip {
            v.status = Status::ExpectedSkip;
        }
        v.detail = self.detail;
        v
    }
}

fn measured(value: f64) -> Measurement {
    Measurement { value, detail: None, expected_skip: false }
}

fn params(m: u32, alpha: f64) -> Result<ReidParams> {
    ReidParams::new(m, alpha)
}

fn tol() -> ToleranceConfig {
    ToleranceConfig::default()
}

fn sign(rng: &mut ChaCha8Rng) -> f64 {
    if rng.gen_bool(0.5) {
        1.0
    } else {
        -1.0
    }
}

fn fd_grid(a: f64, b: f64) -> Vec<f64> {
    uniform_grid(a, b, ((b - a) / FD_H).round() as usize + 1)
}

/// `(cos ωt, −ω sin ωt)` and `(W sin ωt / ω, W cos ωt)`, sampled exactly.
fn trig_basis(omega: f64, w: f64, grid: &[f64]) -> Result<LinearBasis> {
    let q1 = SampledPath::from_fn(grid.to_vec(), 2, |t| Ok(vec![(omega * t).cos(), -omega * (omega * t).sin()]))?;
    let q2 =
        SampledPath::from_fn(grid.to_vec(), 2, |t| Ok(vec![w * (omega * t).sin() / omega, w * (omega * t).cos()]))?;
    LinearBasis::from_paths(q1, q2)
}

fn free_basis(w: f64, grid: &[f64]) -> Result<LinearBasis> {
    let q1 = SampledPath::from_fn(grid.to_vec(), 2, |_| Ok(vec![1.0, 0.0]))?;
    let q2 = SampledPath::from_fn(grid.to_vec(), 2, |t| Ok(vec![w * t, w]))?;
    LinearBasis::from_paths(q1, q2)
}

fn states(sol: &impl EfSolution, grid: &[f64]) -> Result<Vec<EFState>> {
    grid.iter().map(|&y| sol.state(y)).collect()
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(1.0)
}

// superposition

fn superposition_residual(rng: &mut ChaCha8Rng) -> Result<Measurement> {
    let mut worst: f64 = 0.0;
    for _ in 0..4 {
        let (m, alpha, omega) = (rng.gen_range(2..=5u32), rng.gen_range(0.2..1.5), rng.gen_range(0.5..1.2));
        // q1, q2 > 0 on (0, 1] since ωt < π/2
        let basis = trig_basis(omega, 1.0, &fd_grid(0.0, 1.0))?;
        let path = reid_superposition(&basis, &params(m, alpha)?)?;
        let q1q2: Vec<f64> = (0..basis.len()).map(|i| basis.at(i)[0] * basis.at(i)[2]).collect();
        let mut i = 0;
        let res = fd_residual(&path, |_, q, _, d2| {
            i += 1;
            d2 + omega * omega * q - alpha * q1q2[i].powi(m as i32 - 2) * q.powi(1 - 2 * m as i32)
        })?;
        worst = worst.max(max_residual(&res));
    }
    Ok(measured(worst))
}

fn superposition_is_pinney(rng: &mut ChaCha8Rng) -> Result<Measurement> {
    let mut worst: f64 = 0.0;
    for _ in 0..200 {
        let alpha = rng.gen_range(0.05..3.0);
        let w = sign(rng) * rng.gen_range(0.3..2.0);
        let s = [rng.gen_range(-2.0..2.0), rng.gen_range(-1.0..1.0), rng.gen_range(0.1..2.0), rng.gen_range(-1.0..1.0)];
        let (qt, _) = superposition_at(s, w, &params(2, alpha)?)?;
        worst = worst.max(rel(qt, (s[0] * s[0] + alpha * s[2] * s[2] / (w * w)).sqrt()));
    }
    Ok(measured(worst))
}

fn simulation_tracks_closed_form(rng: &mut ChaCha8Rng) -> Result<Measurement> {
    let mut worst: f64 = 0.0;
    for _ in 0..3 {
        let (m, alpha) = (rng.gen_range(2..=5u32), rng.gen_range(0.2..1.5));
        // ωT = 1.25 keeps cos ωt > 0 over the run
        let omega = 0.25;
        let freq = FrequencyModel::constant(omega * omega);
        let grid = uniform_grid(0.0, 5.0, 101);
        let basis = solve_basis_on(&freq, &grid, &tol())?;
        let coeffs = SuperpositionCoefficients::new(1.0, 0.0)?;
        let p = params(m, alpha)?;
        // the closed form has q̃(0) = 1, q̃_t(0) = 0
        let traj = simulate_reid(&freq, &p, &basis, &coeffs, (1.0, 0.0), OutputGrid::Points(&grid), &tol())?;
        let exact = reid_superposition(&trig_basis(omega, 1.0, &grid)?, &p)?;
        for i in 0..grid.len() {
            worst = worst.max((traj.aux.value(i, 0) - exact.value(i, 0)).abs());
        }
    }
    Ok(measured(worst))
}

fn basis_wronskian(rng: &mut ChaCha8Rng) -> Result<Measurement> {
    let c = rng.gen_range(0.1..0.5);
    let freq = FrequencyModel::Polynomial { coeffs: vec![1.0, 0.0, c] };
    Ok(measured(wronskian_drift(&solve_basis(&freq, 0.0, 5.0, &tol())?)).with_detail(format!("ω² = 1 + {c:.3} t²")))
}

// invariants

fn m2_constant_vs_sampled(rng: &mut ChaCha8Rng) -> Result<Measurement> {
    let mut worst: f64 = 0.0;
    for _ in 0..5 {
        let omega = rng.gen_range(0.5..1.5);
        let w = sign(rng) * rng.gen_range(0.5..2.0);
        let a = sign(rng) * rng.gen_range(0.3..2.0);
        let b = rng.gen_range(-2.0..2.0);
        let floor = -(b * w / a).powi(2);
        let alpha = loop {
            let x = rng.gen_range(floor.max(-3.0)..3.0);
            if x != 0.0 && x > floor {
                break x;
            }
        };
        // q̃² = cos² + α sin²/ω² stays positive up to tan ωt = ω/√(−α)
        let t1 = if alpha > 0.0 { 10.0 } else { 0.9 * (omega / (-alpha).sqrt()).atan() / omega };
        let freq = FrequencyModel::constant(omega * omega);
        let basis = solve_basis_on(&freq, &[0.0, t1], &tol())?.with_wronskian(w)?;
        let coeffs = SuperpositionCoefficients::new(a, b)?;
        let traj = simulate_reid(
            &freq,
            &params(2, alpha)?,
            &basis,
            &coeffs,
            (1.0, 0.0),
            OutputGrid::Adaptive { t0: 0.0, t1 },
            &tol(),
        )?;
        let reference = el_invariant_constant_m2(&coeffs, alpha, w);
        worst = worst.max(drift_report(&traj, Formulation::M2Physical, Some(reference))?.max_abs_drift);
    }
    Ok(measured(worst))
}

fn zero_invariant_boundary(rng: &mut ChaCha8Rng) -> Result<Measurement> {
    let mut worst: f64 = 0.0;
    for _ in 0..50 {
        let alpha: f64 = -rng.gen_range(0.1..3.0);
        let w = sign(rng) * rng.gen_range(0.3..2.0);
        let a = sign(rng) * rng.gen_range(0.3..2.0);
        let b = sign(rng) * a * (-alpha).sqrt() / w;
        worst = worst.max(el_invariant_constant_m2(&SuperpositionCoefficients::new(a, b)?, alpha, w).abs());
    }
    Ok(measured(worst))
}

fn positivity_agreement(rng: &mut ChaCha8Rng) -> Result<Measurement> {
    let mut mismatches = 0;
    for _ in 0..500 {
        let coeffs = SuperpositionCoefficients::new(sign(rng) * rng.gen_range(0.01..3.0), rng.gen_range(-3.0..3.0))?;
        let (alpha, w) = (rng.gen_range(-5.0..5.0), sign(rng) * rng.gen_range(0.3..2.0));
        if positivity_condition(&coeffs, alpha, w)? != (el_invariant_constant_m2(&coeffs, alpha, w) > 0.0) {
            mismatches += 1;
        }
    }
    Ok(measured(mismatches as f64))
}

fn polyanin_special_value(_: &mut ChaCha8Rng) -> Result<Measurement> {
    let value = polyanin_invariant(&params(3, 2.0)?, 1.0)?;
    Ok(measured((value - 0.375).abs()).with_detail(format!("I(m = 3, αW = 2) = {value}")))
}

fn transform_chain(rng: &mut ChaCha8Rng) -> Result<Measurement> {
    let mut worst: f64 = 0.0;
    for _ in 0..300 {
        let p = params(rng.gen_range(3..=6), sign(rng) * rng.gen_range(0.1..2.0))?;
        let w = sign(rng) * rng.gen_range(0.5..1.5);
        let s = [rng.gen_range(0.3..2.0), rng.gen_range(-1.0..1.0), rng.gen_range(0.3..2.0), rng.gen_range(-1.0..1.0)];
        let y = rng.gen_range(0.1..3.0);
        let physical = el_invariant_higher_physical(s, y, &p, w)?;
        let ef = to_ef(s, y)?;
        let ef_value = el_invariant_ef(ef.rtilde, ef.rtilde_y, y, &p, w)?;
        let h = ef_to_hyperbolic(&ef)?;
        let hyperbolic = el_invariant_hyperbolic(h.qtilde, h.qtilde_eta, &p, w)?;
        let scale = physical.abs().max(1.0);
        worst = worst.max((physical - ef_value).abs().max((ef_value - hyperbolic).abs()) / scale);
    }
    Ok(measured(worst))
}

fn higher_order_drift(rng: &mut ChaCha8Rng) -> Result<Measurement> {
    let mut worst: f64 = 0.0;
    for m in 3..=4 {
        let freq = FrequencyModel::constant(rng.gen_range(0.0..0.02));
        let basis = solve_basis_on(&freq, &[0.0, 10.0], &tol())?;
        // the order-m invariant is conserved for q = a q1
        let coeffs = SuperpositionCoefficients::new(rng.gen_range(0.5..1.5), 0.0)?;
        let ics = (rng.gen_range(0.8..1.4), rng.gen_range(-0.2..0.2));
        let traj = simulate_reid(
            &freq,
            &params(m, rng.gen_range(0.5..1.5))?,
            &basis,
            &coeffs,
            ics,
            OutputGrid::Adaptive { t0: 0.0, t1: 10.0 },
            &tol(),
        )?;
        for f in [Formulation::HigherPhysical, Formulation::HigherEf, Formulation::HigherHyperbolic] {
            worst = worst.max(drift_report(&traj, f, None)?.rel_drift);
        }
    }
    Ok(measured(worst))
}

// ef_chain

fn chart_round_trip(rng: &mut ChaCha8Rng) -> Result<Measurement> {
    let mut worst: f64 = 0.0;
    for _ in 0..300 {
        let s = EFState {
            y: rng.gen_range(0.05..8.0),
            rtilde: rng.gen_range(0.1..4.0),
            rtilde_y: rng.gen_range(-3.0..3.0),
        };
        let back = hyperbolic_to_ef(&ef_to_hyperbolic(&s)?);
        worst = worst.max(rel(back.y, s.y)).max(rel(back.rtilde, s.rtilde)).max(rel(back.rtilde_y, s.rtilde_y));
    }
    Ok(measured(worst))
}

fn hyperbolic_closed_form(rng: &mut ChaCha8Rng) -> Result<Measurement> {
    let mut worst: f64 = 0.0;
    for m in 2..=5 {
        let (p, w) = (params(m, rng.gen_range(0.2..2.0))?, 1.0);
        let path =
            SampledPath::from_fn(fd_grid(-2.0, 2.0), 1, |eta| Ok(vec![hyperbolic_solution(eta, &p, w)?.qtilde]))?;
        worst = worst.max(max_residual(&hyperbolic_residual(&path, &p, w)?));
    }
    Ok(measured(worst))
}

fn pinney_residual(rng: &mut ChaCha8Rng) -> Result<Measurement> {
    let (p, a1, a3) = (params(2, 1.0)?, rng.gen_range(0.5..3.0), rng.gen_range(-0.5..0.5));
    let sol = pinney_general((a1, (1.0 + a3 * a3) / a1, a3), &p, 1.0)?;
    Ok(measured(max_residual(&ef_residual(&sol.sample(&fd_grid(0.0, 4.0))?, &p, 1.0)?)))
}

fn reid_recovery(rng: &mut ChaCha8Rng) -> Result<Measurement> {
    let mut worst: f64 = 0.0;
    for m in 2..=5 {
        let (alpha, omega) = (rng.gen_range(0.2..1.5), rng.gen_range(0.5..1.0));
        let grid = uniform_grid(0.0, 1.5, 301);
        let recovered = reid_recovery_physical(&params(m, alpha)?, &trig_basis(omega, 1.0, &grid)?)?;
        for (t, s) in recovered.iter() {
            let (q1, q2) = ((omega * t).cos(), (omega * t).sin() / omega);
            let exact = (q1.powi(m as i32) + alpha * q2.powi(m as i32) / (m - 1) as f64).powf(1.0 / m as f64);
            worst = worst.max((s[0] - exact).abs());
        }
    }
    Ok(measured(worst))
}

/// `I = (3/8)(αW/2)^(1/3)` at `m = 3`, `α = W = 1`.
fn m3_parametric(branch: Branch, tau0: f64) -> Result<(ReidParams, reidlab::emden_fowler::ParametricSolution)> {
    let p = params(3, 1.0)?;
    let invariant = 3.0 / 8.0 * 0.5f64.cbrt();
    Ok((p, parametric_solution(&p, 1.0, invariant, (1.0, 3.0), branch, tau0, 2001)?))
}

fn parametric_identity(_: &mut ChaCha8Rng) -> Result<Measurement> {
    let mut worst: f64 = 0.0;
    for branch in [Branch::Plus, Branch::Minus] {
        worst = worst.max(m3_parametric(branch, 1.0)?.1.sqrt_identity_errors().into_iter().fold(0.0, f64::max));
    }
    Ok(measured(worst))
}

fn parametric_residual(_: &mut ChaCha8Rng) -> Result<Measurement> {
    let mut worst: f64 = 0.0;
    for branch in [Branch::Plus, Branch::Minus] {
        let (p, sol) = m3_parametric(branch, 1.0)?;
        worst = worst.max(max_residual(&ef_residual(&sol.ef_path()?, &p, 1.0)?));
    }
    Ok(measured(worst))
}

fn parametric_reciprocity(rng: &mut ChaCha8Rng) -> Result<Measurement> {
    let tau0 = rng.gen_range(0.2..5.0);
    let (_, plus) = m3_parametric(Branch::Plus, tau0)?;
    let (_, minus) = m3_parametric(Branch::Minus, tau0)?;
    let worst = (0..plus.len()).map(|k| rel(plus.y[k] * minus.y[k], 1.0 / (tau0 * tau0))).fold(0.0, f64::max);
    Ok(measured(worst))
}

// abel

fn pinney_states(rng: &mut ChaCha8Rng) -> Result<(ReidParams, Vec<EFState>)> {
    let alpha = rng.gen_range(0.2..2.0);
    let (a1, a3) = (rng.gen_range(0.5..3.0), rng.gen_range(-0.5..0.5));
    let p = params(2, alpha)?;
    let sol = pinney_general((a1, (alpha + a3 * a3) / a1, a3), &p, 1.0)?;
    Ok((p, states(&sol, &uniform_grid(0.1, 4.0, 300))?))
}

fn abel_pinney(rng: &mut ChaCha8Rng) -> Result<Measurement> {
    let mut worst: f64 = 0.0;
    for _ in 0..5 {
        let (p, path) = pinney_states(rng)?;
        let fit = abel_chain(&path, &p, 1.0)?;
        for s in &path {
            worst = worst.max((fit.invariant - el_invariant_ef(s.rtilde, s.rtilde_y, s.y, &p, 1.0)?).abs());
        }
    }
    Ok(measured(worst))
}

fn abel_reid_formula(rng: &mut ChaCha8Rng) -> Result<Measurement> {
    let mut worst: f64 = 0.0;
    for m in 3..=5 {
        let p = params(m, rng.gen_range(0.2..1.5))?;
        let path = states(&ReidFormula { params: p, w: 1.0 }, &uniform_grid(0.1, 4.0, 300))?;
        worst = worst.max(abel_chain(&path, &p, 1.0)?.invariant.abs());
    }
    Ok(measured(worst))
}

fn abel_relation(rng: &mut ChaCha8Rng) -> Result<Measurement> {
    let (p, path) = pinney_states(rng)?;
    let s = path[0];
    let invariant = el_invariant_ef(s.rtilde, s.rtilde_y, s.y, &p, 1.0)?;
    Ok(measured(abel_relation_residual(&path, &p, 1.0, invariant)?.into_iter().fold(0.0, f64::max)))
}

/// The ray `r̃ ∝ √Y` has `u ≡ ½`; the chain must refuse it with `DegenerateU`.
fn abel_polyanin(rng: &mut ChaCha8Rng) -> Result<Measurement> {
    let p = params(rng.gen_range(3..=5), -rng.gen_range(0.2..1.5))?;
    let path = states(&polyanin_particular(&p, 1.0)?, &uniform_grid(0.1, 4.0, 300))?;
    let spread = path.iter().map(|s| (s.y * s.rtilde_y / s.rtilde - 0.5).abs()).fold(0.0, f64::max);
    match abel_chain(&path, &p, 1.0) {
        Err(Error::DegenerateU) => Ok(Measurement {
            expected_skip: true,
            ..measured(spread).with_detail("DegenerateU: u = 1/2 along the whole path")
        }),
        Err(e) => Err(e),
        // accepting the ray is a failure whatever the spread
        Ok(_) => Ok(measured(f64::INFINITY)
            .with_detail(format!("chain accepted a degenerate path, max |u - 1/2| = {spread:e}"))),
    }
}

// mechanics

fn legendre(rng: &mut ChaCha8Rng) -> Result<Measurement> {
    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let p = params(rng.gen_range(2..=6), sign(rng) * rng.gen_range(0.05..2.0))?;
        let w = rng.gen_range(0.5..1.5);
        let (x, r, v) = (rng.gen_range(0.2..3.0), rng.gen_range(0.3..2.0), rng.gen_range(-1.0..1.0));
        let scale_tau = hamiltonian_tau(x, x * x * v, r, &p, w)?.abs().max(1.0);
        let scale_y = hamiltonian_y(x, -v, r, &p, w)?.abs().max(1.0);
        worst = worst.max(legendre_gap_tau(x, r, v, &p, w)? / scale_tau).max(legendre_gap_y(x, r, v, &p, w)? / scale_y);
    }
    Ok(measured(worst))
}

fn canonical_invariant(rng: &mut ChaCha8Rng) -> Result<Measurement> {
    let mut worst: f64 = 0.0;
    for _ in 0..300 {
        let p = params(rng.gen_range(2..=6), sign(rng) * rng.gen_range(0.05..2.0))?;
        let w = sign(rng) * rng.gen_range(0.3..2.0);
        let (y, r, r_y) = (rng.gen_range(0.05..8.0), rng.gen_range(0.1..4.0), rng.gen_range(-3.0..3.0));
        let tau = 1.0 / y;
        let canonical = invariant_canonical(tau, r, -r_y / (tau * tau), &p, w)?;
        worst = worst.max(rel(canonical, 2.0 * el_invariant_ef(r, r_y, y, &p, w)?));
    }
    Ok(measured(worst))
}

/// Pinney solution in the `τ = 1/Y` chart: `r(τ) = r̃(1/τ)`, `ṙ = −r̃_Y / τ²`.
fn euler_lagrange(rng: &mut ChaCha8Rng) -> Result<Measurement> {
    let (p, a1, a3) = (params(2, 1.0)?, rng.gen_range(0.5..3.0), rng.gen_range(-0.5..0.5));
    let sol = pinney_general((a1, (1.0 + a3 * a3) / a1, a3), &p, 1.0)?;
    let path = SampledPath::from_fn(fd_grid(0.5, 3.0), 2, |tau| {
        let (r, r_y) = sol.eval(1.0 / tau)?;
        Ok(vec![r, -r_y / (tau * tau)])
    })?;
    Ok(measured(max_residual(&euler_lagrange_residual(&path, &p, 1.0)?)))
}

fn poisson(rng: &mut ChaCha8Rng) -> Result<Measurement> {
    let grid = uniform_grid(0.0, 3.0, 301);
    let coeffs = SuperpositionCoefficients::new(1.0, 0.0)?;
    let closed = ReidTrajectory::closed_form(
        FrequencyModel::Zero,
        params(3, rng.gen_range(0.5..1.5))?,
        free_basis(1.0, &grid)?,
        coeffs,
    )?;
    let mut worst = poisson_conservation_check(&closed)?;
    for (m, omega_sq, t1) in [(2, 1.0, 1.4), (4, 0.02, 10.0)] {
        let freq = FrequencyModel::constant(omega_sq);
        let grid = uniform_grid(0.0, t1, 201);
        let basis = solve_basis_on(&freq, &grid, &tol())?;
        let ics = (rng.gen_range(0.9..1.3), rng.gen_range(-0.1..0.1));
        let traj = simulate_reid(&freq, &params(m, 1.0)?, &basis, &coeffs, ics, OutputGrid::Points(&grid), &tol())?;
        worst = worst.max(poisson_conservation_check(&traj)?);
    }
    Ok(measured(worst))
}

fn kepler_invariant(rng: &mut ChaCha8Rng) -> Result<Measurement> {
    let mut worst: f64 = 0.0;
    for m in [2, 4, 6] {
        let kp = KeplerParams::new(rng.gen_range(0.5..2.0), rng.gen_range(0.0..2.0), m)?;
        for t in uniform_grid(-3.0, 3.0, 121) {
            let (r, r_dot) = radial_solution(t, &kp)?;
            worst = worst.max(radial_invariant(r, r_dot, &kp)?.abs());
        }
    }
    Ok(measured(worst))
}
