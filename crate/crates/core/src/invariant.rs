//! Ermakov-Lewis invariants in all their forms, and drift statistics along
//! trajectories.
//!
//! All invariants here use the ½-normalization, e.g. for `m = 2`
//!
//! ```text
//! I = ½ [ (q q̃_t − q̃ q_t)² + α (q/q̃)² ]
//! ```
//!
//! The classical unnormalized form `α (q/q̃)² + (q̃ q_t − q q̃_t)²` equals `2 I`; use
//! [`classical_form`] to convert. The canonical form of
//! [`crate::mechanics::invariant_canonical`] is likewise `2 I`.

use serde::{Deserialize, Serialize};

use crate::emden_fowler::{ef_to_hyperbolic, to_ef};
use crate::error::{Error, Result};
use crate::linear::{phase_from_basis, SuperpositionCoefficients};
use crate::numerics::real_root;
use crate::reid::{ReidParams, ReidTrajectory};

/// Which expression of the invariant is evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Formulation {
    /// `½[(q q̃_t − q̃ q_t)² + α (q/q̃)²]`
    M2Physical,
    /// `½(a² α + b² W²)`
    M2Constant,
    /// The order-`m` invariant in `(q, q̃, Y)`.
    HigherPhysical,
    /// The order-`m` invariant in Emden-Fowler coordinates `(Y, r̃, r̃_Y)`.
    HigherEf,
    /// The order-`m` invariant in hyperbolic coordinates `(η, Q̃, Q̃_η)`.
    HigherHyperbolic,
    /// The constant value on Polyanin's ray.
    PolyaninConstant,
}

impl Formulation {
    pub const ALL: [Formulation; 6] = [
        Formulation::M2Physical,
        Formulation::M2Constant,
        Formulation::HigherPhysical,
        Formulation::HigherEf,
        Formulation::HigherHyperbolic,
        Formulation::PolyaninConstant,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Formulation::M2Physical => "m2_physical",
            Formulation::M2Constant => "m2_constant",
            Formulation::HigherPhysical => "higher_physical",
            Formulation::HigherEf => "higher_ef",
            Formulation::HigherHyperbolic => "higher_hyperbolic",
            Formulation::PolyaninConstant => "polyanin_constant",
        }
    }
}

impl std::str::FromStr for Formulation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Formulation::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::InvalidParams(format!("unknown formulation '{s}'")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct InvariantValue {
    pub value: f64,
    pub formulation: Formulation,
}

/// Sampled invariant with drift statistics against a reference value.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InvariantReport {
    pub formulation: Formulation,
    /// `(t, I(t))`
    pub samples: Vec<(f64, f64)>,
    pub reference: f64,
    /// `max |I(t) − reference|`
    pub max_abs_drift: f64,
    /// `max_abs_drift / max(1, |reference|)`
    pub rel_drift: f64,
}

impl InvariantReport {
    pub fn from_samples(formulation: Formulation, samples: Vec<(f64, f64)>, reference: Option<f64>) -> Result<Self> {
        if samples.len() < 2 {
            return Err(Error::PathTooShort { len: samples.len(), required: 2 });
        }
        let reference = reference.unwrap_or(samples[0].1);
        let max_abs_drift = samples.iter().map(|(_, v)| (v - reference).abs()).fold(0.0, f64::max);
        let rel_drift = max_abs_drift / reference.abs().max(1.0);
        Ok(Self { formulation, samples, reference, max_abs_drift, rel_drift })
    }
}

/// Converts a ½-normalized invariant to the classical unnormalized form.
pub fn classical_form(invariant: f64) -> f64 {
    2.0 * invariant
}

fn finite(value: f64) -> Result<f64> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::NonFiniteState { t: f64::NAN })
    }
}

/// `I = ½[(q q̃_t − q̃ q_t)² + α (q/q̃)²]`. Finite at `q = 0`.
pub fn el_invariant_m2(q: f64, q_t: f64, qtilde: f64, qtilde_t: f64, alpha: f64) -> Result<f64> {
    if qtilde == 0.0 {
        return Err(Error::SingularQtilde { t: f64::NAN });
    }
    let wr = q * qtilde_t - qtilde * q_t;
    let ratio = q / qtilde;
    finite(0.5 * (wr * wr + alpha * ratio * ratio))
}

/// `I = ½(a² α + b² W²)` for `q = a q1 + b q2` and the Pinney companion.
pub fn el_invariant_constant_m2(coeffs: &SuperpositionCoefficients, alpha: f64, w: f64) -> f64 {
    0.5 * (coeffs.a * coeffs.a * alpha + coeffs.b * coeffs.b * w * w)
}

/// Whether `α > −(bW/a)²`, i.e. whether the `m = 2` invariant is strictly positive.
///
/// Evaluated as `a² α + b² W² > 0`, the same inequality scaled by `a²`.
pub fn positivity_condition(coeffs: &SuperpositionCoefficients, alpha: f64, w: f64) -> Result<bool> {
    if coeffs.a == 0.0 {
        return Err(Error::ZeroA);
    }
    Ok(el_invariant_constant_m2(coeffs, alpha, w) > 0.0)
}

/// `I = ½[Q̃_η² + (αW^(m−2)/(m−1)) Q̃^(2−2m) − ¼ Q̃²]`
pub fn el_invariant_hyperbolic(qtilde: f64, qtilde_eta: f64, params: &ReidParams, w: f64) -> Result<f64> {
    if !(qtilde > 0.0) {
        return Err(Error::SingularQtilde { t: f64::NAN });
    }
    let m = params.mi();
    let c = params.reduced_coupling(w);
    finite(0.5 * (qtilde_eta * qtilde_eta + c * qtilde.powi(2 - 2 * m) - 0.25 * qtilde * qtilde))
}

fn check_y(y: f64) -> Result<()> {
    // Y = 0 is the anchor of the phase integral, where the expressions stay finite
    if y < 0.0 || y.is_nan() {
        Err(Error::NonpositiveY { y })
    } else {
        Ok(())
    }
}

/// `I = ½[Y r̃_Y² − r̃_Y r̃ + (αW^(m−2)/(m−1)) (Y/r̃²)^(m−1)]`
pub fn el_invariant_ef(rtilde: f64, rtilde_y: f64, y: f64, params: &ReidParams, w: f64) -> Result<f64> {
    if !(rtilde > 0.0) {
        return Err(Error::SingularRtilde { rtilde });
    }
    check_y(y)?;
    let m = params.mi();
    let c = params.reduced_coupling(w);
    finite(0.5 * (y * rtilde_y * rtilde_y - rtilde_y * rtilde + c * (y / (rtilde * rtilde)).powi(m - 1)))
}

/// The order-`m` invariant in physical variables, with `Y = ∫dt/q²`:
/// `½[(q q̃_t − q̃ q_t)² Y − (q̃/q)(q q̃_t − q̃ q_t) + (αW^(m−2)/(m−1)) (q² Y / q̃²)^(m−1)]`.
pub fn el_invariant_higher_physical(sample: [f64; 4], y: f64, params: &ReidParams, w: f64) -> Result<f64> {
    let [q, q_t, qtilde, qtilde_t] = sample;
    if q == 0.0 {
        return Err(Error::SingularQ { t: f64::NAN });
    }
    if !(qtilde > 0.0) {
        return Err(Error::SingularQtilde { t: f64::NAN });
    }
    check_y(y)?;
    let m = params.mi();
    let c = params.reduced_coupling(w);
    let wr = q * qtilde_t - qtilde * q_t;
    finite(0.5 * (wr * wr * y - qtilde / q * wr + c * (q * q * y / (qtilde * qtilde)).powi(m - 1)))
}

/// `I = −((−4αW^(m−2))^(1/m) / 8) · m/(m−1)`, the invariant on Polyanin's ray,
/// with the real odd-root convention for negative radicands.
pub fn polyanin_invariant(params: &ReidParams, w: f64) -> Result<f64> {
    let radicand = -4.0 * params.ef_coupling(w);
    let root = real_root(radicand, params.m()).ok_or(Error::NoRealBranch { value: radicand, order: params.m() })?;
    let m = params.m() as f64;
    Ok(-(root / 8.0) * (m / (m - 1.0)))
}

/// Attaches the sample time to a location-free pointwise error.
pub(crate) fn locate(e: Error, t: f64) -> Error {
    match e {
        Error::SingularQ { .. } => Error::SingularQ { t },
        Error::SingularQtilde { .. } => Error::SingularQtilde { t },
        Error::NonFiniteState { .. } => Error::NonFiniteState { t },
        other => other,
    }
}

/// Samples `formulation` along the trajectory and reports drift against
/// `reference`, which defaults to the value at the first sample.
///
/// The order-`m` formulations use `Y = q2 / (a W q)`, the phase integral of `q`
/// anchored at `t0`, and fail with `SingularQ` at the first zero of `q`. The
/// hyperbolic chart needs `Y > 0`, so the anchor point `Y = 0` is skipped there.
pub fn drift_report(
    traj: &ReidTrajectory,
    formulation: Formulation,
    reference: Option<f64>,
) -> Result<InvariantReport> {
    let n = traj.len();
    if n < 2 {
        return Err(Error::PathTooShort { len: n, required: 2 });
    }
    let params = &traj.params;
    let w = traj.basis.wronskian;
    let grid = traj.grid();
    let alpha = params.alpha();
    let mut samples = Vec::with_capacity(n);
    match formulation {
        Formulation::M2Physical => {
            for (i, &t) in grid.iter().enumerate() {
                let [q, qt, qq, qqt] = traj.state(i);
                samples.push((t, el_invariant_m2(q, qt, qq, qqt, alpha).map_err(|e| locate(e, t))?));
            }
        }
        Formulation::M2Constant => {
            let v = el_invariant_constant_m2(&traj.coeffs, alpha, w);
            samples.extend(grid.iter().map(|&t| (t, v)));
        }
        Formulation::PolyaninConstant => {
            let v = polyanin_invariant(params, w)?;
            samples.extend(grid.iter().map(|&t| (t, v)));
        }
        Formulation::HigherPhysical | Formulation::HigherEf | Formulation::HigherHyperbolic => {
            let phase = phase_from_basis(&traj.basis, &traj.coeffs)?;
            for (i, &t) in grid.iter().enumerate() {
                let y = phase.value(i, 0);
                let state = traj.state(i);
                let value = match formulation {
                    Formulation::HigherPhysical => el_invariant_higher_physical(state, y, params, w),
                    Formulation::HigherEf => {
                        to_ef(state, y).and_then(|s| el_invariant_ef(s.rtilde, s.rtilde_y, s.y, params, w))
                    }
                    _ => {
                        if y == 0.0 {
                            continue;
                        }
                        to_ef(state, y)
                            .and_then(|s| ef_to_hyperbolic(&s))
                            .and_then(|h| el_invariant_hyperbolic(h.qtilde, h.qtilde_eta, params, w))
                    }
                };
                samples.push((t, value.map_err(|e| locate(e, t))?));
            }
        }
    }
    InvariantReport::from_samples(formulation, samples, reference)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::emden_fowler::{hyperbolic_solution, hyperbolic_to_ef, EfSolution};
    use crate::linear::{solve_basis_on, FrequencyModel};
    use crate::numerics::{uniform_grid, ToleranceConfig};
    use crate::reid::{polyanin_particular, simulate_reid, OutputGrid};

    fn params(m: u32, alpha: f64) -> ReidParams {
        ReidParams::new(m, alpha).unwrap()
    }

    fn coeffs(a: f64, b: f64) -> SuperpositionCoefficients {
        SuperpositionCoefficients::new(a, b).unwrap()
    }

    #[test]
    fn m2_examples() {
        for t in uniform_grid(0.0, 6.0, 25) {
            let i = el_invariant_m2(t.cos(), -t.sin(), 1.0, 0.0, 1.0).unwrap();
            assert!((i - 0.5).abs() < 1e-15);
        }
        // α = 0 with q = cos, q̃ = sin: Wronskian squared, halved
        let t: f64 = 0.4;
        let i0 = el_invariant_m2(t.cos(), -t.sin(), t.sin(), t.cos(), 0.0).unwrap();
        assert!((i0 - 0.5).abs() < 1e-15);
        assert!((classical_form(i0) - 1.0).abs() < 1e-15);
        assert_eq!(el_invariant_m2(0.7, 0.2, 0.7, 0.2, 3.0).unwrap(), 1.5);
        assert_eq!(el_invariant_m2(0.0, 1.0, 2.0, 0.0, 3.0).unwrap(), 2.0);
        assert!(el_invariant_m2(1.0, 0.0, 0.0, 0.0, 1.0).is_err());
    }

    #[test]
    fn m2_constant_examples() {
        assert_eq!(el_invariant_constant_m2(&coeffs(1.0, 0.0), 1.0, 1.0), 0.5);
        assert_eq!(el_invariant_constant_m2(&coeffs(0.0, 1.0), 3.0, 2.0), 2.0);
        let (alpha, w): (f64, f64) = (-0.64, 1.6);
        let ratio = (-alpha).sqrt() / w;
        for sign in [1.0, -1.0] {
            let v = el_invariant_constant_m2(&coeffs(1.0, sign * ratio), alpha, w);
            assert!(v.abs() < 1e-15, "{v}");
        }
    }

    #[test]
    fn positivity_examples() {
        assert!(positivity_condition(&coeffs(1.0, 1.0), -0.5, 1.0).unwrap());
        assert!(!positivity_condition(&coeffs(1.0, 1.0), -1.0, 1.0).unwrap());
        assert!(positivity_condition(&coeffs(1.0, 0.0), 0.3, 1.0).unwrap());
        assert_eq!(positivity_condition(&coeffs(0.0, 1.0), 0.3, 1.0), Err(Error::ZeroA));
    }

    #[test]
    fn hyperbolic_examples() {
        assert!((el_invariant_hyperbolic(1.0, 0.0, &params(3, 1.0), 1.0).unwrap() - 0.125).abs() < 1e-15);
        let (q, qe) = (1.3, -0.4);
        let m2 = el_invariant_hyperbolic(q, qe, &params(2, 0.7), 1.0).unwrap();
        assert!((m2 - 0.5 * (qe * qe + 0.7 / (q * q) - 0.25 * q * q)).abs() < 1e-15);
        for m in 2..=6 {
            for w in [1.0, -1.0] {
                let p = params(m, 0.9);
                if p.ef_coupling(w) < 0.0 {
                    continue;
                }
                for eta in uniform_grid(-2.0, 2.0, 20) {
                    let h = hyperbolic_solution(eta, &p, w).unwrap();
                    let i = el_invariant_hyperbolic(h.qtilde, h.qtilde_eta, &p, w).unwrap();
                    assert!(i.abs() < 1e-12, "m={m} w={w} eta={eta}: {i}");
                }
            }
        }
    }

    #[test]
    fn ef_on_polyanin_ray_is_the_constant() {
        for (m, alpha) in [(3, -0.5), (4, -1.0), (5, -0.3), (6, -2.0), (2, -1.0)] {
            let p = params(m, alpha);
            let ray = polyanin_particular(&p, 1.0).unwrap();
            let expected = polyanin_invariant(&p, 1.0).unwrap();
            for y in uniform_grid(0.1, 5.0, 17) {
                let (r, ry) = ray.eval(y).unwrap();
                let i = el_invariant_ef(r, ry, y, &p, 1.0).unwrap();
                assert!((i - expected).abs() < 1e-12, "m={m}: {i} vs {expected}");
            }
        }
        let cube = -3.0 * 2f64.cbrt() / 16.0;
        assert!((polyanin_invariant(&params(3, -0.5), 1.0).unwrap() - cube).abs() < 1e-15);
        assert!((cube + 0.2362).abs() < 1e-4);
    }

    #[test]
    fn polyanin_constant_values() {
        assert_eq!(polyanin_invariant(&params(3, 2.0), 1.0).unwrap(), 0.375);
        assert_eq!(polyanin_invariant(&params(3, -2.0), -1.0).unwrap(), 0.375);
        let v4 = polyanin_invariant(&params(4, -1.0), 1.0).unwrap();
        assert!((v4 + 2f64.sqrt() / 6.0).abs() < 1e-15);
        assert!(matches!(polyanin_invariant(&params(4, 1.0), 1.0), Err(Error::NoRealBranch { .. })));
    }

    #[test]
    fn ef_and_hyperbolic_agree_under_chart_map() {
        let mut rng = 0x2545_f491_4f6c_dd1du64;
        let mut uniform = move |lo: f64, hi: f64| {
            rng ^= rng << 13;
            rng ^= rng >> 7;
            rng ^= rng << 17;
            lo + (hi - lo) * (rng >> 11) as f64 / (1u64 << 53) as f64
        };
        for _ in 0..200 {
            let m = uniform(2.0, 7.0).floor() as u32;
            let p = params(m, uniform(0.1, 2.0) * if uniform(0.0, 1.0) < 0.5 { -1.0 } else { 1.0 });
            let w = if uniform(0.0, 1.0) < 0.5 { -1.0 } else { 1.0 };
            let (y, r, ry) = (uniform(0.2, 3.0), uniform(0.3, 2.0), uniform(-1.0, 1.0));
            let ief = el_invariant_ef(r, ry, y, &p, w).unwrap();
            let h = ef_to_hyperbolic(&crate::emden_fowler::EFState { y, rtilde: r, rtilde_y: ry }).unwrap();
            let ihyp = el_invariant_hyperbolic(h.qtilde, h.qtilde_eta, &p, w).unwrap();
            assert!((ief - ihyp).abs() < 1e-10 * ief.abs().max(1.0));
            let back = hyperbolic_to_ef(&h);
            assert!((back.rtilde - r).abs() < 1e-12 && (back.rtilde_y - ry).abs() < 1e-12);
        }
    }

    #[test]
    fn higher_physical_matches_ef_form() {
        let p = params(4, -0.7);
        let (q, qt, qq, qqt, y) = (0.8, -0.3, 1.1, 0.25, 0.9);
        let phys = el_invariant_higher_physical([q, qt, qq, qqt], y, &p, 1.3).unwrap();
        let ef = el_invariant_ef(qq / q, q * qqt - qq * qt, y, &p, 1.3).unwrap();
        assert!((phys - ef).abs() < 1e-12);
        // vanishing Wronskian leaves only the potential term
        let degenerate = el_invariant_higher_physical([0.6, 0.1, 0.6, 0.1], 0.8, &params(3, 1.0), 1.0).unwrap();
        assert!((degenerate - 0.5 * 0.5 * 0.8f64.powi(2)).abs() < 1e-15);
        assert!(matches!(
            el_invariant_higher_physical([0.0, 1.0, 1.0, 0.0], 1.0, &p, 1.0),
            Err(Error::SingularQ { .. })
        ));
        assert!(matches!(el_invariant_ef(1.0, 0.0, -0.5, &p, 1.0), Err(Error::NonpositiveY { .. })));
    }

    #[test]
    fn cubic_closed_form_trajectory_conserves() {
        let grid = uniform_grid(0.1, 3.0, 59);
        for &t in &grid {
            let qq = (1.0 + t.powi(3) / 2.0).cbrt();
            let qqt = 0.5 * t * t * qq.powi(-2);
            let i = el_invariant_higher_physical([1.0, 0.0, qq, qqt], t, &params(3, 1.0), 1.0).unwrap();
            assert!(i.abs() < 1e-12, "{t}: {i}");
        }
    }

    #[test]
    fn drift_on_closed_form_and_simulation() {
        let tol = ToleranceConfig::new(1e-10, 1e-12, 1_000_000).unwrap();
        let grid = uniform_grid(0.0, 3.0, 301);
        let basis = solve_basis_on(&FrequencyModel::Zero, &grid, &tol).unwrap();
        let traj =
            ReidTrajectory::closed_form(FrequencyModel::Zero, params(3, 1.0), basis.clone(), coeffs(1.0, 0.0)).unwrap();
        for f in [Formulation::HigherPhysical, Formulation::HigherEf, Formulation::HigherHyperbolic] {
            let rep = drift_report(&traj, f, None).unwrap();
            assert!(rep.rel_drift < 1e-10, "{f:?}: {}", rep.rel_drift);
        }
        let hyp = drift_report(&traj, Formulation::HigherHyperbolic, None).unwrap();
        assert_eq!(hyp.samples.len(), grid.len() - 1);

        let sim = simulate_reid(
            &FrequencyModel::constant(1.0),
            &params(2, 1.0),
            &solve_basis_on(&FrequencyModel::constant(1.0), &[0.0, 1.0], &tol).unwrap(),
            &coeffs(1.0, 0.0),
            (1.0, 0.0),
            OutputGrid::Adaptive { t0: 0.0, t1: 10.0 },
            &tol,
        )
        .unwrap();
        let rep = drift_report(&sim, Formulation::M2Physical, None).unwrap();
        assert!(rep.rel_drift < 1e-6);
        assert!((rep.reference - 0.5).abs() < 1e-15);
        let with_ref = drift_report(&sim, Formulation::M2Physical, Some(0.5)).unwrap();
        assert!(with_ref.max_abs_drift < 1e-6);
    }

    #[test]
    fn drift_reports_zero_crossing() {
        let tol = ToleranceConfig::new(1e-10, 1e-12, 1_000_000).unwrap();
        let grid = uniform_grid(0.0, 2.5, 251);
        let basis = solve_basis_on(&FrequencyModel::constant(1.0), &grid, &tol).unwrap();
        let traj = ReidTrajectory::closed_form(FrequencyModel::constant(1.0), params(2, 1.0), basis, coeffs(1.0, 0.0))
            .unwrap();
        match drift_report(&traj, Formulation::HigherPhysical, None) {
            Err(Error::SingularQ { t }) => assert!((t - std::f64::consts::FRAC_PI_2).abs() < 1e-6),
            other => panic!("expected SingularQ, got {other:?}"),
        }
    }

    #[test]
    fn too_short_report() {
        assert!(matches!(
            InvariantReport::from_samples(Formulation::M2Physical, vec![], None),
            Err(Error::PathTooShort { .. })
        ));
    }

    #[test]
    fn formulation_names_round_trip() {
        for f in Formulation::ALL {
            assert_eq!(f.name().parse::<Formulation>().unwrap(), f);
            assert_eq!(serde_json::to_string(&f).unwrap(), format!("\"{}\"", f.name()));
        }
    }
}
