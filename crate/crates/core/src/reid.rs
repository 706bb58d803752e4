//! The Reid oscillator
//!
//! ```text
//! q_tt + ω²(t) q = 0
//! q̃_tt + ω²(t) q̃ = α (q1 q2)^(m-2) q̃^(1-2m)
//! ```
//!
//! with its numeric simulation and the closed-form superposition solutions: the
//! order-`m` superposition `q̃ = (q1^m + α q2^m / ((m-1) W²))^(1/m)` (Pinney's formula
//! at `m = 2`), the general three-constant Pinney family and Polyanin's ray
//! `r̃ ∝ √Y` of the Emden-Fowler equation.

use crate::emden_fowler::EfSolution;
use crate::error::{Error, Result};
use crate::linear::{FrequencyModel, LinearBasis, SuperpositionCoefficients};
use crate::numerics::{integrate_ivp, integrate_ivp_at, real_root, SampledPath, ToleranceConfig};

/// Order `m ≥ 2` and nonzero coupling `α`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReidParams {
    m: u32,
    alpha: f64,
}

impl ReidParams {
    pub fn new(m: u32, alpha: f64) -> Result<Self> {
        if m < 2 {
            return Err(Error::InvalidParams(format!("m must be at least 2, got {m}")));
        }
        if !alpha.is_finite() {
            return Err(Error::InvalidParams("alpha must be finite".into()));
        }
        if alpha == 0.0 {
            return Err(Error::InvalidParams("alpha must be nonzero".into()));
        }
        Ok(Self { m, alpha })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// `α W^(m-2)`, the Emden-Fowler coefficient.
    pub fn ef_coupling(&self, w: f64) -> f64 {
        self.alpha * w.powi(self.m as i32 - 2)
    }

    /// `α W^(m-2) / (m-1)`, the coefficient of the nonlinear potential term.
    pub fn reduced_coupling(&self, w: f64) -> f64 {
        self.ef_coupling(w) / (self.m - 1) as f64
    }

    pub(crate) fn mi(&self) -> i32 {
        self.m as i32
    }
}

/// `q̃_tt = α (q1 q2)^(m-2) q̃^(1-2m) - ω² q̃` for pointwise data.
pub fn reid_acceleration(qtilde: f64, q1q2: f64, omega_sq: f64, params: &ReidParams) -> Result<f64> {
    if qtilde == 0.0 {
        return Err(Error::SingularQtilde { t: f64::NAN });
    }
    let m = params.mi();
    Ok(params.alpha * q1q2.powi(m - 2) * qtilde.powi(1 - 2 * m) - omega_sq * qtilde)
}

/// Reid right-hand side at time `t`, with `q1, q2` interpolated from `basis`.
pub fn reid_rhs(t: f64, qtilde: f64, basis: &LinearBasis, params: &ReidParams, freq: &FrequencyModel) -> Result<f64> {
    let (q1, q2) = basis.eval(t)?;
    reid_acceleration(qtilde, q1 * q2, freq.omega_sq(t), params).map_err(|e| match e {
        Error::SingularQtilde { .. } => Error::SingularQtilde { t },
        other => other,
    })
}

/// Superposition value and time derivative from `(q1, q1_t, q2, q2_t)`.
///
/// Radicands `R ≤ 0` are rejected for even `m`; for odd `m` a negative radicand
/// takes the real odd root, and `R = 0` is always singular.
pub fn superposition_at(state: [f64; 4], w: f64, params: &ReidParams) -> Result<(f64, f64)> {
    let [q1, q1t, q2, q2t] = state;
    let m = params.mi();
    let c = params.alpha / ((m - 1) as f64 * w * w);
    let radicand = q1.powi(m) + c * q2.powi(m);
    if radicand == 0.0 || (radicand < 0.0 && m % 2 == 0) {
        return Err(Error::NegativeRadicand { at: f64::NAN, radicand });
    }
    let qt = real_root(radicand, params.m).expect("branch checked above");
    let dqt = qt.powi(1 - m) * (q1.powi(m - 1) * q1t + c * q2.powi(m - 1) * q2t);
    Ok((qt, dqt))
}

/// Superposition solution sampled on the basis grid as `(q̃, q̃_t)`.
pub fn reid_superposition(basis: &LinearBasis, params: &ReidParams) -> Result<SampledPath> {
    let grid = basis.grid().to_vec();
    let mut values = Vec::with_capacity(grid.len());
    for (i, &t) in grid.iter().enumerate() {
        let (q, dq) = superposition_at(basis.at(i), basis.wronskian, params).map_err(|e| match e {
            Error::NegativeRadicand { radicand, .. } => Error::NegativeRadicand { at: t, radicand },
            other => other,
        })?;
        values.push(vec![q, dq]);
    }
    SampledPath::new(grid, values)
}

/// A Reid trajectory: the linear solution `q = a q1 + b q2`, the nonlinear
/// companion `q̃`, and the basis they were built from, all on one grid.
#[derive(Debug, Clone)]
pub struct ReidTrajectory {
    /// `(q, q_t)`
    pub base: SampledPath,
    /// `(q̃, q̃_t)`
    pub aux: SampledPath,
    pub params: ReidParams,
    pub basis: LinearBasis,
    pub coeffs: SuperpositionCoefficients,
    pub freq: FrequencyModel,
}

impl ReidTrajectory {
    pub fn new(
        base: SampledPath,
        aux: SampledPath,
        params: ReidParams,
        basis: LinearBasis,
        coeffs: SuperpositionCoefficients,
        freq: FrequencyModel,
    ) -> Result<Self> {
        if base.grid() != aux.grid() || base.grid() != basis.grid() {
            return Err(Error::DomainMismatch("trajectory components must share one grid".into()));
        }
        if base.dim() < 2 || aux.dim() < 2 {
            return Err(Error::InvalidPath("trajectory components must carry (value, derivative)".into()));
        }
        if let Some((t, _)) = aux.iter().find(|(_, s)| s[0] <= 0.0) {
            return Err(Error::SingularQtilde { t });
        }
        Ok(Self { base, aux, params, basis, coeffs, freq })
    }

    /// Trajectory whose companion is the closed-form superposition on `basis`.
    pub fn closed_form(
        freq: FrequencyModel,
        params: ReidParams,
        basis: LinearBasis,
        coeffs: SuperpositionCoefficients,
    ) -> Result<Self> {
        let aux = reid_superposition(&basis, &params)?;
        let base = linear_combination(&basis, &coeffs)?;
        Self::new(base, aux, params, basis, coeffs, freq)
    }

    pub fn grid(&self) -> &[f64] {
        self.base.grid()
    }

    pub fn len(&self) -> usize {
        self.base.len()
    }

    pub fn is_empty(&self) -> bool {
        self.base.is_empty()
    }

    /// `(q, q_t, q̃, q̃_t)` at grid index `i`.
    pub fn state(&self, i: usize) -> [f64; 4] {
        let (b, a) = (self.base.state(i), self.aux.state(i));
        [b[0], b[1], a[0], a[1]]
    }
}

pub(crate) fn linear_combination(basis: &LinearBasis, coeffs: &SuperpositionCoefficients) -> Result<SampledPath> {
    let values = (0..basis.len())
        .map(|i| {
            let [q1, q1t, q2, q2t] = basis.at(i);
            vec![coeffs.combine(q1, q2), coeffs.combine(q1t, q2t)]
        })
        .collect();
    SampledPath::new(basis.grid().to_vec(), values)
}

/// Where `simulate_reid` reports the solution.
#[derive(Debug, Clone, Copy)]
pub enum OutputGrid<'a> {
    /// Every accepted integrator step on `[t0, t1]`.
    Adaptive { t0: f64, t1: f64 },
    /// Dense output on the given points; the first one is the start time.
    Points(&'a [f64]),
}

/// Integrates the coupled Reid system.
///
/// The basis pair is integrated together with `q̃` in one first-order system
/// `(q1, q1_t, q2, q2_t, q̃, q̃_t)` so the nonlinearity `(q1 q2)^(m-2)` is evaluated
/// consistently at every stage and all components share one error control;
/// `q = a q1 + b q2` is formed from the integrated pair. Initial data for the pair
/// are taken from `basis` at its anchor time.
pub fn simulate_reid(
    freq: &FrequencyModel,
    params: &ReidParams,
    basis: &LinearBasis,
    q_ics: &SuperpositionCoefficients,
    qtilde_ics: (f64, f64),
    output: OutputGrid<'_>,
    tol: &ToleranceConfig,
) -> Result<ReidTrajectory> {
    let (qt0, dqt0) = qtilde_ics;
    if !(qt0 > 0.0) || !dqt0.is_finite() {
        return Err(Error::InvalidParams(format!("qtilde(t0) must be positive, got {qt0}")));
    }
    let t_start = match output {
        OutputGrid::Adaptive { t0, .. } => t0,
        OutputGrid::Points(p) => *p.first().ok_or(Error::PathTooShort { len: 0, required: 2 })?,
    };
    if (t_start - basis.t0).abs() > 1e-12 * basis.t0.abs().max(1.0) {
        return Err(Error::DomainMismatch(format!(
            "simulation starts at {t_start} but the basis is anchored at {}",
            basis.t0
        )));
    }
    freq.validate()?;
    let m = params.mi();
    let alpha = params.alpha;
    let rhs = |t: f64, y: &[f64], dy: &mut [f64]| {
        let w2 = freq.omega_sq(t);
        dy[0] = y[1];
        dy[1] = -w2 * y[0];
        dy[2] = y[3];
        dy[3] = -w2 * y[2];
        dy[4] = y[5];
        dy[5] =
            if y[4] > 0.0 { alpha * (y[0] * y[2]).powi(m - 2) * y[4].powi(1 - 2 * m) - w2 * y[4] } else { f64::NAN };
    };
    let [q1, q1t, q2, q2t] = basis.at(0);
    let y0 = [q1, q1t, q2, q2t, qt0, dqt0];
    let path = match output {
        OutputGrid::Adaptive { t0, t1 } => integrate_ivp(rhs, &y0, t0, t1, tol),
        OutputGrid::Points(points) => integrate_ivp_at(rhs, &y0, points, tol),
    }
    .map_err(|e| match e {
        Error::NonFiniteState { t } => Error::SingularQtilde { t },
        other => other,
    })?;

    let grid = path.grid().to_vec();
    let column = |f: &dyn Fn(&[f64]) -> Vec<f64>| path.iter().map(|(_, s)| f(s)).collect::<Vec<_>>();
    let q1 = SampledPath::new(grid.clone(), column(&|s| vec![s[0], s[1]]))?;
    let q2 = SampledPath::new(grid.clone(), column(&|s| vec![s[2], s[3]]))?;
    let base = SampledPath::new(grid.clone(), column(&|s| vec![q_ics.combine(s[0], s[2]), q_ics.combine(s[1], s[3])]))?;
    let aux = SampledPath::new(grid, column(&|s| vec![s[4], s[5]]))?;
    let sim_basis = LinearBasis::from_paths(q1, q2)?;
    ReidTrajectory::new(base, aux, *params, sim_basis, *q_ics, freq.clone())
}

/// General solution `r̃(Y) = √(α1 + α2 Y² + 2 α3 Y)` of `r̃_YY = α r̃^-3`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PinneyGeneral {
    pub a1: f64,
    pub a2: f64,
    pub a3: f64,
}

/// Builds the three-constant Pinney solution, checking `α1 α2 - α3² = α / W²`.
pub fn pinney_general(alphas: (f64, f64, f64), params: &ReidParams, w: f64) -> Result<PinneyGeneral> {
    if params.m != 2 {
        return Err(Error::InvalidParams(format!("the Pinney family needs m = 2, got {}", params.m)));
    }
    let (a1, a2, a3) = alphas;
    let residual = a1 * a2 - a3 * a3 - params.alpha / (w * w);
    if !(residual.abs() <= 1e-12) {
        return Err(Error::ConstraintViolated { residual });
    }
    Ok(PinneyGeneral { a1, a2, a3 })
}

impl EfSolution for PinneyGeneral {
    fn eval(&self, y: f64) -> Result<(f64, f64)> {
        let radicand = self.a1 + self.a2 * y * y + 2.0 * self.a3 * y;
        if !(radicand > 0.0) {
            return Err(Error::NegativeRadicand { at: y, radicand });
        }
        let r = radicand.sqrt();
        Ok((r, (self.a2 * y + self.a3) / r))
    }
}

/// Polyanin's particular solution `r̃ = (-4 α W^(m-2))^(1/(2m)) √Y`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolyaninRay {
    pub coefficient: f64,
}

/// The ray exists only when `-4 α W^(m-2) > 0`: its coefficient `c` must satisfy
/// `c^(2m) = -4 α W^(m-2)`, an even power.
pub fn polyanin_particular(params: &ReidParams, w: f64) -> Result<PolyaninRay> {
    let radicand = -4.0 * params.ef_coupling(w);
    if !(radicand > 0.0) {
        return Err(Error::NoRealBranch { value: radicand, order: 2 * params.m });
    }
    let coefficient = real_root(radicand, 2 * params.m).expect("positive radicand");
    Ok(PolyaninRay { coefficient })
}

impl EfSolution for PolyaninRay {
    fn eval(&self, y: f64) -> Result<(f64, f64)> {
        if !(y > 0.0) {
            return Err(Error::NonpositiveY { y });
        }
        let s = y.sqrt();
        Ok((self.coefficient * s, 0.5 * self.coefficient / s))
    }
}

/// Maps an Emden-Fowler solution back to physical time: `q̃(t) = q1(t) r̃(Y(t))`,
/// `q̃_t = q1_t r̃ + r̃_Y Y_t q1`.
///
/// `rtilde` is sampled over `Y` as `(r̃, r̃_Y)` and interpolated; `q1` holds
/// `(q1, q1_t)` and `y_of_t` holds `(Y, Y_t)` on a common time grid.
pub fn ef_to_physical(rtilde: &SampledPath, q1: &SampledPath, y_of_t: &SampledPath) -> Result<SampledPath> {
    if q1.grid() != y_of_t.grid() {
        return Err(Error::DomainMismatch("q1 and Y(t) must share one time grid".into()));
    }
    if rtilde.dim() < 2 || q1.dim() < 2 || y_of_t.dim() < 2 {
        return Err(Error::InvalidPath("paths must carry (value, derivative)".into()));
    }
    let values = q1
        .iter()
        .zip(y_of_t.iter())
        .map(|((_, q), (_, y))| {
            let (r, r_y) = rtilde.hermite(y[0], 0, 1)?;
            Ok(vec![q[0] * r, q[1] * r + q[0] * r_y * y[1]])
        })
        .collect::<Result<Vec<_>>>()?;
    SampledPath::new(q1.grid().to_vec(), values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::emden_fowler::ef_residual;
    use crate::linear::{solve_basis, solve_basis_on};
    use crate::numerics::{fd_residual, max_residual, uniform_grid};

    fn tight() -> ToleranceConfig {
        ToleranceConfig::new(1e-11, 1e-13, 1_000_000).unwrap()
    }

    fn params(m: u32, alpha: f64) -> ReidParams {
        ReidParams::new(m, alpha).unwrap()
    }

    #[test]
    fn params_validation() {
        assert_eq!(ReidParams::new(2, 0.0).unwrap_err().to_string(), "invalid parameter: alpha must be nonzero");
        assert!(ReidParams::new(1, 1.0).is_err());
        assert!(ReidParams::new(0, 1.0).is_err());
        assert!(ReidParams::new(2, f64::NAN).is_err());
    }

    #[test]
    fn rhs_examples() {
        let basis = solve_basis(&FrequencyModel::Zero, 0.0, 3.0, &tight()).unwrap();
        // m = 2: independent of the basis
        let a = reid_rhs(1.3, 0.7, &basis, &params(2, 1.5), &FrequencyModel::constant(2.0)).unwrap();
        assert!((a - (1.5 * 0.7f64.powi(-3) - 2.0 * 0.7)).abs() < 1e-14);
        let b = reid_rhs(2.0, 1.0, &basis, &params(3, 1.0), &FrequencyModel::Zero).unwrap();
        assert!((b - 2.0).abs() < 1e-13, "{b}");
        let c = reid_acceleration(1.0, 0.3, 1.0, &params(2, 1.0)).unwrap();
        assert_eq!(c, 0.0);
        assert!(matches!(
            reid_rhs(1.0, 0.0, &basis, &params(2, 1.0), &FrequencyModel::Zero),
            Err(Error::SingularQtilde { t }) if t == 1.0
        ));
    }

    #[test]
    fn pinney_fixed_point_superposition() {
        let grid = uniform_grid(0.0, 6.0, 601);
        let basis = solve_basis_on(&FrequencyModel::constant(1.0), &grid, &tight()).unwrap();
        let s = reid_superposition(&basis, &params(2, 1.0)).unwrap();
        for (_, v) in s.iter() {
            assert!((v[0] - 1.0).abs() < 1e-9 && v[1].abs() < 1e-9);
        }
    }

    #[test]
    fn m2_superposition_is_pinney_formula() {
        let grid = uniform_grid(0.0, 1.0, 101);
        let basis = solve_basis_on(&FrequencyModel::constant(2.0), &grid, &tight()).unwrap();
        let basis = basis.with_wronskian(1.7).unwrap();
        let alpha = 0.6;
        let s = reid_superposition(&basis, &params(2, alpha)).unwrap();
        for i in 0..grid.len() {
            let [q1, _, q2, _] = basis.at(i);
            let pinney = (q1 * q1 + alpha / (1.7 * 1.7) * q2 * q2).sqrt();
            assert!((s.value(i, 0) - pinney).abs() <= 4.0 * f64::EPSILON * pinney);
        }
    }

    #[test]
    fn cubic_superposition_closed_form_and_residual() {
        let grid = uniform_grid(0.0, 3.0, 3001);
        let basis = solve_basis_on(&FrequencyModel::Zero, &grid, &tight()).unwrap();
        let p = params(3, 1.0);
        let s = reid_superposition(&basis, &p).unwrap();
        for (t, v) in s.iter() {
            let exact = (1.0 + t.powi(3) / 2.0).cbrt();
            assert!((v[0] - exact).abs() < 1e-12);
            // d/dt (1 + t³/2)^(1/3) = t²/2 (1 + t³/2)^(-2/3)
            assert!((v[1] - 0.5 * t * t * exact.powi(-2)).abs() < 1e-12);
        }
        let r = fd_residual(&s, |t, q, _, d2| d2 - t * q.powi(-5)).unwrap();
        assert!(max_residual(&r) < 1e-4);
    }

    #[test]
    fn even_order_negative_radicand() {
        let grid = uniform_grid(0.0, 2.0, 21);
        let basis = solve_basis_on(&FrequencyModel::Zero, &grid, &tight()).unwrap();
        match reid_superposition(&basis, &params(2, -1.0)) {
            Err(Error::NegativeRadicand { at, .. }) => assert!((at - 1.0).abs() < 1e-12 || at > 1.0),
            other => panic!("expected NegativeRadicand, got {other:?}"),
        }
    }

    #[test]
    fn simulation_holds_pinney_fixed_point() {
        let basis = solve_basis(&FrequencyModel::constant(1.0), 0.0, 1.0, &tight()).unwrap();
        let coeffs = SuperpositionCoefficients::new(1.0, 0.0).unwrap();
        let traj = simulate_reid(
            &FrequencyModel::constant(1.0),
            &params(2, 1.0),
            &basis,
            &coeffs,
            (1.0, 0.0),
            OutputGrid::Adaptive { t0: 0.0, t1: 10.0 },
            &tight(),
        )
        .unwrap();
        for (_, v) in traj.aux.iter() {
            assert!((v[0] - 1.0).abs() < 1e-8);
        }
    }

    #[test]
    fn simulation_tracks_cubic_superposition() {
        let grid = uniform_grid(0.0, 3.0, 301);
        let basis = solve_basis_on(&FrequencyModel::Zero, &grid, &tight()).unwrap();
        let coeffs = SuperpositionCoefficients::new(1.0, 0.0).unwrap();
        let p = params(3, 1.0);
        let traj =
            simulate_reid(&FrequencyModel::Zero, &p, &basis, &coeffs, (1.0, 0.0), OutputGrid::Points(&grid), &tight())
                .unwrap();
        let closed = reid_superposition(&basis, &p).unwrap();
        for i in 0..grid.len() {
            assert!((traj.aux.value(i, 0) - closed.value(i, 0)).abs() < 1e-7);
        }
    }

    #[test]
    fn simulation_reports_collapse() {
        // attractive coupling with no frequency pulls q̃ into the origin
        let basis = solve_basis(&FrequencyModel::Zero, 0.0, 1.0, &tight()).unwrap();
        let coeffs = SuperpositionCoefficients::new(1.0, 0.0).unwrap();
        let res = simulate_reid(
            &FrequencyModel::Zero,
            &params(2, -1.0),
            &basis,
            &coeffs,
            (1.0, 0.0),
            OutputGrid::Adaptive { t0: 0.0, t1: 5.0 },
            &tight(),
        );
        match res {
            // q̃ = √(1 - t²) reaches zero at t = 1
            Err(Error::SingularQtilde { t }) => assert!((t - 1.0).abs() < 1e-3, "{t}"),
            other => panic!("expected SingularQtilde, got {other:?}"),
        }
    }

    #[test]
    fn pinney_general_examples() {
        let p = params(2, 0.8);
        let particular = pinney_general((1.0, 0.8, 0.0), &p, 1.0).unwrap();
        let (r, _) = particular.eval(2.0).unwrap();
        assert!((r - (1.0 + 0.8 * 4.0f64).sqrt()).abs() < 1e-15);

        let pol = pinney_general((0.0, 0.0, 1.0), &params(2, -1.0), 1.0).unwrap();
        let ray = polyanin_particular(&params(2, -1.0), 1.0).unwrap();
        for y in [0.3, 1.0, 4.0] {
            assert!((pol.eval(y).unwrap().0 - ray.eval(y).unwrap().0).abs() < 1e-14);
            assert!((pol.eval(y).unwrap().0 - (2.0 * y).sqrt()).abs() < 1e-14);
        }

        let general = pinney_general((2.0, 1.0, 1.0), &params(2, 1.0), 1.0).unwrap();
        let path = general.sample(&uniform_grid(0.0, 4.0, 4001)).unwrap();
        let r = ef_residual(&path, &params(2, 1.0), 1.0).unwrap();
        assert!(max_residual(&r) < 1e-4);

        assert!(matches!(pinney_general((2.0, 1.0, 1.0), &params(2, 1.5), 1.0), Err(Error::ConstraintViolated { .. })));
        assert!(pinney_general((1.0, 1.0, 0.0), &params(3, 1.0), 1.0).is_err());
    }

    #[test]
    fn polyanin_examples() {
        let ray = polyanin_particular(&params(2, -1.0), 1.0).unwrap();
        assert!((ray.coefficient - 2f64.sqrt()).abs() < 1e-15);
        let ray3 = polyanin_particular(&params(3, -0.5), 1.0).unwrap();
        assert!((ray3.coefficient - 2f64.powf(1.0 / 6.0)).abs() < 1e-15);
        let path = ray3.sample(&uniform_grid(0.5, 3.0, 2501)).unwrap();
        assert!(max_residual(&ef_residual(&path, &params(3, -0.5), 1.0).unwrap()) < 1e-4);
        assert!(matches!(polyanin_particular(&params(2, 1.0), 1.0), Err(Error::NoRealBranch { .. })));
        // odd m does not rescue a negative radicand: the root order 2m is even
        assert!(matches!(polyanin_particular(&params(3, 0.5), 1.0), Err(Error::NoRealBranch { .. })));
        assert!(polyanin_particular(&params(3, 0.5), -1.0).is_ok());
    }

    #[test]
    fn ef_to_physical_pinney_and_polyanin() {
        let grid = uniform_grid(0.05, 1.4, 271);
        let q1 = SampledPath::from_fn(grid.clone(), 2, |t| Ok(vec![t.cos(), -t.sin()])).unwrap();
        let y_of_t = SampledPath::from_fn(grid.clone(), 2, |t| Ok(vec![t.tan(), 1.0 / t.cos().powi(2)])).unwrap();
        let y_grid = uniform_grid(0.0, 6.0, 6001);

        let alpha = 0.7;
        let pin = pinney_general((1.0, alpha, 0.0), &params(2, alpha), 1.0).unwrap();
        let qt = ef_to_physical(&pin.sample(&y_grid).unwrap(), &q1, &y_of_t).unwrap();
        for (t, v) in qt.iter() {
            let exact = (t.cos().powi(2) + alpha * t.sin().powi(2)).sqrt();
            assert!((v[0] - exact).abs() < 1e-10, "{t}");
        }

        let ray = polyanin_particular(&params(2, -1.0), 1.0).unwrap();
        let qp = ef_to_physical(&ray.sample(&uniform_grid(0.01, 6.0, 6001)).unwrap(), &q1, &y_of_t).unwrap();
        for (t, v) in qp.iter().filter(|(t, _)| t.tan() > 0.02) {
            let exact = (2.0 * t.cos() * t.sin()).sqrt();
            assert!((v[0] - exact).abs() < 1e-8, "{t}");
        }

        let short = uniform_grid(0.0, 1.0, 11);
        assert!(matches!(ef_to_physical(&pin.sample(&short).unwrap(), &q1, &y_of_t), Err(Error::DomainMismatch(_))));
    }

    #[test]
    fn ef_to_physical_identity_basis() {
        let grid = uniform_grid(0.0, 2.0, 21);
        let ones = SampledPath::from_fn(grid.clone(), 2, |_| Ok(vec![1.0, 0.0])).unwrap();
        let y_of_t = SampledPath::from_fn(grid.clone(), 2, |t| Ok(vec![t, 1.0])).unwrap();
        let pin = pinney_general((1.0, 2.0, 0.0), &params(2, 2.0), 1.0).unwrap();
        let q = ef_to_physical(&pin.sample(&grid).unwrap(), &ones, &y_of_t).unwrap();
        for (t, v) in q.iter() {
            assert!((v[0] - pin.eval(t).unwrap().0).abs() < 1e-14);
        }
    }
}
