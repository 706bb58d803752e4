//! The time-dependent linear oscillator `q_tt + ω²(t) q = 0`: frequency models, the
//! fundamental pair `(q1, q2)` with its Wronskian, reduction of order and the phase
//! integral `Y(t) = ∫ dt / q²`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::finite_diff::central_derivatives;
use crate::numerics::path::hermite_cubic;
use crate::numerics::{integrate_ivp, integrate_ivp_at, quadrature, SampledPath, ToleranceConfig};

/// Squared frequency `ω²(t)` of the linear oscillator.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FrequencyModel {
    /// `ω² ≡ 0`, with fundamental pair `1, t`.
    Zero,
    Constant {
        omega_sq: f64,
    },
    /// `ω²(t) = Σ coeffs[k] t^k`.
    Polynomial {
        coeffs: Vec<f64>,
    },
    /// Samples joined by a monotone cubic (Fritsch-Carlson) interpolant.
    Tabulated(TabulatedFrequency),
}

impl FrequencyModel {
    pub fn constant(omega_sq: f64) -> Self {
        FrequencyModel::Constant { omega_sq }
    }

    pub fn omega_sq(&self, t: f64) -> f64 {
        match self {
            FrequencyModel::Zero => 0.0,
            FrequencyModel::Constant { omega_sq } => *omega_sq,
            FrequencyModel::Polynomial { coeffs } => coeffs.iter().rev().fold(0.0, |acc, c| acc * t + c),
            FrequencyModel::Tabulated(table) => table.eval(t),
        }
    }

    /// Interval on which `omega_sq` is defined.
    pub fn domain(&self) -> (f64, f64) {
        match self {
            FrequencyModel::Tabulated(table) => (table.grid[0], table.grid[table.grid.len() - 1]),
            _ => (f64::NEG_INFINITY, f64::INFINITY),
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            FrequencyModel::Zero => Ok(()),
            FrequencyModel::Constant { omega_sq } if omega_sq.is_finite() => Ok(()),
            FrequencyModel::Polynomial { coeffs } if coeffs.iter().all(|c| c.is_finite()) => Ok(()),
            FrequencyModel::Tabulated(_) => Ok(()),
            _ => Err(Error::InvalidParams("frequency coefficients must be finite".into())),
        }
    }

    fn check_interval(&self, t0: f64, t1: f64) -> Result<()> {
        self.validate()?;
        let (lo, hi) = self.domain();
        if t0 < lo || t1 > hi {
            return Err(Error::DomainMismatch(format!(
                "interval [{t0}, {t1}] leaves the frequency table domain [{lo}, {hi}]"
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "TableSpec", into = "TableSpec")]
pub struct TabulatedFrequency {
    grid: Vec<f64>,
    values: Vec<f64>,
    slopes: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
struct TableSpec {
    grid: Vec<f64>,
    values: Vec<f64>,
}

impl TryFrom<TableSpec> for TabulatedFrequency {
    type Error = Error;

    fn try_from(spec: TableSpec) -> Result<Self> {
        TabulatedFrequency::new(spec.grid, spec.values)
    }
}

impl From<TabulatedFrequency> for TableSpec {
    fn from(t: TabulatedFrequency) -> Self {
        TableSpec { grid: t.grid, values: t.values }
    }
}

impl TabulatedFrequency {
    pub fn new(grid: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if grid.len() != values.len() || grid.len() < 2 {
            return Err(Error::InvalidParams(
                "frequency table needs matching grid and values with at least two points".into(),
            ));
        }
        if grid.iter().chain(&values).any(|v| !v.is_finite()) {
            return Err(Error::InvalidParams("frequency table entries must be finite".into()));
        }
        if grid.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InvalidParams("frequency table grid must be strictly increasing".into()));
        }
        let slopes = monotone_slopes(&grid, &values);
        Ok(Self { grid, values, slopes })
    }

    fn eval(&self, t: f64) -> f64 {
        let n = self.grid.len();
        let t = t.clamp(self.grid[0], self.grid[n - 1]);
        let i = self.grid.partition_point(|&g| g <= t).saturating_sub(1).min(n - 2);
        hermite_cubic(
            self.grid[i],
            self.grid[i + 1],
            self.values[i],
            self.values[i + 1],
            self.slopes[i],
            self.slopes[i + 1],
            t,
        )
        .0
    }
}

/// Fritsch-Carlson slopes: no overshoot between samples.
fn monotone_slopes(x: &[f64], y: &[f64]) -> Vec<f64> {
    let n = x.len();
    let delta: Vec<f64> = (0..n - 1).map(|i| (y[i + 1] - y[i]) / (x[i + 1] - x[i])).collect();
    if n == 2 {
        return vec![delta[0]; 2];
    }
    let mut m = vec![0.0; n];
    m[0] = delta[0];
    m[n - 1] = delta[n - 2];
    for i in 1..n - 1 {
        if delta[i - 1] * delta[i] <= 0.0 {
            m[i] = 0.0;
        } else {
            let w1 = 2.0 * (x[i + 1] - x[i]) + (x[i] - x[i - 1]);
            let w2 = (x[i + 1] - x[i]) + 2.0 * (x[i] - x[i - 1]);
            m[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
        }
    }
    for i in 0..n - 1 {
        if delta[i] == 0.0 {
            m[i] = 0.0;
            m[i + 1] = 0.0;
            continue;
        }
        let a = m[i] / delta[i];
        let b = m[i + 1] / delta[i];
        let s = a * a + b * b;
        if s > 9.0 {
            let tau = 3.0 / s.sqrt();
            m[i] = tau * a * delta[i];
            m[i + 1] = tau * b * delta[i];
        }
    }
    m
}

/// Coefficients of a general solution `q = a q1 + b q2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SuperpositionCoefficients {
    pub a: f64,
    pub b: f64,
}

impl SuperpositionCoefficients {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !(a.is_finite() && b.is_finite()) {
            return Err(Error::InvalidParams("superposition coefficients must be finite".into()));
        }
        if a == 0.0 && b == 0.0 {
            return Err(Error::InvalidParams("superposition coefficients (a, b) must not both vanish".into()));
        }
        Ok(Self { a, b })
    }

    pub fn combine(&self, x1: f64, x2: f64) -> f64 {
        self.a * x1 + self.b * x2
    }
}

/// Fundamental pair of the linear oscillator sampled on a shared grid.
///
/// `q1` and `q2` hold `(q, q_t)` per point. `wronskian` is `q1 q2_t - q2 q1_t` at
/// the anchor `t0`, which is also the first grid point.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearBasis {
    pub q1: SampledPath,
    pub q2: SampledPath,
    pub wronskian: f64,
    pub t0: f64,
}

impl LinearBasis {
    /// Wraps two sampled solutions given on the same grid.
    pub fn from_paths(q1: SampledPath, q2: SampledPath) -> Result<Self> {
        if q1.grid() != q2.grid() {
            return Err(Error::DomainMismatch("q1 and q2 must share one grid".into()));
        }
        if q1.dim() < 2 || q2.dim() < 2 {
            return Err(Error::InvalidPath("basis paths must carry (q, q_t)".into()));
        }
        let (a, b) = (q1.first_state(), q2.first_state());
        let wronskian = a[0] * b[1] - b[0] * a[1];
        if wronskian == 0.0 || !wronskian.is_finite() {
            return Err(Error::InvalidParams("basis solutions are linearly dependent (W = 0)".into()));
        }
        let t0 = q1.t_start();
        Ok(Self { q1, q2, wronskian, t0 })
    }

    /// Same pair with `q2` multiplied by `w / W`, so the Wronskian becomes `w`.
    pub fn with_wronskian(&self, w: f64) -> Result<Self> {
        if w == 0.0 || !w.is_finite() {
            return Err(Error::InvalidParams("Wronskian must be finite and nonzero".into()));
        }
        let scale = w / self.wronskian;
        let grid = self.q2.grid().to_vec();
        let values = self.q2.iter().map(|(_, s)| s.iter().map(|v| v * scale).collect()).collect();
        Self::from_paths(self.q1.clone(), SampledPath::new(grid, values)?)
    }

    pub fn grid(&self) -> &[f64] {
        self.q1.grid()
    }

    pub fn len(&self) -> usize {
        self.q1.len()
    }

    pub fn is_empty(&self) -> bool {
        self.q1.is_empty()
    }

    /// `(q1, q1_t, q2, q2_t)` at grid index `i`.
    pub fn at(&self, i: usize) -> [f64; 4] {
        let (a, b) = (self.q1.state(i), self.q2.state(i));
        [a[0], a[1], b[0], b[1]]
    }

    /// Interpolated `(q1, q2)` at an arbitrary `t` inside the grid.
    pub fn eval(&self, t: f64) -> Result<(f64, f64)> {
        let (q1, _) = self.q1.hermite(t, 0, 1)?;
        let (q2, _) = self.q2.hermite(t, 0, 1)?;
        Ok((q1, q2))
    }

    /// Pointwise Wronskian along the grid.
    pub fn wronskian_samples(&self) -> Vec<f64> {
        (0..self.len())
            .map(|i| {
                let [q1, q1t, q2, q2t] = self.at(i);
                q1 * q2t - q2 * q1t
            })
            .collect()
    }
}

fn linear_pair_rhs(freq: &FrequencyModel) -> impl FnMut(f64, &[f64], &mut [f64]) + '_ {
    move |t, y, dy| {
        let w2 = freq.omega_sq(t);
        dy[0] = y[1];
        dy[1] = -w2 * y[0];
        dy[2] = y[3];
        dy[3] = -w2 * y[2];
    }
}

const CANONICAL_ICS: [f64; 4] = [1.0, 0.0, 0.0, 1.0];

fn split_pair(path: SampledPath) -> Result<LinearBasis> {
    let grid = path.grid().to_vec();
    let q1 = path.iter().map(|(_, s)| vec![s[0], s[1]]).collect();
    let q2 = path.iter().map(|(_, s)| vec![s[2], s[3]]).collect();
    LinearBasis::from_paths(SampledPath::new(grid.clone(), q1)?, SampledPath::new(grid, q2)?)
}

/// Canonical fundamental pair on `[t0, t1]`: `q1(t0) = 1, q1_t(t0) = 0`,
/// `q2(t0) = 0, q2_t(t0) = 1`, hence `W = 1`. The grid is the integrator's.
pub fn solve_basis(freq: &FrequencyModel, t0: f64, t1: f64, tol: &ToleranceConfig) -> Result<LinearBasis> {
    freq.check_interval(t0, t1)?;
    split_pair(integrate_ivp(linear_pair_rhs(freq), &CANONICAL_ICS, t0, t1, tol)?)
}

/// Canonical fundamental pair reported on a caller-chosen grid (first point is `t0`).
pub fn solve_basis_on(freq: &FrequencyModel, grid: &[f64], tol: &ToleranceConfig) -> Result<LinearBasis> {
    if grid.len() < 2 {
        return Err(Error::PathTooShort { len: grid.len(), required: 2 });
    }
    freq.check_interval(grid[0], grid[grid.len() - 1])?;
    split_pair(integrate_ivp_at(linear_pair_rhs(freq), &CANONICAL_ICS, grid, tol)?)
}

/// `max_t |W(t) - W(t0)|`.
pub fn wronskian_drift(basis: &LinearBasis) -> f64 {
    basis.wronskian_samples().iter().map(|w| (w - basis.wronskian).abs()).fold(0.0, f64::max)
}

/// Values and derivatives of component 0; derivatives come from component 1 when
/// present, otherwise from central differences.
fn value_and_slope(q: &SampledPath) -> Result<(Vec<f64>, Vec<f64>)> {
    let v = q.component(0);
    if q.dim() >= 2 {
        return Ok((v, q.component(1)));
    }
    let x = q.grid();
    let n = x.len();
    if n < 3 {
        return Err(Error::PathTooShort { len: n, required: 3 });
    }
    let d = (0..n)
        .map(|i| {
            let j = i.clamp(1, n - 2);
            let (d1, d2) = central_derivatives(x[j - 1], x[j], x[j + 1], v[j - 1], v[j], v[j + 1]);
            d1 + d2 * (x[i] - x[j])
        })
        .collect();
    Ok((v, d))
}

/// First zero of a sampled function, refined by bisection on the Hermite
/// interpolant of the bracketing interval.
pub(crate) fn first_zero(grid: &[f64], v: &[f64], d: &[f64]) -> Option<f64> {
    for i in 0..grid.len() {
        if v[i] == 0.0 {
            return Some(grid[i]);
        }
        if i + 1 < grid.len() && v[i].signum() != v[i + 1].signum() && v[i + 1] != 0.0 {
            let (mut lo, mut hi) = (grid[i], grid[i + 1]);
            let f = |t| hermite_cubic(grid[i], grid[i + 1], v[i], v[i + 1], d[i], d[i + 1], t).0;
            let s_lo = v[i].signum();
            for _ in 0..80 {
                let mid = 0.5 * (lo + hi);
                if f(mid).signum() == s_lo {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            return Some(0.5 * (lo + hi));
        }
    }
    None
}

/// `Y(t) = ∫_{t0}^{t} dt' / q²(t')` along the grid of `q`, returned as `(Y, Y_t)`.
///
/// Between samples `q` is replaced by its cubic Hermite interpolant and `1/q²` is
/// integrated with adaptive Gauss-Kronrod quadrature. Fails with `SingularQ` at the
/// first zero of `q`.
pub fn phase_integral(q: &SampledPath, t0: f64) -> Result<SampledPath> {
    let (v, d) = value_and_slope(q)?;
    let grid = q.grid();
    if let Some(t) = first_zero(grid, &v, &d) {
        return Err(Error::SingularQ { t });
    }
    let anchor = q.bracket(t0)?;
    let tol = ToleranceConfig::new(1e-13, 1e-15, 10_000)?;
    let panel = |i: usize, a: f64, b: f64| {
        let (x0, x1) = (grid[i], grid[i + 1]);
        quadrature(
            |t| {
                let h = hermite_cubic(x0, x1, v[i], v[i + 1], d[i], d[i + 1], t).0;
                1.0 / (h * h)
            },
            a,
            b,
            &tol,
        )
    };
    let mut cumulative = Vec::with_capacity(grid.len());
    cumulative.push(0.0);
    for i in 0..grid.len() - 1 {
        let next = cumulative[i] + panel(i, grid[i], grid[i + 1])?;
        cumulative.push(next);
    }
    let offset = cumulative[anchor] + panel(anchor, grid[anchor], t0)?;
    let values = grid.iter().enumerate().map(|(i, _)| vec![cumulative[i] - offset, 1.0 / (v[i] * v[i])]).collect();
    SampledPath::new(grid.to_vec(), values)
}

/// Second solution `q2 = W q1 ∫_{t0}^{t} dt'/q1²` with derivative
/// `q2_t = W (q1_t Y + 1/q1)`.
pub fn reduction_of_order(q1: &SampledPath, w: f64, t0: f64) -> Result<SampledPath> {
    let phase = phase_integral(q1, t0)?;
    let (v, d) = value_and_slope(q1)?;
    let values = (0..q1.len())
        .map(|i| {
            let y = phase.value(i, 0);
            vec![w * v[i] * y, w * (d[i] * y + 1.0 / v[i])]
        })
        .collect();
    SampledPath::new(q1.grid().to_vec(), values)
}

/// Phase integral of `q = a q1 + b q2` through the identity `Y = q2 / (a W q)`,
/// valid for a basis with `q2(t0) = 0`. Returns `(Y, Y_t = 1/q²)` per grid point.
pub fn phase_from_basis(basis: &LinearBasis, coeffs: &SuperpositionCoefficients) -> Result<SampledPath> {
    let start = basis.at(0);
    if start[2] != 0.0 {
        return Err(Error::InvalidParams("basis must satisfy q2(t0) = 0".into()));
    }
    let n = basis.len();
    let q: Vec<f64> = (0..n)
        .map(|i| {
            let s = basis.at(i);
            coeffs.combine(s[0], s[2])
        })
        .collect();
    let qt: Vec<f64> = (0..n)
        .map(|i| {
            let s = basis.at(i);
            coeffs.combine(s[1], s[3])
        })
        .collect();
    if let Some(t) = first_zero(basis.grid(), &q, &qt) {
        return Err(Error::SingularQ { t });
    }
    let aw = coeffs.a * basis.wronskian;
    let values = (0..n).map(|i| vec![basis.at(i)[2] / (aw * q[i]), 1.0 / (q[i] * q[i])]).collect();
    SampledPath::new(basis.grid().to_vec(), values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::uniform_grid;

    fn tight() -> ToleranceConfig {
        ToleranceConfig::new(1e-11, 1e-13, 1_000_000).unwrap()
    }

    #[test]
    fn constant_frequency_basis_is_cos_sin() {
        let basis = solve_basis(&FrequencyModel::constant(1.0), 0.0, 6.0, &tight()).unwrap();
        for i in 0..basis.len() {
            let t = basis.grid()[i];
            let [q1, q1t, q2, q2t] = basis.at(i);
            assert!((q1 - t.cos()).abs() < 1e-8 && (q2 - t.sin()).abs() < 1e-8);
            assert!((q1t + t.sin()).abs() < 1e-8 && (q2t - t.cos()).abs() < 1e-8);
        }
        assert_eq!(basis.wronskian, 1.0);
        assert!(wronskian_drift(&basis) < 1e-8);
    }

    #[test]
    fn zero_frequency_basis_is_exact() {
        let basis = solve_basis(&FrequencyModel::Zero, 0.0, 4.0, &tight()).unwrap();
        for i in 0..basis.len() {
            let t = basis.grid()[i];
            let [q1, q1t, q2, q2t] = basis.at(i);
            assert_eq!((q1, q1t, q2t), (1.0, 0.0, 1.0));
            assert!((q2 - t).abs() < 1e-14);
        }
        assert_eq!(wronskian_drift(&basis), 0.0);
    }

    #[test]
    fn hyperbolic_basis_maps_to_exponentials() {
        // canonical pair for ω² = -1/4 is (cosh(t/2), 2 sinh(t/2)); the exponentials are
        // e^{t/2} = q1 + q2/2 and e^{-t/2} = q1 - q2/2, a map with determinant -1
        let grid = uniform_grid(0.0, 3.0, 61);
        let basis = solve_basis_on(&FrequencyModel::constant(-0.25), &grid, &tight()).unwrap();
        let map = [[1.0, 0.5], [1.0, -0.5]];
        let det = map[0][0] * map[1][1] - map[0][1] * map[1][0];
        assert_eq!(det, -1.0);
        for (i, &t) in grid.iter().enumerate() {
            let [q1, q1t, q2, q2t] = basis.at(i);
            let (e1, e1t) = (map[0][0] * q1 + map[0][1] * q2, map[0][0] * q1t + map[0][1] * q2t);
            let (e2, e2t) = (map[1][0] * q1 + map[1][1] * q2, map[1][0] * q1t + map[1][1] * q2t);
            assert!((e1 - (t / 2.0).exp()).abs() < 1e-8);
            assert!((e2 - (-t / 2.0).exp()).abs() < 1e-8);
            assert!((e1 * e2t - e2 * e1t - det * basis.wronskian).abs() < 1e-8);
        }
    }

    #[test]
    fn drift_grows_with_coarse_tolerance() {
        let freq = FrequencyModel::Polynomial { coeffs: vec![1.0, 0.3, 0.05] };
        let fine = solve_basis(&freq, 0.0, 8.0, &ToleranceConfig::new(1e-10, 1e-12, 100_000).unwrap()).unwrap();
        let coarse = solve_basis(&freq, 0.0, 8.0, &ToleranceConfig::new(1e-3, 1e-3, 100_000).unwrap()).unwrap();
        let (f, c) = (wronskian_drift(&fine), wronskian_drift(&coarse));
        assert!(f < 1e-8, "fine drift {f}");
        assert!(c > f, "coarse {c} <= fine {f}");
    }

    #[test]
    fn tabulated_frequency_is_monotone_and_solvable() {
        let grid = uniform_grid(0.0, 5.0, 11);
        let values: Vec<f64> = grid.iter().map(|t| 1.0 + 0.2 * t).collect();
        let table = TabulatedFrequency::new(grid.clone(), values).unwrap();
        let freq = FrequencyModel::Tabulated(table);
        for t in uniform_grid(0.0, 5.0, 101) {
            assert!((freq.omega_sq(t) - (1.0 + 0.2 * t)).abs() < 1e-12);
        }
        let basis = solve_basis(&freq, 0.0, 5.0, &tight()).unwrap();
        assert!(wronskian_drift(&basis) < 1e-8);
        assert!(matches!(solve_basis(&freq, 0.0, 6.0, &tight()), Err(Error::DomainMismatch(_))));
        let json = serde_json::to_string(&freq).unwrap();
        let back: FrequencyModel = serde_json::from_str(&json).unwrap();
        assert_eq!(back, freq);
    }

    #[test]
    fn tabulated_no_overshoot() {
        let table = TabulatedFrequency::new(vec![0.0, 1.0, 2.0, 3.0], vec![0.0, 0.0, 1.0, 1.0]).unwrap();
        let freq = FrequencyModel::Tabulated(table);
        for t in uniform_grid(0.0, 3.0, 301) {
            let v = freq.omega_sq(t);
            assert!((-1e-15..=1.0 + 1e-15).contains(&v), "overshoot {v} at {t}");
        }
    }

    fn cos_path(a: f64, b: f64, n: usize) -> SampledPath {
        SampledPath::from_fn(uniform_grid(a, b, n), 2, |t| Ok(vec![t.cos(), -t.sin()])).unwrap()
    }

    #[test]
    fn reduction_of_order_recovers_sine() {
        let q2 = reduction_of_order(&cos_path(0.0, 1.4, 1401), 1.0, 0.0).unwrap();
        for (t, s) in q2.iter() {
            assert!((s[0] - t.sin()).abs() < 1e-8, "{t}: {}", s[0]);
            assert!((s[1] - t.cos()).abs() < 1e-8);
        }
        let ones = SampledPath::from_fn(uniform_grid(0.0, 2.0, 21), 2, |_| Ok(vec![1.0, 0.0])).unwrap();
        let line = reduction_of_order(&ones, 1.0, 0.0).unwrap();
        for (t, s) in line.iter() {
            assert!((s[0] - t).abs() < 1e-14);
        }
    }

    #[test]
    fn reduction_of_order_solves_the_ode() {
        let q2 = reduction_of_order(&cos_path(0.0, 1.4, 1401), 1.0, 0.0).unwrap();
        let r = crate::numerics::fd_residual(&q2, |_, y, _, d2| d2 + y).unwrap();
        assert!(crate::numerics::max_residual(&r) < 1e-4);
        for (i, (_, s)) in q2.iter().enumerate() {
            let t = q2.grid()[i];
            let w = t.cos() * s[1] - s[0] * (-t.sin());
            assert!((w - 1.0).abs() < 1e-8);
        }
    }

    #[test]
    fn zero_crossing_is_singular() {
        match reduction_of_order(&cos_path(0.0, 2.0, 201), 1.0, 0.0) {
            Err(Error::SingularQ { t }) => assert!((t - std::f64::consts::FRAC_PI_2).abs() < 1e-6),
            other => panic!("expected SingularQ, got {other:?}"),
        }
    }

    #[test]
    fn phase_integral_of_cosine_is_tangent() {
        let y = phase_integral(&cos_path(0.0, 1.4, 701), 0.0).unwrap();
        for (t, s) in y.iter() {
            assert!((s[0] - t.tan()).abs() < 1e-8);
        }
        let shifted = phase_integral(&cos_path(-0.5, 1.0, 301), 0.25).unwrap();
        for (t, s) in shifted.iter() {
            assert!((s[0] - (t.tan() - 0.25f64.tan())).abs() < 1e-8);
        }
        // value-only input takes slopes from finite differences
        let plain = SampledPath::from_fn(uniform_grid(0.0, 1.0, 11), 1, |_| Ok(vec![1.0])).unwrap();
        let yp = phase_integral(&plain, 0.0).unwrap();
        for (t, s) in yp.iter() {
            assert!((s[0] - t).abs() < 1e-14);
        }
    }

    #[test]
    fn phase_integral_matches_basis_identity() {
        let freq = FrequencyModel::Polynomial { coeffs: vec![0.5, 0.1] };
        let grid = uniform_grid(0.0, 2.0, 2001);
        let basis = solve_basis_on(&freq, &grid, &tight()).unwrap();
        let direct = phase_integral(&basis.q1, 0.0).unwrap();
        let coeffs = SuperpositionCoefficients::new(1.0, 0.0).unwrap();
        let identity = phase_from_basis(&basis, &coeffs).unwrap();
        let mut prev = f64::NEG_INFINITY;
        for (i, t) in grid.iter().enumerate() {
            let (a, b) = (direct.value(i, 0), identity.value(i, 0));
            assert!((a - b).abs() < 1e-7, "{t}: {a} vs {b}");
            assert!(a > prev);
            prev = a;
        }
    }

    #[test]
    fn phase_from_general_superposition() {
        let grid = uniform_grid(0.0, 1.0, 101);
        let basis = solve_basis_on(&FrequencyModel::constant(1.0), &grid, &tight()).unwrap();
        let coeffs = SuperpositionCoefficients::new(2.0, 0.5).unwrap();
        let y = phase_from_basis(&basis, &coeffs).unwrap();
        let q = SampledPath::from_fn(grid.clone(), 2, |t| {
            Ok(vec![2.0 * t.cos() + 0.5 * t.sin(), -2.0 * t.sin() + 0.5 * t.cos()])
        })
        .unwrap();
        let direct = phase_integral(&q, 0.0).unwrap();
        for i in 0..grid.len() {
            assert!((y.value(i, 0) - direct.value(i, 0)).abs() < 1e-8);
        }
    }

    #[test]
    fn coefficients_must_not_both_vanish() {
        assert!(SuperpositionCoefficients::new(0.0, 0.0).is_err());
        assert!(SuperpositionCoefficients::new(0.0, 1.0).is_ok());
    }
}
