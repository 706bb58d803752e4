//! Coordinate chain `t ↔ Y ↔ τ ↔ η` for the Emden-Fowler equation
//!
//! ```text
//! r̃_YY = α W^(m−2) Y^(m−2) r̃^(1−2m)
//! ```
//!
//! Charts and derivative transforms:
//!
//! ```text
//! r̃ = q̃ / q,         r̃_Y = q q̃_t − q̃ q_t          (Y_t = 1/q²)
//! τ = 1/Y = e^η,      Q̃ = r̃ √τ = r̃ / √Y
//! Q̃_η = −√Y r̃_Y + ½ r̃ / √Y                        (dY/dη = −Y)
//! r̃_Y = (½ Q̃ − Q̃_η) e^(η/2)
//! ```
//!
//! In the hyperbolic chart the equation becomes the constant-frequency Reid
//! equation `Q̃_ηη = ¼ Q̃ + α W^(m−2) Q̃^(1−2m)`.

mod abel;
mod parametric;

pub use abel::{abel_chain, abel_relation_residual, AbelChainState, AbelFit};
pub use parametric::{parametric_solution, Branch, ParametricSolution, P_MIN};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linear::LinearBasis;
use crate::numerics::{fd_residual, SampledPath};
use crate::reid::ReidParams;

/// A point of an Emden-Fowler trajectory.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EFState {
    pub y: f64,
    pub rtilde: f64,
    pub rtilde_y: f64,
}

/// A point in the hyperbolic chart, `τ = e^η = 1/Y`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HyperbolicState {
    pub eta: f64,
    pub qtilde: f64,
    pub qtilde_eta: f64,
}

/// A closed-form solution `r̃(Y)` of the Emden-Fowler equation.
pub trait EfSolution {
    /// `(r̃, r̃_Y)` at `y`.
    fn eval(&self, y: f64) -> Result<(f64, f64)>;

    /// `(r̃, r̃_Y)` on `grid`.
    fn sample(&self, grid: &[f64]) -> Result<SampledPath> {
        SampledPath::from_fn(grid.to_vec(), 2, |y| {
            let (r, dr) = self.eval(y)?;
            Ok(vec![r, dr])
        })
    }

    fn state(&self, y: f64) -> Result<EFState> {
        let (rtilde, rtilde_y) = self.eval(y)?;
        Ok(EFState { y, rtilde, rtilde_y })
    }
}

/// Emden-Fowler state of a physical sample `(q, q_t, q̃, q̃_t)` at phase `Y`.
pub fn to_ef(sample: [f64; 4], y: f64) -> Result<EFState> {
    let [q, q_t, qtilde, qtilde_t] = sample;
    if q == 0.0 {
        return Err(Error::SingularQ { t: f64::NAN });
    }
    Ok(EFState { y, rtilde: qtilde / q, rtilde_y: q * qtilde_t - qtilde * q_t })
}

/// Pointwise `|r̃_YY − α W^(m−2) Y^(m−2) r̃^(1−2m)|` for `path = (r̃, ...)` over `Y`.
pub fn ef_residual(path: &SampledPath, params: &ReidParams, w: f64) -> Result<Vec<f64>> {
    if let Some((_, s)) = path.iter().find(|(_, s)| !(s[0] > 0.0)) {
        return Err(Error::SingularRtilde { rtilde: s[0] });
    }
    let m = params.mi();
    let k = params.ef_coupling(w);
    fd_residual(path, |y, r, _, d2| d2 - k * y.powi(m - 2) * r.powi(1 - 2 * m))
}

/// Pointwise `|Q̃_ηη − ¼ Q̃ − α W^(m−2) Q̃^(1−2m)|` for `path = (Q̃, ...)` over `η`.
pub fn hyperbolic_residual(path: &SampledPath, params: &ReidParams, w: f64) -> Result<Vec<f64>> {
    if let Some((_, s)) = path.iter().find(|(_, s)| !(s[0] > 0.0)) {
        return Err(Error::SingularQtilde { t: s[0] });
    }
    let m = params.mi();
    let k = params.ef_coupling(w);
    fd_residual(path, |_, q, _, d2| d2 - 0.25 * q - k * q.powi(1 - 2 * m))
}

pub fn ef_to_hyperbolic(state: &EFState) -> Result<HyperbolicState> {
    let EFState { y, rtilde, rtilde_y } = *state;
    if !(y > 0.0) {
        return Err(Error::NonpositiveY { y });
    }
    let s = y.sqrt();
    Ok(HyperbolicState { eta: -y.ln(), qtilde: rtilde / s, qtilde_eta: -s * rtilde_y + 0.5 * rtilde / s })
}

pub fn hyperbolic_to_ef(state: &HyperbolicState) -> EFState {
    let HyperbolicState { eta, qtilde, qtilde_eta } = *state;
    let half = (0.5 * eta).exp();
    EFState { y: (-eta).exp(), rtilde: qtilde / half, rtilde_y: (0.5 * qtilde - qtilde_eta) * half }
}

/// `Q̃(η) = (e^(mη/2) + (αW^(m−2)/(m−1)) e^(−mη/2))^(1/m)` with its η-derivative.
pub fn hyperbolic_solution(eta: f64, params: &ReidParams, w: f64) -> Result<HyperbolicState> {
    let m = params.m() as f64;
    let c = params.reduced_coupling(w);
    let (grow, decay) = ((0.5 * m * eta).exp(), (-0.5 * m * eta).exp());
    let radicand = grow + c * decay;
    if !(radicand > 0.0) {
        return Err(Error::NegativeRadicand { at: eta, radicand });
    }
    let qtilde = radicand.powf(1.0 / m);
    let qtilde_eta = 0.5 * qtilde * (grow - c * decay) / radicand;
    Ok(HyperbolicState { eta, qtilde, qtilde_eta })
}

/// `P(Q̃) = ¼ Q̃² − (αW^(m−2)/(m−1)) Q̃^(2−2m) + 2I`, so that `Q̃_η² = P(Q̃)`.
pub fn p_polynomial(qtilde: f64, params: &ReidParams, w: f64, invariant: f64) -> f64 {
    let c = params.reduced_coupling(w);
    0.25 * qtilde * qtilde - c * qtilde.powi(2 - 2 * params.mi()) + 2.0 * invariant
}

/// Reid's formula pulled back to the Emden-Fowler chart,
/// `r̃(Y) = √Y (Y^(−m/2) + (αW^(m−2)/(m−1)) Y^(m/2))^(1/m)`, evaluated through
/// the hyperbolic solution at `η = −ln Y`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReidFormula {
    pub params: ReidParams,
    pub w: f64,
}

impl EfSolution for ReidFormula {
    fn eval(&self, y: f64) -> Result<(f64, f64)> {
        if !(y > 0.0) {
            return Err(Error::NonpositiveY { y });
        }
        let h = hyperbolic_solution(-y.ln(), &self.params, self.w).map_err(|e| match e {
            Error::NegativeRadicand { radicand, .. } => Error::NegativeRadicand { at: y, radicand },
            other => other,
        })?;
        let s = y.sqrt();
        Ok((h.qtilde * s, (0.5 * h.qtilde - h.qtilde_eta) / s))
    }
}

/// `(r̃, r̃_Y)` of Reid's formula on a positive `Y` grid.
pub fn reid_recovery(params: &ReidParams, w: f64, y_grid: &[f64]) -> Result<SampledPath> {
    ReidFormula { params: *params, w }.sample(y_grid)
}

/// Reid's formula in physical time, `q̃ = q1 r̃(Y)` with `Y = q2 / (W q1)`, as
/// `(q̃, q̃_t)` on the basis grid points where `q1 > 0` and `Y > 0`. The dropped
/// points are the anchor `q2 = 0` and the half-periods where the chart is not
/// defined.
pub fn reid_recovery_physical(params: &ReidParams, basis: &LinearBasis) -> Result<SampledPath> {
    let w = basis.wronskian;
    let formula = ReidFormula { params: *params, w };
    let mut grid = Vec::new();
    let mut values = Vec::new();
    for (i, &t) in basis.grid().iter().enumerate() {
        let [q1, q1t, q2, _] = basis.at(i);
        let y = q2 / (w * q1);
        if !(q1 > 0.0 && y > 0.0) {
            continue;
        }
        let (r, r_y) = formula.eval(y)?;
        // Y_t = 1/q1² for Y = q2/(W q1)
        grid.push(t);
        values.push(vec![q1 * r, q1t * r + r_y / q1]);
    }
    SampledPath::new(grid, values)
}
