use serde::{Deserialize, Serialize};

use super::p_polynomial;
use crate::error::{Error, Result};
use crate::numerics::{cumulative_quadrature, uniform_grid, SampledPath, ToleranceConfig};
use crate::reid::ReidParams;

/// Smallest admissible `P(Q̃)` on the quadrature range.
pub const P_MIN: f64 = 1e-10;

/// Sign of `dη/dQ̃ = ±P^(−1/2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    Plus,
    Minus,
}

impl Branch {
    pub fn sign(self) -> f64 {
        match self {
            Branch::Plus => 1.0,
            Branch::Minus => -1.0,
        }
    }
}

impl std::str::FromStr for Branch {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "+" | "plus" => Ok(Branch::Plus),
            "-" | "minus" => Ok(Branch::Minus),
            _ => Err(Error::InvalidParams(format!("branch must be '+' or '-', got '{s}'"))),
        }
    }
}

/// Emden-Fowler solution parametrized by `Q̃` at fixed invariant `I`.
///
/// With `F(Q̃) = ∫_lo^Q̃ P^(−1/2)` and `s` the branch sign,
/// `Y = e^(−sF)/τ0`, `r̃ = (Q̃/√τ0) e^(−sF/2)` and `Q̃_η = s√P`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ParametricSolution {
    pub qtilde_grid: Vec<f64>,
    pub y: Vec<f64>,
    pub rtilde: Vec<f64>,
    pub rtilde_y: Vec<f64>,
    pub branch: Branch,
    pub tau0: f64,
    pub invariant: f64,
}

impl ParametricSolution {
    pub fn len(&self) -> usize {
        self.qtilde_grid.len()
    }

    pub fn is_empty(&self) -> bool {
        self.qtilde_grid.is_empty()
    }

    /// `|r̃ − Q̃ √Y|` per grid point.
    pub fn sqrt_identity_errors(&self) -> Vec<f64> {
        (0..self.len()).map(|i| (self.rtilde[i] - self.qtilde_grid[i] * self.y[i].sqrt()).abs()).collect()
    }

    /// `(r̃, r̃_Y)` over increasing `Y`.
    pub fn ef_path(&self) -> Result<SampledPath> {
        let mut idx: Vec<usize> = (0..self.len()).collect();
        if self.branch == Branch::Plus {
            idx.reverse();
        }
        let grid = idx.iter().map(|&i| self.y[i]).collect();
        let values = idx.iter().map(|&i| vec![self.rtilde[i], self.rtilde_y[i]]).collect();
        SampledPath::new(grid, values)
    }
}

/// Tabulates the parametric solution on `n` uniform `Q̃` nodes in `q_range`.
///
/// The lower limit of `F` is the left end of the range; `τ0` absorbs the constant.
pub fn parametric_solution(
    params: &ReidParams,
    w: f64,
    invariant: f64,
    q_range: (f64, f64),
    branch: Branch,
    tau0: f64,
    n: usize,
) -> Result<ParametricSolution> {
    let (lo, hi) = q_range;
    if !(lo > 0.0 && hi > lo && hi.is_finite()) {
        return Err(Error::InvalidParams(format!("Q range must satisfy 0 < lo < hi, got [{lo}, {hi}]")));
    }
    if !(tau0 > 0.0 && tau0.is_finite()) {
        return Err(Error::NonpositiveTau { tau: tau0 });
    }
    if n < 2 {
        return Err(Error::PathTooShort { len: n, required: 2 });
    }
    if !invariant.is_finite() {
        return Err(Error::InvalidParams("invariant must be finite".into()));
    }
    let p = |q: f64| p_polynomial(q, params, w, invariant);
    let grid = uniform_grid(lo, hi, n);
    if let Some(&q) = grid.iter().find(|&&q| !(p(q) > P_MIN)) {
        return Err(Error::NonpositiveP { q, p: p(q) });
    }
    let tol = ToleranceConfig::new(1e-13, 1e-15, 10_000)?;
    let f = cumulative_quadrature(|q| p(q).powf(-0.5), &grid, &tol).map_err(|e| match e {
        Error::NonFiniteIntegrand { x } => Error::NonpositiveP { q: x, p: p(x) },
        other => other,
    })?;

    let s = branch.sign();
    let root_tau0 = tau0.sqrt();
    let mut y = Vec::with_capacity(n);
    let mut rtilde = Vec::with_capacity(n);
    let mut rtilde_y = Vec::with_capacity(n);
    for (&q, &fk) in grid.iter().zip(&f) {
        let yk = (-s * fk).exp() / tau0;
        let rk = q / root_tau0 * (-0.5 * s * fk).exp();
        let q_eta = s * p(q).sqrt();
        y.push(yk);
        rtilde.push(rk);
        rtilde_y.push((0.5 * q - q_eta) / yk.sqrt());
    }
    Ok(ParametricSolution { qtilde_grid: grid, y, rtilde, rtilde_y, branch, tau0, invariant })
}
