use serde::Serialize;

use super::EFState;
use crate::error::{Error, Result};
use crate::reid::ReidParams;

/// `u` closer than this to ½ counts as the degenerate value.
const DEGENERATE_U: f64 = 1e-12;

/// Abel chain variables at one point of an Emden-Fowler trajectory:
/// `z = (Y/r̃²)^m`, `u = Y r̃_Y / r̃`, `v = 1/(u − ½)`, `φ = v^(−2) = (u − ½)²`.
///
/// `u` satisfies the Abel equation `(u − ½) u_z = (u² − u)/(2mz) − αW^(m−2)/(2m)`,
/// `v` the Bernoulli equation it turns into, and `φ` the linear equation solved by
/// `φ = (αW^(m−2)/(1−m)) z + K z^(1/m) + ¼`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AbelChainState {
    pub z: f64,
    pub u: f64,
    /// `None` where `u = ½`.
    pub v: Option<f64>,
    pub phi: f64,
}

/// Chain states along a path and the least-squares integration constant.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AbelFit {
    pub states: Vec<AbelChainState>,
    /// The constant `K` of the linear solution.
    pub constant: f64,
    /// `K / 2`, the ½-normalized invariant.
    pub invariant: f64,
    /// `max |φ − (αW^(m−2)/(1−m)) z − K z^(1/m) − ¼|`
    pub max_relation_residual: f64,
}

fn chain_state(s: &EFState, m: i32) -> Result<(AbelChainState, f64)> {
    if !(s.y > 0.0) {
        return Err(Error::NonpositiveY { y: s.y });
    }
    if !(s.rtilde > 0.0) {
        return Err(Error::SingularRtilde { rtilde: s.rtilde });
    }
    // b = z^(1/m), kept exact instead of taking a root
    let b = s.y / (s.rtilde * s.rtilde);
    let u = s.y * s.rtilde_y / s.rtilde;
    let d = u - 0.5;
    let v = (d != 0.0).then(|| 1.0 / d);
    Ok((AbelChainState { z: b.powi(m), u, v, phi: d * d }, b))
}

/// Per state: `φ − (αW^(m−2)/(1−m)) z − ¼` and `z^(1/m)`.
type LinearParts = Vec<(f64, f64)>;

fn linear_parts(path: &[EFState], params: &ReidParams, w: f64) -> Result<(Vec<AbelChainState>, LinearParts)> {
    let c = params.reduced_coupling(w);
    let mut states = Vec::with_capacity(path.len());
    let mut parts = Vec::with_capacity(path.len());
    for s in path {
        let (state, b) = chain_state(s, params.mi())?;
        parts.push((state.phi + c * state.z - 0.25, b));
        states.push(state);
    }
    Ok((states, parts))
}

/// Maps an Emden-Fowler path through the Abel chain and fits `K` in
/// `φ − (αW^(m−2)/(1−m)) z − ¼ = K z^(1/m)` by least squares. `K = 2I`.
///
/// Fails with `DegenerateU` only when `u = ½` at every point: that is the
/// Polyanin ray `r̃ ∝ √Y`, where the chain carries no information. Isolated
/// crossings of `u = ½` only leave `v` undefined there.
pub fn abel_chain(path: &[EFState], params: &ReidParams, w: f64) -> Result<AbelFit> {
    if path.is_empty() {
        return Err(Error::PathTooShort { len: 0, required: 1 });
    }
    let (states, parts) = linear_parts(path, params, w)?;
    if states.iter().all(|s| (s.u - 0.5).abs() < DEGENERATE_U) {
        return Err(Error::DegenerateU);
    }
    let (num, den) = parts.iter().fold((0.0, 0.0), |(n, d), &(g, b)| (n + g * b, d + b * b));
    let constant = num / den;
    let max_relation_residual = parts.iter().map(|&(g, b)| (g - constant * b).abs()).fold(0.0, f64::max);
    Ok(AbelFit { states, constant, invariant: 0.5 * constant, max_relation_residual })
}

/// Pointwise `|φ − (αW^(m−2)/(1−m)) z − 2I z^(1/m) − ¼|` for a given invariant `I`.
pub fn abel_relation_residual(path: &[EFState], params: &ReidParams, w: f64, invariant: f64) -> Result<Vec<f64>> {
    let (_, parts) = linear_parts(path, params, w)?;
    Ok(parts.iter().map(|&(g, b)| (g - 2.0 * invariant * b).abs()).collect())
}
