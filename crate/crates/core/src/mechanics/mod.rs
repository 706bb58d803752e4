//! Lagrangian and Hamiltonian structure of the Emden-Fowler dynamics, the Reid
//! oscillator Hamiltonian, and the hyperbolic radial oscillator.
//!
//! Charts: `τ = 1/Y` with `ṙ = dr̃/dτ` and momentum `𝔭 = τ² ṙ = −r̃_Y`. With
//! `c = αW^(m−2)/(m−1)`:
//!
//! ```text
//! L_τ = (τ^−2/2) [τ⁴ ṙ² − c τ^−(m−2) r̃^(2−2m)]      H_τ = (τ^−2/2) [𝔭² + c τ^−(m−2) r̃^(2−2m)]
//! L_Y = (Y²/2) [r̃_Y² − c Y^(m−2) r̃^(2−2m)]          H_Y = (Y²/2) [𝔭² + c Y^(m−2) r̃^(2−2m)]
//! ```
//!
//! The canonical invariant `τ³ṙ² + τ²ṙ r̃ + c τ^(1−m) r̃^(2−2m)` is `2 I` for the
//! ½-normalized `I` of [`crate::invariant::el_invariant_ef`].

mod kepler;
mod reid_hamiltonian;

pub use kepler::{radial_acceleration, radial_energy, radial_invariant, radial_solution, KeplerParams, RadialEnergy};
pub use reid_hamiltonian::{poisson_conservation_check, reid_hamiltonian, LinearFrame};

use serde::{Deserialize, Serialize};

use crate::emden_fowler::EFState;
use crate::error::{Error, Result};
use crate::numerics::finite_diff::central_derivatives;
use crate::numerics::SampledPath;
use crate::reid::ReidParams;

/// Relative step of the central-difference probes.
pub(crate) const FD_STEP: f64 = 1e-6;

/// `(f(x + h) − f(x − h)) / 2h` with `h = FD_STEP · max(|x|, 1)`.
pub(crate) fn central_partial(mut f: impl FnMut(f64) -> Result<f64>, x: f64) -> Result<f64> {
    let h = FD_STEP * x.abs().max(1.0);
    Ok((f(x + h)? - f(x - h)?) / (2.0 * h))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Chart {
    Tau,
    Y,
    Physical,
}

/// Coordinate, conjugate momentum and independent variable in one chart.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CanonicalState {
    pub coordinate: f64,
    pub momentum: f64,
    pub independent_var: f64,
    pub chart: Chart,
}

impl CanonicalState {
    /// `Y`-chart state with `𝔭 = −r̃_Y`.
    pub fn from_ef(state: &EFState) -> Self {
        Self { coordinate: state.rtilde, momentum: -state.rtilde_y, independent_var: state.y, chart: Chart::Y }
    }

    /// The same point in the other of the `τ`/`Y` charts; `𝔭` is shared.
    pub fn switch_chart(&self) -> Result<Self> {
        let chart = match self.chart {
            Chart::Tau => Chart::Y,
            Chart::Y => Chart::Tau,
            Chart::Physical => return Err(Error::Unsupported("physical chart has no reciprocal".into())),
        };
        if !(self.independent_var > 0.0) {
            return Err(Error::NonpositiveTau { tau: self.independent_var });
        }
        Ok(Self { independent_var: 1.0 / self.independent_var, chart, ..*self })
    }
}

fn check_tau(tau: f64, rtilde: f64) -> Result<()> {
    if !(tau > 0.0) {
        return Err(Error::NonpositiveTau { tau });
    }
    if !(rtilde > 0.0) {
        return Err(Error::SingularRtilde { rtilde });
    }
    Ok(())
}

fn check_y(y: f64, rtilde: f64) -> Result<()> {
    if !(y > 0.0) {
        return Err(Error::NonpositiveY { y });
    }
    if !(rtilde > 0.0) {
        return Err(Error::SingularRtilde { rtilde });
    }
    Ok(())
}

/// `c τ^−(m−2) r̃^(2−2m)`
fn potential_tau(tau: f64, rtilde: f64, params: &ReidParams, w: f64) -> f64 {
    let m = params.mi();
    params.reduced_coupling(w) * tau.powi(2 - m) * rtilde.powi(2 - 2 * m)
}

pub fn lagrangian_tau(tau: f64, rtilde: f64, rtilde_dot: f64, params: &ReidParams, w: f64) -> Result<f64> {
    check_tau(tau, rtilde)?;
    let tau2 = tau * tau;
    Ok(0.5 / tau2 * (tau2 * tau2 * rtilde_dot * rtilde_dot - potential_tau(tau, rtilde, params, w)))
}

pub fn hamiltonian_tau(tau: f64, p: f64, rtilde: f64, params: &ReidParams, w: f64) -> Result<f64> {
    check_tau(tau, rtilde)?;
    Ok(0.5 / (tau * tau) * (p * p + potential_tau(tau, rtilde, params, w)))
}

/// `𝔭 = ∂L_τ/∂ṙ = τ² ṙ`
pub fn momentum_tau(tau: f64, rtilde_dot: f64) -> f64 {
    tau * tau * rtilde_dot
}

/// `c Y^(m−2) r̃^(2−2m)`
fn potential_y(y: f64, rtilde: f64, params: &ReidParams, w: f64) -> f64 {
    let m = params.mi();
    params.reduced_coupling(w) * y.powi(m - 2) * rtilde.powi(2 - 2 * m)
}

pub fn lagrangian_y(y: f64, rtilde: f64, rtilde_y: f64, params: &ReidParams, w: f64) -> Result<f64> {
    check_y(y, rtilde)?;
    Ok(0.5 * y * y * (rtilde_y * rtilde_y - potential_y(y, rtilde, params, w)))
}

pub fn hamiltonian_y(y: f64, p: f64, rtilde: f64, params: &ReidParams, w: f64) -> Result<f64> {
    check_y(y, rtilde)?;
    Ok(0.5 * y * y * (p * p + potential_y(y, rtilde, params, w)))
}

/// `|H_τ(𝔭) − (𝔭 ṙ − L_τ)|` at `𝔭 = ∂L_τ/∂ṙ`.
pub fn legendre_gap_tau(tau: f64, rtilde: f64, rtilde_dot: f64, params: &ReidParams, w: f64) -> Result<f64> {
    let p = momentum_tau(tau, rtilde_dot);
    let h = hamiltonian_tau(tau, p, rtilde, params, w)?;
    Ok((h - (p * rtilde_dot - lagrangian_tau(tau, rtilde, rtilde_dot, params, w)?)).abs())
}

/// `|H_Y(𝔭) − (𝔭 ṙ − L_Y)|` with `𝔭 = −r̃_Y` and `ṙ = −Y² r̃_Y`.
pub fn legendre_gap_y(y: f64, rtilde: f64, rtilde_y: f64, params: &ReidParams, w: f64) -> Result<f64> {
    let p = -rtilde_y;
    let rtilde_dot = -y * y * rtilde_y;
    let h = hamiltonian_y(y, p, rtilde, params, w)?;
    Ok((h - (p * rtilde_dot - lagrangian_y(y, rtilde, rtilde_y, params, w)?)).abs())
}

/// `τ³ṙ² + τ²ṙ r̃ + (αW^(m−2)/(m−1)) τ^(1−m) r̃^(2−2m)`
pub fn invariant_canonical(tau: f64, rtilde: f64, rtilde_dot: f64, params: &ReidParams, w: f64) -> Result<f64> {
    check_tau(tau, rtilde)?;
    let tau2 = tau * tau;
    Ok(tau2 * tau * rtilde_dot * rtilde_dot + tau2 * rtilde_dot * rtilde + potential_tau(tau, rtilde, params, w) / tau)
}

/// Euler-Lagrange residual `|d/dτ ∂L/∂ṙ − ∂L/∂r̃|` of [`lagrangian_tau`] along
/// `path = (r̃, ṙ)` over `τ`, with both partials taken by central differences.
pub fn euler_lagrange_residual(path: &SampledPath, params: &ReidParams, w: f64) -> Result<Vec<f64>> {
    const MIN_POINTS: usize = 5;
    if path.len() < MIN_POINTS {
        return Err(Error::PathTooShort { len: path.len(), required: MIN_POINTS });
    }
    if path.dim() < 2 {
        return Err(Error::InvalidPath("path must carry (rtilde, rtilde_dot)".into()));
    }
    let grid = path.grid();
    let mut momentum = Vec::with_capacity(path.len());
    let mut force = Vec::with_capacity(path.len());
    for (tau, s) in path.iter() {
        momentum.push(central_partial(|v| lagrangian_tau(tau, s[0], v, params, w), s[1])?);
        force.push(central_partial(|r| lagrangian_tau(tau, r, s[1], params, w), s[0])?);
    }
    Ok((1..grid.len() - 1)
        .map(|i| {
            let (dp, _) =
                central_derivatives(grid[i - 1], grid[i], grid[i + 1], momentum[i - 1], momentum[i], momentum[i + 1]);
            (dp - force[i]).abs()
        })
        .collect())
}

/// Hamilton's equations of [`hamiltonian_y`] with `Y` as evolution variable:
/// `dr̃/dY = −Y^−2 ∂H_Y/∂𝔭`, `d𝔭/dY = Y^−2 ∂H_Y/∂r̃`, partials by central differences.
pub fn hamilton_flow_y(y: f64, rtilde: f64, p: f64, params: &ReidParams, w: f64) -> Result<(f64, f64)> {
    check_y(y, rtilde)?;
    let dh_dp = central_partial(|v| hamiltonian_y(y, v, rtilde, params, w), p)?;
    let dh_dr = central_partial(|v| hamiltonian_y(y, p, v, params, w), rtilde)?;
    let inv = 1.0 / (y * y);
    Ok((-dh_dp * inv, dh_dr * inv))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::emden_fowler::{ef_residual, EfSolution, ReidFormula};
    use crate::invariant::el_invariant_ef;
    use crate::numerics::{integrate_ivp_at, max_residual, uniform_grid, ToleranceConfig};
    use crate::reid::pinney_general;

    fn params(m: u32, alpha: f64) -> ReidParams {
        ReidParams::new(m, alpha).unwrap()
    }

    #[test]
    fn unit_point_values() {
        let p = params(2, 1.0);
        assert_eq!(lagrangian_tau(1.0, 1.0, 0.0, &p, 1.0).unwrap(), -0.5);
        assert_eq!(hamiltonian_tau(1.0, 0.0, 1.0, &p, 1.0).unwrap(), 0.5);
        assert_eq!(lagrangian_y(1.0, 1.0, 0.0, &p, 1.0).unwrap(), -0.5);
        assert_eq!(hamiltonian_y(1.0, 0.0, 1.0, &p, 1.0).unwrap(), 0.5);
        for m in 2..=5 {
            let p = params(m, 1.3);
            let expected = 1.3 / (m - 1) as f64;
            assert!((invariant_canonical(1.0, 1.0, 0.0, &p, 1.0).unwrap() - expected).abs() < 1e-15);
        }
        assert!(matches!(lagrangian_tau(0.0, 1.0, 0.0, &p, 1.0), Err(Error::NonpositiveTau { .. })));
        assert!(matches!(hamiltonian_tau(1.0, 0.0, -1.0, &p, 1.0), Err(Error::SingularRtilde { .. })));
    }

    #[test]
    fn kinetic_limit() {
        // a tiny coupling leaves the kinetic term
        let p = params(3, 1e-300);
        let l = lagrangian_tau(2.0, 1.0, 0.7, &p, 1.0).unwrap();
        assert!((l - 0.5 * 4.0 * 0.49).abs() < 1e-15);
        let h = hamiltonian_y(2.0, 0.3, 1.0, &p, 1.0).unwrap();
        assert!((h - 0.5 * 4.0 * 0.09).abs() < 1e-15);
    }

    #[test]
    fn legendre_and_chart_identities() {
        let mut x = 0.377_f64;
        let mut next = move || {
            x = (x * 3.7 + 0.1234).fract();
            x
        };
        for _ in 0..300 {
            let m = 2 + (next() * 4.0) as u32;
            let p = params(m, next() * 4.0 - 2.0);
            let w = if next() < 0.5 { -1.3 } else { 0.8 };
            let (tau, r, rdot) = (0.2 + 3.0 * next(), 0.3 + 2.0 * next(), 2.0 * next() - 1.0);
            assert!(legendre_gap_tau(tau, r, rdot, &p, w).unwrap() < 1e-12);
            let y = 1.0 / tau;
            let r_y = -tau * tau * rdot;
            assert!(legendre_gap_y(y, r, r_y, &p, w).unwrap() < 1e-12);

            let mom = momentum_tau(tau, rdot);
            let ht = hamiltonian_tau(tau, mom, r, &p, w).unwrap();
            let hy = hamiltonian_y(y, -r_y, r, &p, w).unwrap();
            assert!((ht - hy).abs() < 1e-12 * ht.abs().max(1.0));
            let lt = lagrangian_tau(tau, r, rdot, &p, w).unwrap();
            let ly = lagrangian_y(y, r, r_y, &p, w).unwrap();
            assert!((lt - ly).abs() < 1e-12 * lt.abs().max(1.0));

            let canonical = invariant_canonical(tau, r, rdot, &p, w).unwrap();
            let ef = el_invariant_ef(r, r_y, y, &p, w).unwrap();
            assert!((canonical - 2.0 * ef).abs() < 1e-10 * canonical.abs().max(1.0));
        }
    }

    #[test]
    fn canonical_invariant_conserved_in_tau() {
        let p = params(2, 1.0);
        let sol = pinney_general((2.0, 1.0, 1.0), &p, 1.0).unwrap();
        for tau in uniform_grid(0.3, 5.0, 40) {
            let (r, r_y) = sol.eval(1.0 / tau).unwrap();
            let rdot = -r_y / (tau * tau);
            assert!((invariant_canonical(tau, r, rdot, &p, 1.0).unwrap() + 1.0).abs() < 1e-7);
        }
    }

    #[test]
    fn euler_lagrange_along_exact_solution() {
        for (m, alpha) in [(2, 1.0), (3, 1.0), (4, 0.5)] {
            let p = params(m, alpha);
            let sol = ReidFormula { params: p, w: 1.0 };
            let tau = uniform_grid(0.5, 3.0, 2501);
            let path = SampledPath::from_fn(tau, 2, |tau| {
                let (r, r_y) = sol.eval(1.0 / tau)?;
                Ok(vec![r, -r_y / (tau * tau)])
            })
            .unwrap();
            let res = euler_lagrange_residual(&path, &p, 1.0).unwrap();
            assert!(max_residual(&res) < 1e-4, "m={m}: {}", max_residual(&res));
        }
        // a non-solution is detected
        let p = params(3, 1.0);
        let bad = SampledPath::from_fn(uniform_grid(0.5, 3.0, 101), 2, |t| Ok(vec![t, 1.0])).unwrap();
        assert!(max_residual(&euler_lagrange_residual(&bad, &p, 1.0).unwrap()) > 1e-2);
    }

    #[test]
    fn hamilton_flow_reproduces_emden_fowler() {
        let tol = ToleranceConfig::new(1e-11, 1e-13, 100_000).unwrap();
        for (m, alpha) in [(2, 1.0), (3, 1.0), (5, 0.4)] {
            let p = params(m, alpha);
            let grid = uniform_grid(0.5, 2.5, 2001);
            let y0 = [1.0, 0.3];
            let path = integrate_ivp_at(
                |y, s, d| {
                    let (dr, dp) = hamilton_flow_y(y, s[0], s[1], &p, 1.0).unwrap_or((f64::NAN, f64::NAN));
                    d[0] = dr;
                    d[1] = dp;
                },
                &y0,
                &grid,
                &tol,
            )
            .unwrap();
            assert!(max_residual(&ef_residual(&path, &p, 1.0).unwrap()) < 1e-4, "m={m}");
        }
    }

    #[test]
    fn canonical_state_charts() {
        let s = CanonicalState::from_ef(&EFState { y: 2.0, rtilde: 1.0, rtilde_y: 0.4 });
        assert_eq!(s.momentum, -0.4);
        let t = s.switch_chart().unwrap();
        assert_eq!((t.independent_var, t.chart), (0.5, Chart::Tau));
        assert_eq!(t.switch_chart().unwrap(), s);
    }
}
