use super::central_partial;
use crate::error::{Error, Result};
use crate::invariant::{el_invariant_higher_physical, locate};
use crate::linear::{phase_from_basis, FrequencyModel};
use crate::reid::{ReidParams, ReidTrajectory};

/// The linear solution seen by the nonlinear oscillator at one instant:
/// `q`, its phase `Y = ∫dt/q²` and the Wronskian `W`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearFrame {
    pub q: f64,
    pub y: f64,
    pub w: f64,
}

/// `H_R = ½[p̃² + ω²(t) q̃² + α (q² W Y)^(m−2) q̃^(2−2m) / (m−1)]`.
///
/// For `q = a q1` and `Y` anchored where `q2 = 0`, `q² W Y = q1 q2`, so Hamilton's
/// equations reproduce the Reid equation.
pub fn reid_hamiltonian(
    t: f64,
    qtilde: f64,
    p: f64,
    frame: LinearFrame,
    params: &ReidParams,
    freq: &FrequencyModel,
) -> Result<f64> {
    if !(qtilde > 0.0) {
        return Err(Error::SingularQtilde { t });
    }
    let m = params.mi();
    let LinearFrame { q, y, w } = frame;
    let nonlinear = params.alpha() * (q * q * w * y).powi(m - 2) * qtilde.powi(2 - 2 * m) / (m - 1) as f64;
    Ok(0.5 * (p * p + freq.omega_sq(t) * qtilde * qtilde + nonlinear))
}

/// `max |dI/dt|` over the trajectory, with `dI/dt = ∂I/∂t + {I, H_R}` assembled
/// from central-difference partials of the order-`m` invariant `I(q, q_t, Y; q̃, p̃)`
/// and of `H_R`:
///
/// ```text
/// ∂I/∂t   = I_q q_t − I_(q_t) ω² q + I_Y / q²
/// {I, H}  = I_q̃ H_p̃ − I_p̃ H_q̃
/// ```
///
/// The identity holds at every phase point, not only on the simulated curve. The
/// anchor point `Y = 0` is skipped.
pub fn poisson_conservation_check(traj: &ReidTrajectory) -> Result<f64> {
    let params = &traj.params;
    let w = traj.basis.wronskian;
    let phase = phase_from_basis(&traj.basis, &traj.coeffs)?;
    let mut worst: f64 = 0.0;
    for (i, &t) in traj.grid().iter().enumerate() {
        let y = phase.value(i, 0);
        if y == 0.0 {
            continue;
        }
        let [q, q_t, qt, pt] = traj.state(i);
        if q == 0.0 {
            return Err(Error::SingularQ { t });
        }
        let omega_sq = traj.freq.omega_sq(t);
        let inv =
            |q: f64, q_t: f64, y: f64, qt: f64, pt: f64| el_invariant_higher_physical([q, q_t, qt, pt], y, params, w);
        let ham = |qt: f64, pt: f64| reid_hamiltonian(t, qt, pt, LinearFrame { q, y, w }, params, &traj.freq);

        let rate = (|| -> Result<f64> {
            let i_q = central_partial(|v| inv(v, q_t, y, qt, pt), q)?;
            let i_qt = central_partial(|v| inv(q, v, y, qt, pt), q_t)?;
            let i_y = central_partial(|v| inv(q, q_t, v, qt, pt), y)?;
            let i_qtilde = central_partial(|v| inv(q, q_t, y, v, pt), qt)?;
            let i_p = central_partial(|v| inv(q, q_t, y, qt, v), pt)?;
            let h_qtilde = central_partial(|v| ham(v, pt), qt)?;
            let h_p = central_partial(|v| ham(qt, v), pt)?;
            let explicit = i_q * q_t - i_qt * omega_sq * q + i_y / (q * q);
            Ok(explicit + i_qtilde * h_p - i_p * h_qtilde)
        })()
        .map_err(|e| locate(e, t))?;
        worst = worst.max(rate.abs());
    }
    Ok(worst)
}
