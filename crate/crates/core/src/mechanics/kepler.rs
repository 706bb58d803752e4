use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Radial oscillator `M R̈ = M l²-barrier − V'(R)` with `V = K R^ε`.
///
/// Only the integrable case `ε = 2`, `K = −M/8` is supported.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KeplerParams {
    pub mass: f64,
    pub l: f64,
    pub m: u32,
    pub k: f64,
    pub epsilon: f64,
}

impl KeplerParams {
    /// The integrable case.
    pub fn new(mass: f64, l: f64, m: u32) -> Result<Self> {
        Self::with_potential(mass, l, m, -mass / 8.0, 2.0)
    }

    pub fn with_potential(mass: f64, l: f64, m: u32, k: f64, epsilon: f64) -> Result<Self> {
        if !(mass > 0.0 && mass.is_finite()) {
            return Err(Error::InvalidParams(format!("mass must be positive, got {mass}")));
        }
        if !l.is_finite() {
            return Err(Error::InvalidParams("l must be finite".into()));
        }
        if m < 2 {
            return Err(Error::InvalidParams(format!("m must be at least 2, got {m}")));
        }
        if epsilon != 2.0 {
            return Err(Error::Unsupported(format!("potential exponent {epsilon}; only 2 is integrable")));
        }
        if (k + mass / 8.0).abs() > 1e-12 * mass {
            return Err(Error::Unsupported(format!("coupling K = {k}; the integrable case needs K = -M/8")));
        }
        Ok(Self { mass, l, m, k, epsilon })
    }

    /// `(−1)^(m−2) l² / (M² (m−1))`: positive (repulsive) for even `m`, negative
    /// (attractive) for odd `m`.
    pub fn barrier(&self) -> f64 {
        let sign = if self.m % 2 == 0 { 1.0 } else { -1.0 };
        sign * self.l * self.l / (self.mass * self.mass * (self.m - 1) as f64)
    }
}

/// `R(t) = (e^(mt/2) + k e^(−mt/2))^(1/m)` with `k` the barrier coefficient, and `Ṙ`.
pub fn radial_solution(t: f64, kepler: &KeplerParams) -> Result<(f64, f64)> {
    let m = kepler.m as f64;
    let k = kepler.barrier();
    let (grow, decay) = ((0.5 * m * t).exp(), (-0.5 * m * t).exp());
    let radicand = grow + k * decay;
    if !(radicand > 0.0) {
        return Err(Error::NegativeRadicand { at: t, radicand });
    }
    let r = radicand.powf(1.0 / m);
    Ok((r, 0.5 * r * (grow - k * decay) / radicand))
}

/// `R̈ = ¼ R + (m−1) k R^(1−2m)`.
pub fn radial_acceleration(r: f64, kepler: &KeplerParams) -> Result<f64> {
    if !(r > 0.0) {
        return Err(Error::SingularR { r });
    }
    let m = kepler.m as i32;
    Ok(0.25 * r + (m - 1) as f64 * kepler.barrier() * r.powi(1 - 2 * m))
}

/// Energy per unit mass split into its three terms.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RadialEnergy {
    /// `½ Ṙ²`
    pub kinetic: f64,
    /// `½ k R^(2−2m)`
    pub nonlinear: f64,
    /// `V(R)/M = −R²/8`
    pub potential: f64,
}

impl RadialEnergy {
    pub fn total(&self) -> f64 {
        self.kinetic + self.nonlinear + self.potential
    }
}

pub fn radial_energy(r: f64, r_dot: f64, kepler: &KeplerParams) -> Result<RadialEnergy> {
    if !(r > 0.0) {
        return Err(Error::SingularR { r });
    }
    let m = kepler.m as i32;
    Ok(RadialEnergy {
        kinetic: 0.5 * r_dot * r_dot,
        nonlinear: 0.5 * kepler.barrier() * r.powi(2 - 2 * m),
        potential: kepler.k * r.powf(kepler.epsilon) / kepler.mass,
    })
}

/// `I = ½[Ṙ² + k R^(2−2m) − ¼ R²]`, the energy per unit mass.
pub fn radial_invariant(r: f64, r_dot: f64, kepler: &KeplerParams) -> Result<f64> {
    if !(r > 0.0) {
        return Err(Error::SingularR { r });
    }
    let m = kepler.m as i32;
    Ok(0.5 * (r_dot * r_dot + kepler.barrier() * r.powi(2 - 2 * m) - 0.25 * r * r))
}
