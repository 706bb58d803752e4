//! Shared fixtures for the benchmarks.

use reidlab::emden_fowler::{EfSolution, ReidFormula};
use reidlab::linear::{solve_basis_on, FrequencyModel, LinearBasis, SuperpositionCoefficients};
use reidlab::numerics::{uniform_grid, ToleranceConfig};
use reidlab::{EFState, ReidParams};

pub fn params(m: u32, alpha: f64) -> ReidParams {
    ReidParams::new(m, alpha).expect("valid parameters")
}

pub fn tol() -> ToleranceConfig {
    ToleranceConfig::default()
}

pub fn coeffs() -> SuperpositionCoefficients {
    SuperpositionCoefficients::new(1.0, 0.0).expect("valid coefficients")
}

/// Canonical basis for `ω² = omega_sq` on `n` points of `[0, t1]`.
pub fn linear_basis(omega_sq: f64, t1: f64, n: usize) -> (FrequencyModel, LinearBasis) {
    let freq = FrequencyModel::constant(omega_sq);
    let basis = solve_basis_on(&freq, &uniform_grid(0.0, t1, n), &tol()).expect("basis");
    (freq, basis)
}

/// Reid-formula states on `n` points of `Y ∈ [0.1, 4]`.
pub fn reid_states(m: u32, n: usize) -> Vec<EFState> {
    let sol = ReidFormula { params: params(m, 0.5), w: 1.0 };
    uniform_grid(0.1, 4.0, n).into_iter().map(|y| sol.state(y).expect("state")).collect()
}
