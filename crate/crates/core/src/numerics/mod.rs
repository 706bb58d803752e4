//! Integration, quadrature and finite-difference primitives shared by every other
//! module. All routines are pure functions of their inputs.

pub mod finite_diff;
pub mod ode;
pub mod path;
pub mod quadrature;

pub use finite_diff::{fd_residual, max_residual};
pub use ode::{integrate_ivp, integrate_ivp_at, integrate_rk4, uniform_grid};
pub use path::{SampledPath, ToleranceConfig};
pub use quadrature::{cumulative_quadrature, quadrature};

/// Real `n`-th root under the convention used throughout the crate: non-negative
/// arguments take the principal root, negative arguments take `-|x|^(1/n)` when `n`
/// is odd and have no real root when `n` is even.
pub fn real_root(x: f64, n: u32) -> Option<f64> {
    if n == 0 || !x.is_finite() {
        return None;
    }
    let root = |v: f64| match n {
        1 => v,
        2 => v.sqrt(),
        3 => v.cbrt(),
        _ => v.powf(1.0 / n as f64),
    };
    if x >= 0.0 {
        Some(root(x))
    } else if n % 2 == 1 {
        Some(-root(-x))
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::real_root;

    #[test]
    fn real_root_branches() {
        assert_eq!(real_root(8.0, 3), Some(2.0));
        assert_eq!(real_root(-8.0, 3), Some(-2.0));
        assert_eq!(real_root(-4.0, 2), None);
        assert_eq!(real_root(16.0, 4), Some(2.0));
        assert_eq!(real_root(-32.0, 5).map(|r| (r + 2.0).abs() < 1e-15), Some(true));
        assert_eq!(real_root(0.0, 6), Some(0.0));
    }
}
