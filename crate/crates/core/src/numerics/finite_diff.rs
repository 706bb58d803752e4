use super::path::SampledPath;
use crate::error::{Error, Result};

/// Residual magnitudes of a second order ODE along a sampled path.
///
/// Component 0 of `path` is the solution. At every interior grid point `y'` and
/// `y''` are estimated with three-point central differences (valid on non-uniform
/// grids) and `|residual(x, y, y', y'')|` is returned. The first and last points are
/// skipped, so the output has `len - 2` entries.
pub fn fd_residual<F>(path: &SampledPath, mut residual: F) -> Result<Vec<f64>>
where
    F: FnMut(f64, f64, f64, f64) -> f64,
{
    const MIN_POINTS: usize = 5;
    if path.len() < MIN_POINTS {
        return Err(Error::PathTooShort { len: path.len(), required: MIN_POINTS });
    }
    let x = path.grid();
    let y = path.component(0);
    let out = (1..x.len() - 1)
        .map(|i| {
            let (d1, d2) = central_derivatives(x[i - 1], x[i], x[i + 1], y[i - 1], y[i], y[i + 1]);
            residual(x[i], y[i], d1, d2).abs()
        })
        .collect();
    Ok(out)
}

/// First and second derivative at `x1` from the quadratic through three points.
pub(crate) fn central_derivatives(x0: f64, x1: f64, x2: f64, y0: f64, y1: f64, y2: f64) -> (f64, f64) {
    let h0 = x1 - x0;
    let h1 = x2 - x1;
    let d1 = (-h1 / (h0 * (h0 + h1))) * y0 + ((h1 - h0) / (h0 * h1)) * y1 + (h0 / (h1 * (h0 + h1))) * y2;
    let d2 = 2.0 * (y0 / (h0 * (h0 + h1)) - y1 / (h0 * h1) + y2 / (h1 * (h0 + h1)));
    (d1, d2)
}

/// Largest entry of a residual sequence (0 for an empty one).
pub fn max_residual(r: &[f64]) -> f64 {
    r.iter().copied().fold(0.0, f64::max)
}
