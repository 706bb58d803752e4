use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Solution samples on a strictly increasing grid.
///
/// Each grid point carries a state vector of fixed dimension. Non-finite entries are
/// rejected at construction, so a stored path never contains NaN or infinities.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledPath {
    grid: Vec<f64>,
    dim: usize,
    data: Vec<f64>,
}

impl SampledPath {
    pub fn new(grid: Vec<f64>, values: Vec<Vec<f64>>) -> Result<Self> {
        if grid.len() != values.len() {
            return Err(Error::InvalidPath(format!(
                "grid has {} points but {} states were given",
                grid.len(),
                values.len()
            )));
        }
        let dim = values.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(dim * values.len());
        for (i, v) in values.into_iter().enumerate() {
            if v.len() != dim {
                return Err(Error::InvalidPath(format!("state {i} has dimension {} instead of {dim}", v.len())));
            }
            data.extend(v);
        }
        Self::from_flat(grid, dim, data)
    }

    pub fn from_flat(grid: Vec<f64>, dim: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != grid.len() * dim {
            return Err(Error::InvalidPath("data length does not match grid x dim".into()));
        }
        if grid.is_empty() {
            return Err(Error::PathTooShort { len: 0, required: 1 });
        }
        if dim == 0 {
            return Err(Error::InvalidPath("state dimension must be positive".into()));
        }
        if let Some(&t) = grid.iter().find(|t| !t.is_finite()) {
            return Err(Error::InvalidPath(format!("non-finite grid value {t}")));
        }
        if let Some(w) = grid.windows(2).find(|w| w[1] <= w[0]) {
            return Err(Error::InvalidPath(format!("grid not strictly increasing at {} -> {}", w[0], w[1])));
        }
        if let Some(pos) = data.iter().position(|x| !x.is_finite()) {
            return Err(Error::NonFiniteState { t: grid[pos / dim] });
        }
        Ok(Self { grid, dim, data })
    }

    /// Samples `f` on `grid`; `f` returns the state at each point.
    pub fn from_fn<F>(grid: Vec<f64>, dim: usize, mut f: F) -> Result<Self>
    where
        F: FnMut(f64) -> Result<Vec<f64>>,
    {
        let mut data = Vec::with_capacity(grid.len() * dim);
        for &t in &grid {
            let v = f(t)?;
            if v.len() != dim {
                return Err(Error::InvalidPath(format!("sampler returned dimension {} instead of {dim}", v.len())));
            }
            data.extend(v);
        }
        Self::from_flat(grid, dim, data)
    }

    pub fn len(&self) -> usize {
        self.grid.len()
    }

    pub fn is_empty(&self) -> bool {
        self.grid.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn grid(&self) -> &[f64] {
        &self.grid
    }

    pub fn state(&self, i: usize) -> &[f64] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    pub fn value(&self, i: usize, k: usize) -> f64 {
        self.data[i * self.dim + k]
    }

    pub fn component(&self, k: usize) -> Vec<f64> {
        assert!(k < self.dim, "component {k} out of range for dimension {}", self.dim);
        self.data.iter().skip(k).step_by(self.dim).copied().collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = (f64, &[f64])> + '_ {
        self.grid.iter().copied().zip(self.data.chunks_exact(self.dim))
    }

    pub fn first_state(&self) -> &[f64] {
        self.state(0)
    }

    pub fn last_state(&self) -> &[f64] {
        self.state(self.len() - 1)
    }

    pub fn t_start(&self) -> f64 {
        self.grid[0]
    }

    pub fn t_end(&self) -> f64 {
        self.grid[self.grid.len() - 1]
    }

    /// Index `i` such that `grid[i] <= t <= grid[i + 1]`.
    pub(crate) fn bracket(&self, t: f64) -> Result<usize> {
        let n = self.len();
        if n < 2 {
            return Err(Error::PathTooShort { len: n, required: 2 });
        }
        // small slack so that round-off at the end points is not a domain error
        let slack = 1e-12 * (self.t_end() - self.t_start()).abs().max(1.0);
        if !(t >= self.t_start() - slack && t <= self.t_end() + slack) {
            return Err(Error::DomainMismatch(format!("{t} outside [{}, {}]", self.t_start(), self.t_end())));
        }
        let i = self.grid.partition_point(|&g| g <= t);
        Ok(i.saturating_sub(1).min(n - 2))
    }

    /// Cubic Hermite interpolation of component `k`, using component `dk` as its
    /// derivative. Returns the interpolated value and derivative.
    pub fn hermite(&self, t: f64, k: usize, dk: usize) -> Result<(f64, f64)> {
        let i = self.bracket(t)?;
        let (t0, t1) = (self.grid[i], self.grid[i + 1]);
        Ok(hermite_cubic(t0, t1, self.value(i, k), self.value(i + 1, k), self.value(i, dk), self.value(i + 1, dk), t))
    }
}

/// Value and derivative of the cubic Hermite interpolant on `[t0, t1]`.
pub(crate) fn hermite_cubic(t0: f64, t1: f64, y0: f64, y1: f64, d0: f64, d1: f64, t: f64) -> (f64, f64) {
    let h = t1 - t0;
    let s = (t - t0) / h;
    let s2 = s * s;
    let s3 = s2 * s;
    let h00 = 2.0 * s3 - 3.0 * s2 + 1.0;
    let h10 = s3 - 2.0 * s2 + s;
    let h01 = -2.0 * s3 + 3.0 * s2;
    let h11 = s3 - s2;
    let value = h00 * y0 + h10 * h * d0 + h01 * y1 + h11 * h * d1;
    let dh00 = (6.0 * s2 - 6.0 * s) / h;
    let dh10 = 3.0 * s2 - 4.0 * s + 1.0;
    let dh01 = (-6.0 * s2 + 6.0 * s) / h;
    let dh11 = 3.0 * s2 - 2.0 * s;
    let deriv = dh00 * y0 + dh10 * d0 + dh01 * y1 + dh11 * d1;
    (value, deriv)
}

/// Error control and work limits shared by the integrator and the quadrature.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ToleranceConfig {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_steps: usize,
}

impl ToleranceConfig {
    pub fn new(rel_tol: f64, abs_tol: f64, max_steps: usize) -> Result<Self> {
        let tol = Self { rel_tol, abs_tol, max_steps };
        tol.validate()?;
        Ok(tol)
    }

    /// Same relative and absolute tolerance with the default step budget.
    pub fn uniform(tol: f64) -> Result<Self> {
        Self::new(tol, tol, Self::default().max_steps)
    }

    pub fn validate(&self) -> Result<()> {
        let in_unit = |x: f64| x > 0.0 && x < 1.0;
        if !in_unit(self.rel_tol) {
            return Err(Error::InvalidParams(format!("rel_tol must lie in (0, 1), got {}", self.rel_tol)));
        }
        if !in_unit(self.abs_tol) {
            return Err(Error::InvalidParams(format!("abs_tol must lie in (0, 1), got {}", self.abs_tol)));
        }
        if self.max_steps == 0 {
            return Err(Error::InvalidParams("max_steps must be at least 1".into()));
        }
        Ok(())
    }
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        Self { rel_tol: 1e-10, abs_tol: 1e-12, max_steps: 1_000_000 }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_unsorted_and_nonfinite() {
        assert!(SampledPath::new(vec![0.0, 0.0], vec![vec![1.0], vec![1.0]]).is_err());
        assert!(SampledPath::new(vec![1.0, 0.5], vec![vec![1.0], vec![1.0]]).is_err());
        assert!(matches!(
            SampledPath::new(vec![0.0, 1.0], vec![vec![1.0], vec![f64::NAN]]),
            Err(Error::NonFiniteState { t }) if t == 1.0
        ));
        assert!(SampledPath::new(vec![0.0], vec![vec![1.0, 2.0]]).is_ok());
        assert!(SampledPath::new(vec![0.0, 1.0], vec![vec![1.0]]).is_err());
    }

    #[test]
    fn component_and_state_access() {
        let p = SampledPath::new(vec![0.0, 1.0], vec![vec![1.0, 2.0], vec![3.0, 4.0]]).unwrap();
        assert_eq!(p.component(1), vec![2.0, 4.0]);
        assert_eq!(p.state(1), &[3.0, 4.0]);
        assert_eq!(p.dim(), 2);
    }

    #[test]
    fn hermite_is_exact_on_cubics() {
        let f = |t: f64| t * t * t - 2.0 * t;
        let df = |t: f64| 3.0 * t * t - 2.0;
        let grid: Vec<f64> = (0..5).map(|i| i as f64 * 0.5).collect();
        let p = SampledPath::from_fn(grid, 2, |t| Ok(vec![f(t), df(t)])).unwrap();
        for &t in &[0.1, 0.77, 1.3, 2.0] {
            let (v, d) = p.hermite(t, 0, 1).unwrap();
            assert!((v - f(t)).abs() < 1e-13);
            assert!((d - df(t)).abs() < 1e-12);
        }
        assert!(p.hermite(2.5, 0, 1).is_err());
    }

    #[test]
    fn tolerance_validation() {
        assert!(ToleranceConfig::new(1e-8, 1e-10, 10).is_ok());
        assert!(ToleranceConfig::new(0.0, 1e-10, 10).is_err());
        assert!(ToleranceConfig::new(1e-8, 1.0, 10).is_err());
        assert!(ToleranceConfig::new(1e-8, 1e-10, 0).is_err());
    }
}
