//! Explicit Runge-Kutta integration.
//!
//! [`integrate_ivp`] and [`integrate_ivp_at`] use the Dormand-Prince 5(4) pair with
//! local extrapolation and the quartic continuous extension of Hairer, Norsett and
//! Wanner (the `DOPRI5` dense output). The error norm is the RMS of
//! `err_i / (abs_tol + rel_tol * max(|y_i|, |y_new_i|))` and a step is accepted when
//! the norm is at most one.
//!
//! [`integrate_rk4`] is the classical fixed-step fourth order method on a
//! caller-supplied grid, for runs that must be reproducible point by point.

use super::path::{SampledPath, ToleranceConfig};
use crate::error::{Error, Result};

const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;

const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const A71: f64 = 35.0 / 384.0;
const A73: f64 = 500.0 / 1113.0;
const A74: f64 = 125.0 / 192.0;
const A75: f64 = -2187.0 / 6784.0;
const A76: f64 = 11.0 / 84.0;

const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

const D1: f64 = -12715105075.0 / 11282082432.0;
const D3: f64 = 87487479700.0 / 32700410799.0;
const D4: f64 = -10690763975.0 / 1880347072.0;
const D5: f64 = 701980252875.0 / 199316789632.0;
const D6: f64 = -1453857185.0 / 822651844.0;
const D7: f64 = 69997945.0 / 29380423.0;

const SAFETY: f64 = 0.9;
const FAC_MIN: f64 = 0.2;
const FAC_MAX: f64 = 10.0;

/// One accepted step with its continuous extension.
struct DenseStep<'a> {
    t: f64,
    h: f64,
    y: &'a [f64],
    y_new: &'a [f64],
    cont: &'a [[f64; 4]],
}

impl DenseStep<'_> {
    fn eval(&self, t: f64, out: &mut [f64]) {
        let theta = (t - self.t) / self.h;
        let theta1 = 1.0 - theta;
        for (i, o) in out.iter_mut().enumerate() {
            let [ydiff, bspl, r4, r5] = self.cont[i];
            *o = self.y[i] + theta * (ydiff + theta1 * (bspl + theta * (r4 + theta1 * r5)));
        }
    }
}

fn rms_norm(v: &[f64], y: &[f64], tol: &ToleranceConfig) -> f64 {
    let s: f64 = v
        .iter()
        .zip(y)
        .map(|(x, yi)| {
            let sk = tol.abs_tol + tol.rel_tol * yi.abs();
            (x / sk).powi(2)
        })
        .sum();
    (s / v.len() as f64).sqrt()
}

fn all_finite(v: &[f64]) -> bool {
    v.iter().all(|x| x.is_finite())
}

/// Drives the Dormand-Prince stepper from `t0` to `t1`, calling `on_step` for each
/// accepted step.
fn dopri5<F, S>(mut rhs: F, y0: &[f64], t0: f64, t1: f64, tol: &ToleranceConfig, mut on_step: S) -> Result<()>
where
    F: FnMut(f64, &[f64], &mut [f64]),
    S: FnMut(&DenseStep<'_>),
{
    tol.validate()?;
    if !(t1 > t0) {
        return Err(Error::InvalidParams(format!("t1 = {t1} must exceed t0 = {t0}")));
    }
    if y0.is_empty() {
        return Err(Error::InvalidParams("empty initial state".into()));
    }
    if !all_finite(y0) {
        return Err(Error::NonFiniteState { t: t0 });
    }
    let n = y0.len();
    let span = t1 - t0;
    let mut y = y0.to_vec();
    let mut y_new = vec![0.0; n];
    let mut ytmp = vec![0.0; n];
    let mut err = vec![0.0; n];
    let mut k: Vec<Vec<f64>> = vec![vec![0.0; n]; 7];
    let mut cont = vec![[0.0; 4]; n];

    rhs(t0, &y, &mut k[0]);
    if !all_finite(&k[0]) {
        return Err(Error::NonFiniteState { t: t0 });
    }

    let mut h = initial_step(&mut rhs, t0, &y, &k[0], span, tol);
    let mut t = t0;
    let mut steps = 0usize;
    let mut last_rejected = false;
    let h_floor = 1e-14 * t0.abs().max(t1.abs()).max(1.0);

    while t < t1 {
        if steps >= tol.max_steps {
            return Err(Error::StepLimitExceeded { t, max_steps: tol.max_steps });
        }
        steps += 1;
        let mut last = false;
        if t + h >= t1 || t1 - (t + h) < 1e-12 * span {
            h = t1 - t;
            last = true;
        }

        let (k1, rest) = k.split_first_mut().unwrap();
        let [k2, k3, k4, k5, k6, k7] = rest else { unreachable!() };

        for i in 0..n {
            ytmp[i] = y[i] + h * A21 * k1[i];
        }
        rhs(t + C2 * h, &ytmp, k2);
        for i in 0..n {
            ytmp[i] = y[i] + h * (A31 * k1[i] + A32 * k2[i]);
        }
        rhs(t + C3 * h, &ytmp, k3);
        for i in 0..n {
            ytmp[i] = y[i] + h * (A41 * k1[i] + A42 * k2[i] + A43 * k3[i]);
        }
        rhs(t + C4 * h, &ytmp, k4);
        for i in 0..n {
            ytmp[i] = y[i] + h * (A51 * k1[i] + A52 * k2[i] + A53 * k3[i] + A54 * k4[i]);
        }
        rhs(t + C5 * h, &ytmp, k5);
        for i in 0..n {
            ytmp[i] = y[i] + h * (A61 * k1[i] + A62 * k2[i] + A63 * k3[i] + A64 * k4[i] + A65 * k5[i]);
        }
        rhs(t + h, &ytmp, k6);
        for i in 0..n {
            y_new[i] = y[i] + h * (A71 * k1[i] + A73 * k3[i] + A74 * k4[i] + A75 * k5[i] + A76 * k6[i]);
        }
        rhs(t + h, &y_new, k7);

        let stages_finite = [&*k2, &*k3, &*k4, &*k5, &*k6, &*k7].iter().all(|s| all_finite(s));
        if !stages_finite || !all_finite(&y_new) {
            // stepping over a singularity; retry with a smaller step until it is resolved
            h *= 0.1;
            last_rejected = true;
            if h < h_floor {
                return Err(Error::NonFiniteState { t });
            }
            continue;
        }

        for i in 0..n {
            err[i] = h * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i] + E7 * k7[i]);
            ytmp[i] = y[i].abs().max(y_new[i].abs());
        }
        let err_norm = rms_norm(&err, &ytmp, tol);

        if err_norm <= 1.0 {
            for i in 0..n {
                let ydiff = y_new[i] - y[i];
                let bspl = h * k1[i] - ydiff;
                let r4 = ydiff - h * k7[i] - bspl;
                let r5 = h * (D1 * k1[i] + D3 * k3[i] + D4 * k4[i] + D5 * k5[i] + D6 * k6[i] + D7 * k7[i]);
                cont[i] = [ydiff, bspl, r4, r5];
            }
            let t_next = if last { t1 } else { t + h };
            on_step(&DenseStep { t, h: t_next - t, y: &y, y_new: &y_new, cont: &cont });
            t = t_next;
            y.copy_from_slice(&y_new);
            k1.copy_from_slice(k7);

            let mut fac =
                if err_norm == 0.0 { FAC_MAX } else { (SAFETY * err_norm.powf(-0.2)).clamp(FAC_MIN, FAC_MAX) };
            if last_rejected {
                fac = fac.min(1.0);
            }
            h *= fac;
            last_rejected = false;
        } else {
            h *= (SAFETY * err_norm.powf(-0.2)).max(FAC_MIN);
            last_rejected = true;
            if h < h_floor {
                return Err(Error::NonFiniteState { t });
            }
        }
    }
    Ok(())
}

fn initial_step<F>(rhs: &mut F, t0: f64, y0: &[f64], f0: &[f64], span: f64, tol: &ToleranceConfig) -> f64
where
    F: FnMut(f64, &[f64], &mut [f64]),
{
    let d0 = rms_norm(y0, y0, tol);
    let d1 = rms_norm(f0, y0, tol);
    let h0 = if d0 < 1e-10 || d1 < 1e-10 { 1e-6 } else { 0.01 * d0 / d1 };
    let h0 = h0.min(span);
    let y1: Vec<f64> = y0.iter().zip(f0).map(|(y, f)| y + h0 * f).collect();
    let mut f1 = vec![0.0; y0.len()];
    rhs(t0 + h0, &y1, &mut f1);
    if !all_finite(&f1) {
        return h0 * 1e-3;
    }
    let diff: Vec<f64> = f1.iter().zip(f0).map(|(a, b)| a - b).collect();
    let d2 = rms_norm(&diff, y0, tol) / h0;
    let dmax = d1.max(d2);
    let h1 = if dmax <= 1e-15 { (h0 * 1e-3).max(1e-6) } else { (0.01 / dmax).powf(0.2) };
    (100.0 * h0).min(h1).min(span)
}

/// Integrates `y' = rhs(t, y)` from `t0` to `t1` with adaptive step size control.
///
/// The returned path holds the initial point and every accepted step.
pub fn integrate_ivp<F>(rhs: F, y0: &[f64], t0: f64, t1: f64, tol: &ToleranceConfig) -> Result<SampledPath>
where
    F: FnMut(f64, &[f64], &mut [f64]),
{
    let mut grid = vec![t0];
    let mut data = y0.to_vec();
    dopri5(rhs, y0, t0, t1, tol, |step| {
        grid.push(step.t + step.h);
        data.extend_from_slice(step.y_new);
    })?;
    SampledPath::from_flat(grid, y0.len(), data)
}

/// Integrates from `t_eval[0]` and reports the solution at every point of `t_eval`
/// through the continuous extension. Step sizes are chosen by the error controller,
/// not by the output grid.
pub fn integrate_ivp_at<F>(rhs: F, y0: &[f64], t_eval: &[f64], tol: &ToleranceConfig) -> Result<SampledPath>
where
    F: FnMut(f64, &[f64], &mut [f64]),
{
    if t_eval.len() < 2 {
        return Err(Error::PathTooShort { len: t_eval.len(), required: 2 });
    }
    if t_eval.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidPath("output grid must be strictly increasing".into()));
    }
    let n = y0.len();
    let t0 = t_eval[0];
    let t1 = t_eval[t_eval.len() - 1];
    let mut data = Vec::with_capacity(n * t_eval.len());
    data.extend_from_slice(y0);
    let mut next = 1usize;
    let mut buf = vec![0.0; n];
    dopri5(rhs, y0, t0, t1, tol, |step| {
        let end = step.t + step.h;
        while next < t_eval.len() && t_eval[next] <= end {
            if t_eval[next] == end {
                data.extend_from_slice(step.y_new);
            } else {
                step.eval(t_eval[next], &mut buf);
                data.extend_from_slice(&buf);
            }
            next += 1;
        }
    })?;
    SampledPath::from_flat(t_eval.to_vec(), n, data)
}

/// Classical fourth order Runge-Kutta on a fixed grid.
pub fn integrate_rk4<F>(mut rhs: F, y0: &[f64], grid: &[f64]) -> Result<SampledPath>
where
    F: FnMut(f64, &[f64], &mut [f64]),
{
    if grid.len() < 2 {
        return Err(Error::PathTooShort { len: grid.len(), required: 2 });
    }
    let n = y0.len();
    let mut data = Vec::with_capacity(n * grid.len());
    data.extend_from_slice(y0);
    let mut y = y0.to_vec();
    let (mut k1, mut k2, mut k3, mut k4) = (vec![0.0; n], vec![0.0; n], vec![0.0; n], vec![0.0; n]);
    let mut tmp = vec![0.0; n];
    for w in grid.windows(2) {
        let (t, h) = (w[0], w[1] - w[0]);
        rhs(t, &y, &mut k1);
        for i in 0..n {
            tmp[i] = y[i] + 0.5 * h * k1[i];
        }
        rhs(t + 0.5 * h, &tmp, &mut k2);
        for i in 0..n {
            tmp[i] = y[i] + 0.5 * h * k2[i];
        }
        rhs(t + 0.5 * h, &tmp, &mut k3);
        for i in 0..n {
            tmp[i] = y[i] + h * k3[i];
        }
        rhs(t + h, &tmp, &mut k4);
        for i in 0..n {
            y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
        if !all_finite(&y) {
            return Err(Error::NonFiniteState { t: w[1] });
        }
        data.extend_from_slice(&y);
    }
    SampledPath::from_flat(grid.to_vec(), n, data)
}

/// `n` equally spaced points covering `[a, b]`, end points included.
pub fn uniform_grid(a: f64, b: f64, n: usize) -> Vec<f64> {
    assert!(n >= 2, "a uniform grid needs at least two points");
    let h = (b - a) / (n - 1) as f64;
    (0..n).map(|i| if i == n - 1 { b } else { a + i as f64 * h }).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{E, FRAC_PI_2};

    fn oscillator(_t: f64, y: &[f64], dy: &mut [f64]) {
        dy[0] = y[1];
        dy[1] = -y[0];
    }

    #[test]
    fn harmonic_quarter_period() {
        let tol = ToleranceConfig::new(1e-11, 1e-12, 100_000).unwrap();
        let path = integrate_ivp(oscillator, &[1.0, 0.0], 0.0, FRAC_PI_2, &tol).unwrap();
        let y = path.last_state();
        assert!((y[0] - 0.0).abs() < 1e-8, "{y:?}");
        assert!((y[1] + 1.0).abs() < 1e-8, "{y:?}");
        assert_eq!(path.t_end(), FRAC_PI_2);
    }

    #[test]
    fn zero_field_keeps_state() {
        let path = integrate_ivp(|_, _, dy| dy[0] = 0.0, &[3.0], 0.0, 5.0, &ToleranceConfig::default()).unwrap();
        assert!(path.component(0).iter().all(|&v| v == 3.0));
        assert_eq!(path.t_end(), 5.0);
    }

    #[test]
    fn exponential_growth_matches_series() {
        // e from its Taylor series, summed until terms underflow the sum
        let mut e_series = 0.0;
        let mut term = 1.0;
        for k in 1..30 {
            e_series += term;
            term /= k as f64;
        }
        assert!((e_series - E).abs() < 1e-15);
        let tol = ToleranceConfig::new(1e-12, 1e-14, 100_000).unwrap();
        let path = integrate_ivp(|_, y, dy| dy[0] = y[0], &[1.0], 0.0, 1.0, &tol).unwrap();
        assert!((path.last_state()[0] - e_series).abs() < 1e-8);
    }

    #[test]
    fn dense_output_tracks_cosine() {
        let grid = uniform_grid(0.0, 10.0, 1001);
        let tol = ToleranceConfig::new(1e-10, 1e-12, 100_000).unwrap();
        let path = integrate_ivp_at(oscillator, &[1.0, 0.0], &grid, &tol).unwrap();
        let worst = path.iter().map(|(t, y)| (y[0] - t.cos()).abs().max((y[1] + t.sin()).abs())).fold(0.0, f64::max);
        assert!(worst < 1e-8, "dense output error {worst}");
    }

    #[test]
    fn endpoint_error_shrinks_with_tolerance() {
        let errs: Vec<f64> = [1e-4, 1e-6, 1e-8, 1e-10]
            .iter()
            .map(|&tol| {
                let tol = ToleranceConfig::new(tol, tol, 100_000).unwrap();
                let p = integrate_ivp(oscillator, &[1.0, 0.0], 0.0, 10.0, &tol).unwrap();
                let y = p.last_state();
                (y[0] - 10f64.cos()).hypot(y[1] + 10f64.sin())
            })
            .collect();
        assert!(errs.windows(2).all(|w| w[1] < w[0]), "{errs:?}");
    }

    #[test]
    fn step_limit_is_reported() {
        let tol = ToleranceConfig::new(1e-10, 1e-12, 5).unwrap();
        let res = integrate_ivp(oscillator, &[1.0, 0.0], 0.0, 100.0, &tol);
        assert!(matches!(res, Err(Error::StepLimitExceeded { max_steps: 5, .. })));
    }

    #[test]
    fn blow_up_is_reported_as_non_finite() {
        // y' = y^2, y(0) = 1 blows up at t = 1
        let res = integrate_ivp(|_, y, dy| dy[0] = y[0] * y[0], &[1.0], 0.0, 2.0, &ToleranceConfig::default());
        assert!(matches!(res, Err(Error::NonFiniteState { .. }) | Err(Error::StepLimitExceeded { .. })));
    }

    #[test]
    fn rk4_fixed_grid_is_fourth_order() {
        let err = |n: usize| {
            let grid = uniform_grid(0.0, 2.0, n);
            let p = integrate_rk4(oscillator, &[1.0, 0.0], &grid).unwrap();
            (p.last_state()[0] - 2f64.cos()).abs()
        };
        let ratio = err(51) / err(101);
        assert!(ratio > 14.0 && ratio < 18.0, "ratio {ratio}");
    }
}
