//! Globally adaptive Gauss-Kronrod (7, 15) quadrature.

use super::path::ToleranceConfig;
use crate::error::{Error, Result};

// Kronrod abscissae on [0, 1]; odd indices are the 7-point Gauss nodes.
// Tabulated to more digits than an f64 holds; the literals round correctly.
#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

fn eval<F: FnMut(f64) -> f64>(f: &mut F, x: f64) -> Result<f64> {
    let v = f(x);
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::NonFiniteIntegrand { x })
    }
}

fn gk15<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64) -> Result<Panel> {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = eval(f, center)?;
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let dx = half * XGK[j];
        let sum = eval(f, center - dx)? + eval(f, center + dx)?;
        kronrod += WGK[j] * sum;
        if j % 2 == 1 {
            gauss += WG[j / 2] * sum;
        }
    }
    Ok(Panel { a, b, value: kronrod * half, error: ((kronrod - gauss) * half).abs() })
}

/// Integral of `f` over `[a, b]`.
///
/// Panels are bisected, largest error estimate first, until the summed estimate is
/// below `max(abs_tol, rel_tol * |result|)`. `max_steps` bounds the number of
/// bisections. A non-finite integrand value aborts with its abscissa.
pub fn quadrature<F>(mut f: F, a: f64, b: f64, tol: &ToleranceConfig) -> Result<f64>
where
    F: FnMut(f64) -> f64,
{
    tol.validate()?;
    if !(a.is_finite() && b.is_finite()) {
        return Err(Error::InvalidParams(format!("integration bounds must be finite: [{a}, {b}]")));
    }
    if a == b {
        return Ok(0.0);
    }
    if b < a {
        return quadrature(f, b, a, tol).map(|v| -v);
    }
    let mut panels = vec![gk15(&mut f, a, b)?];
    let mut splits = 0usize;
    loop {
        let value: f64 = panels.iter().map(|p| p.value).sum();
        let error: f64 = panels.iter().map(|p| p.error).sum();
        if error <= tol.abs_tol.max(tol.rel_tol * value.abs()) {
            return Ok(value);
        }
        if splits >= tol.max_steps {
            return Err(Error::StepLimitExceeded { t: a, max_steps: tol.max_steps });
        }
        let (worst, _) =
            panels.iter().enumerate().max_by(|x, y| x.1.error.total_cmp(&y.1.error)).expect("at least one panel");
        let p = panels.swap_remove(worst);
        let mid = 0.5 * (p.a + p.b);
        if mid <= p.a || mid >= p.b {
            // panel cannot be split further in floating point
            return Ok(value);
        }
        panels.push(gk15(&mut f, p.a, mid)?);
        panels.push(gk15(&mut f, mid, p.b)?);
        splits += 1;
    }
}

/// Running integral `F(x_k) = ∫_{x_0}^{x_k} f` at every node, computed panel by panel.
pub fn cumulative_quadrature<F>(mut f: F, nodes: &[f64], tol: &ToleranceConfig) -> Result<Vec<f64>>
where
    F: FnMut(f64) -> f64,
{
    let mut out = Vec::with_capacity(nodes.len());
    let mut acc = 0.0;
    if let Some(&first) = nodes.first() {
        out.push(0.0);
        let mut prev = first;
        for &x in &nodes[1..] {
            acc += quadrature(&mut f, prev, x, tol)?;
            out.push(acc);
            prev = x;
        }
    }
    Ok(out)
}
