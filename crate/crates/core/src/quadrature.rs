//! Adaptive Gauss-Kronrod (7-15) quadrature.
//!
//! Used as a high-accuracy reference for the closed-form kernel moments and
//! for evaluating the AB fractional integral directly. It is slow compared to
//! the scheme weights and is not used on the solver hot path.

use crate::error::{Error, Result};

#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_838_258_730,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];

#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
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

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureOptions {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_subdivisions: usize,
}

impl Default for QuadratureOptions {
    fn default() -> Self {
        Self {
            abs_tol: 1e-15,
            rel_tol: 1e-12,
            max_subdivisions: 2000,
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
    roundoff: f64,
}

fn kronrod15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Segment {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let f_center = f(center);
    let mut gauss = f_center * WG[3];
    let mut kronrod = f_center * WGK[7];
    let mut abs_sum = kronrod.abs();
    let mut fv1 = [0.0; 7];
    let mut fv2 = [0.0; 7];

    for (i, x) in XGK.iter().take(7).enumerate() {
        let dx = half * x;
        let lo = f(center - dx);
        let hi = f(center + dx);
        fv1[i] = lo;
        fv2[i] = hi;
        kronrod += WGK[i] * (lo + hi);
        abs_sum += WGK[i] * (lo.abs() + hi.abs());
        if i % 2 == 1 {
            gauss += WG[i / 2] * (lo + hi);
        }
    }

    let mean = 0.5 * kronrod;
    let mut asc = WGK[7] * (f_center - mean).abs();
    for i in 0..7 {
        asc += WGK[i] * ((fv1[i] - mean).abs() + (fv2[i] - mean).abs());
    }

    let value = kronrod * half;
    let abs_sum = abs_sum * half.abs();
    let asc = asc * half.abs();
    let mut error = ((kronrod - gauss) * half).abs();
    if asc != 0.0 && error != 0.0 {
        error = asc * (200.0 * error / asc).powf(1.5).min(1.0);
    }
    let roundoff = 50.0 * f64::EPSILON * abs_sum;
    if abs_sum > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        error = error.max(roundoff);
    }
    Segment {
        a,
        b,
        value,
        error,
        roundoff,
    }
}

/// ∫_a^b f(x) dx by globally adaptive bisection of the worst segment.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, opts: &QuadratureOptions) -> Result<f64> {
    if a == b {
        return Ok(0.0);
    }
    let mut segments = vec![kronrod15(&f, a, b)];
    loop {
        let total: f64 = segments.iter().map(|s| s.value).sum();
        let error: f64 = segments.iter().map(|s| s.error).sum();
        let target = opts.abs_tol.max(opts.rel_tol * total.abs());
        if !total.is_finite() {
            return Err(Error::QuadratureNonConvergence {
                subdivisions: segments.len(),
                estimate: f64::INFINITY,
                target,
            });
        }
        if error <= target {
            return Ok(total);
        }
        if segments.len() >= opts.max_subdivisions {
            return Err(Error::QuadratureNonConvergence {
                subdivisions: segments.len(),
                estimate: error,
                target,
            });
        }
        // segments already at their roundoff floor cannot be improved
        let Some((worst, _)) = segments
            .iter()
            .enumerate()
            .filter(|(_, s)| s.error > s.roundoff)
            .max_by(|x, y| x.1.error.total_cmp(&y.1.error))
        else {
            return Ok(total);
        };
        let seg = segments.swap_remove(worst);
        let mid = 0.5 * (seg.a + seg.b);
        if mid <= seg.a.min(seg.b) || mid >= seg.a.max(seg.b) {
            // interval cannot be split further in f64
            return Err(Error::QuadratureNonConvergence {
                subdivisions: segments.len() + 1,
                estimate: error,
                target,
            });
        }
        segments.push(kronrod15(&f, seg.a, mid));
        segments.push(kronrod15(&f, mid, seg.b));
    }
}

/// ∫_a^b g(s) (c − s)^(α−1) ds for a ≤ b ≤ c and α ∈ (0, 1].
///
/// The substitution u = (c − s)^α turns the weakly singular kernel into
/// ds-measure: the integral equals (1/α) ∫ g(c − u^(1/α)) du over
/// u ∈ [(c−b)^α, (c−a)^α], which is finite at u = 0.
pub fn integrate_weakly_singular<G: Fn(f64) -> f64>(
    g: G,
    a: f64,
    b: f64,
    c: f64,
    alpha: f64,
    opts: &QuadratureOptions,
) -> Result<f64> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::Domain {
            function: "integrate_weakly_singular",
            value: alpha,
        });
    }
    if !(a <= b && b <= c) {
        return Err(Error::Domain {
            function: "integrate_weakly_singular",
            value: b,
        });
    }
    let inv = 1.0 / alpha;
    let lo = (c - b).powf(alpha);
    let hi = (c - a).powf(alpha);
    let inner = integrate(|u: f64| g(c - u.powf(inv)), lo, hi, opts)?;
    Ok(inner / alpha)
}
