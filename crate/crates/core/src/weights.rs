//! Closed-form kernel moments of the Newton-interpolation scheme.
//!
//! Every scheme weight is an integral of a low-degree polynomial against the
//! kernel (t − s)^(α−1) over one subinterval, scaled to unit step size. The
//! free functions below return the bracketed closed forms; callers apply the
//! (Δt)^α/Γ(α+k) prefactors, which [`SchemeWeights`] carries.
//!
//! With lag d = m − j, unit step and τ = s − t_j:
//!
//! | function                     | integral (times normalizing constant)                          |
//! |------------------------------|----------------------------------------------------------------|
//! | [`moment_rect`]              | α ∫_0^1 (d+1−τ)^(α−1) dτ                                       |
//! | [`moment_lin`]               | α(α+1) ∫_0^1 τ (d+1−τ)^(α−1) dτ                                |
//! | [`moment_quad`]              | α(α+1)(α+2) ∫_0^1 τ(τ−½) (d+1−τ)^(α−1) dτ                     |
//! | [`moment_rect_half`]         | α ∫_0^1 (d+½−τ)^(α−1) dτ                                       |
//! | [`moment_lin_half`]          | α(α+1) ∫_0^1 τ (d+½−τ)^(α−1) dτ                                |
//! | [`moment_last_half`]         | α ∫_0^½ (½−τ)^(α−1) dτ                                         |
//! | [`predictor_moment_first_half`]  | α ∫_0^½ (d+1−τ)^(α−1) dτ                                   |
//! | [`predictor_moment_second_half`] | α ∫_½^1 (d+1−τ)^(α−1) dτ                                   |
//! | [`predictor_coeff_c`]        | α(α+1) ∫_0^½ τ (d+1−τ)^(α−1) dτ                                |

use crate::problem::Normalization;
use crate::special::gamma_unchecked;

/// x^a with 0^a = 0.
#[inline]
fn pow(x: f64, a: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x.powf(a)
    }
}

#[inline]
fn lag(m: usize, j: usize) -> f64 {
    assert!(j <= m, "moment requires j <= m (j = {j}, m = {m})");
    (m - j) as f64
}

#[inline]
fn half_lag(j: usize, k: usize) -> f64 {
    assert!(
        k < j,
        "half-step moment requires k <= j - 1 (j = {j}, k = {k})"
    );
    (j - k) as f64
}

fn rect_at(alpha: f64, d: f64) -> f64 {
    pow(d + 1.0, alpha) - pow(d, alpha)
}

fn lin_at(alpha: f64, d: f64) -> f64 {
    pow(d + 1.0, alpha + 1.0) - pow(d, alpha + 1.0) - (alpha + 1.0) * pow(d, alpha)
}

fn quad_at(alpha: f64, d: f64) -> f64 {
    let lead = pow(d + 1.0, alpha) * (2.0 * d * d - 0.5 * ((alpha - 6.0) * d + (alpha - 2.0)));
    let tail = pow(d, alpha)
        * (2.0 * d * d + 0.5 * ((3.0 * alpha + 6.0) * d + (alpha * alpha + 3.0 * alpha + 2.0)));
    lead - tail
}

fn rect_half_at(alpha: f64, d: f64) -> f64 {
    pow(d + 0.5, alpha) - pow(d - 0.5, alpha)
}

fn lin_half_at(alpha: f64, d: f64) -> f64 {
    pow(d + 0.5, alpha + 1.0) - pow(d - 0.5, alpha + 1.0) - (alpha + 1.0) * pow(d - 0.5, alpha)
}

fn first_half_at(alpha: f64, d: f64) -> f64 {
    pow(d + 1.0, alpha) - pow(d + 0.5, alpha)
}

fn second_half_at(alpha: f64, d: f64) -> f64 {
    pow(d + 0.5, alpha) - pow(d, alpha)
}

// C(α, j, m) rewritten with m = j + d: the j-dependence cancels exactly.
fn coeff_c_at(alpha: f64, d: f64) -> f64 {
    pow(d + 1.0, alpha + 1.0) - (d + 1.0 + 0.5 * alpha) * pow(d + 0.5, alpha)
}

/// (m−j+1)^α − (m−j)^α.
pub fn moment_rect(alpha: f64, m: usize, j: usize) -> f64 {
    rect_at(alpha, lag(m, j))
}

/// (m−j+1)^(α+1) − (m−j)^(α+1) − (α+1)(m−j)^α.
pub fn moment_lin(alpha: f64, m: usize, j: usize) -> f64 {
    lin_at(alpha, lag(m, j))
}

/// Quadratic-interpolant moment; equals −(α−2)/2 at lag zero.
pub fn moment_quad(alpha: f64, m: usize, j: usize) -> f64 {
    quad_at(alpha, lag(m, j))
}

/// (j−k+½)^α − (j−k−½)^α, for k ≤ j−1.
pub fn moment_rect_half(alpha: f64, j: usize, k: usize) -> f64 {
    rect_half_at(alpha, half_lag(j, k))
}

/// (j−k+½)^(α+1) − (j−k−½)^(α+1) − (α+1)(j−k−½)^α, for k ≤ j−1.
pub fn moment_lin_half(alpha: f64, j: usize, k: usize) -> f64 {
    lin_half_at(alpha, half_lag(j, k))
}

/// (½)^α, the moment of the constant piece on [t_j, t_{j+1/2}].
pub fn moment_last_half(alpha: f64) -> f64 {
    0.5f64.powf(alpha)
}

/// (m−j+1)^α − (m−j+½)^α.
pub fn predictor_moment_first_half(alpha: f64, m: usize, j: usize) -> f64 {
    first_half_at(alpha, lag(m, j))
}

/// (m−j+½)^α − (m−j)^α.
pub fn predictor_moment_second_half(alpha: f64, m: usize, j: usize) -> f64 {
    second_half_at(alpha, lag(m, j))
}

/// The predictor's linear-correction coefficient 𝒞(α, j, m), in its
/// four-term expanded form.
pub fn predictor_coeff_c(alpha: f64, j: usize, m: usize) -> f64 {
    let d = lag(m, j);
    let (mf, jf) = (m as f64, j as f64);
    (mf + alpha * jf + 1.0) * pow(d + 1.0, alpha)
        - (mf + alpha * jf + 0.5 * (alpha + 2.0)) * pow(d + 0.5, alpha)
        + (alpha + 1.0) * jf * pow(d + 0.5, alpha)
        - (alpha + 1.0) * jf * pow(d + 1.0, alpha)
}

/// Lag-indexed moment tables and prefactors for one (α, M(α), Δt, N).
///
/// All moments depend on (m, j) only through the lag m − j, so each table has
/// N + 1 entries and the O(N²) history sums reduce to array reads.
#[derive(Debug, Clone)]
pub struct SchemeWeights {
    alpha: f64,
    dt_pow_alpha: f64,
    /// (1 − α)/M(α)
    local: f64,
    /// α/M(α)
    memory: f64,
    rect_scale: f64,
    lin_scale: f64,
    quad_scale: f64,
    rect: Vec<f64>,
    lin: Vec<f64>,
    quad: Vec<f64>,
    rect_half: Vec<f64>,
    lin_half: Vec<f64>,
    first_half: Vec<f64>,
    second_half: Vec<f64>,
    coeff_c: Vec<f64>,
    last_half: f64,
}

impl SchemeWeights {
    pub fn new(alpha: f64, normalization: Normalization, dt: f64, n_steps: usize) -> Self {
        let dt_pow_alpha = dt.powf(alpha);
        let ab = normalization.value(alpha);
        let table = |f: fn(f64, f64) -> f64| -> Vec<f64> {
            (0..=n_steps).map(|d| f(alpha, d as f64)).collect()
        };
        // half-step tables are indexed by j − k ≥ 1; slot 0 is unused
        let half_table = |f: fn(f64, f64) -> f64| -> Vec<f64> {
            std::iter::once(f64::NAN)
                .chain((1..=n_steps).map(|d| f(alpha, d as f64)))
                .collect()
        };
        Self {
            alpha,
            dt_pow_alpha,
            local: (1.0 - alpha) / ab,
            memory: alpha / ab,
            rect_scale: dt_pow_alpha / gamma_unchecked(alpha + 1.0),
            lin_scale: dt_pow_alpha / gamma_unchecked(alpha + 2.0),
            quad_scale: dt_pow_alpha / gamma_unchecked(alpha + 3.0),
            rect: table(rect_at),
            lin: table(lin_at),
            quad: table(quad_at),
            rect_half: half_table(rect_half_at),
            lin_half: half_table(lin_half_at),
            first_half: table(first_half_at),
            second_half: table(second_half_at),
            coeff_c: table(coeff_c_at),
            last_half: moment_last_half(alpha),
        }
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn dt_pow_alpha(&self) -> f64 {
        self.dt_pow_alpha
    }

    /// (1 − α)/M(α), the weight of the local f term.
    pub fn local(&self) -> f64 {
        self.local
    }

    /// α/M(α), the weight of the memory integral.
    pub fn memory(&self) -> f64 {
        self.memory
    }

    /// (Δt)^α/Γ(α+1)
    pub fn rect_scale(&self) -> f64 {
        self.rect_scale
    }

    /// (Δt)^α/Γ(α+2)
    pub fn lin_scale(&self) -> f64 {
        self.lin_scale
    }

    /// (Δt)^α/Γ(α+3)
    pub fn quad_scale(&self) -> f64 {
        self.quad_scale
    }

    #[inline]
    pub fn rect(&self, lag: usize) -> f64 {
        self.rect[lag]
    }

    #[inline]
    pub fn lin(&self, lag: usize) -> f64 {
        self.lin[lag]
    }

    #[inline]
    pub fn quad(&self, lag: usize) -> f64 {
        self.quad[lag]
    }

    /// Lag must be at least 1.
    #[inline]
    pub fn rect_half(&self, lag: usize) -> f64 {
        debug_assert!(lag >= 1);
        self.rect_half[lag]
    }

    /// Lag must be at least 1.
    #[inline]
    pub fn lin_half(&self, lag: usize) -> f64 {
        debug_assert!(lag >= 1);
        self.lin_half[lag]
    }

    #[inline]
    pub fn first_half(&self, lag: usize) -> f64 {
        self.first_half[lag]
    }

    #[inline]
    pub fn second_half(&self, lag: usize) -> f64 {
        self.second_half[lag]
    }

    #[inline]
    pub fn coeff_c(&self, lag: usize) -> f64 {
        self.coeff_c[lag]
    }

    pub fn last_half(&self) -> f64 {
        self.last_half
    }
}
