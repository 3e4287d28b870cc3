//! Comparison schemes for ABC fractional IVPs.
//!
//! Both work on the integral form
//! y(t) = y0 + (1−α)/M(α) f(t, y(t)) + α/(M(α)Γ(α)) ∫_0^t f(s, y(s)) (t−s)^(α−1) ds
//! and keep their own product-integration weights, independent of
//! [`crate::weights`].
//!
//! * Baleanu-Jajarmi: fractional Adams scheme. Rectangle-rule predictor with
//!   the local term taken at (t_n, y_n); trapezoidal product-integration
//!   corrector evaluated at the predictor (PECE).
//! * Toufik-Atangana: explicit two-step scheme from Lagrange extrapolation of
//!   f through (t_{k−1}, t_k) on each [t_k, t_{k+1}], local term at (t_n, y_n).
//!   The missing f_{−1} at the first step is taken as f_0.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::problem::{FractionalIvp, Normalization, Trajectory, UniformGrid};
use crate::special::gamma_unchecked;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BaselineKind {
    BaleanuJajarmiPc,
    ToufikAtangana,
}

impl BaselineKind {
    pub fn name(self) -> &'static str {
        match self {
            BaselineKind::BaleanuJajarmiPc => "baleanu_jajarmi",
            BaselineKind::ToufikAtangana => "toufik_atangana",
        }
    }
}

impl fmt::Display for BaselineKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BaselineKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "baleanu_jajarmi" | "baleanu_jajarmi_pc" => Ok(BaselineKind::BaleanuJajarmiPc),
            "toufik_atangana" => Ok(BaselineKind::ToufikAtangana),
            other => Err(Error::InvalidOptions(format!("unknown baseline '{other}'"))),
        }
    }
}

pub fn solve_baseline(
    kind: BaselineKind,
    problem: &FractionalIvp,
    grid: &UniformGrid,
    normalization: Normalization,
) -> Trajectory {
    match kind {
        BaselineKind::BaleanuJajarmiPc => solve_baleanu_jajarmi(problem, grid, normalization),
        BaselineKind::ToufikAtangana => solve_toufik_atangana(problem, grid, normalization),
    }
}

#[inline]
fn pw(x: f64, a: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x.powf(a)
    }
}

/// Fractional Adams PECE scheme (rectangle predictor, trapezoid corrector).
pub fn solve_baleanu_jajarmi(
    problem: &FractionalIvp,
    grid: &UniformGrid,
    normalization: Normalization,
) -> Trajectory {
    let alpha = problem.alpha();
    let n = grid.n_steps();
    let ab = normalization.value(alpha);
    let local = (1.0 - alpha) / ab;
    let ha = grid.dt().powf(alpha);
    let pred_scale = alpha / ab * ha / gamma_unchecked(alpha + 1.0);
    let corr_scale = alpha / ab * ha / gamma_unchecked(alpha + 2.0);

    // rectangle weights b(d) = (d+1)^α − d^α
    let b: Vec<f64> = (0..=n)
        .map(|d| pw(d as f64 + 1.0, alpha) - pw(d as f64, alpha))
        .collect();
    // interior trapezoid weights a(d) = (d+1)^(α+1) − 2 d^(α+1) + (d−1)^(α+1), d ≥ 1
    let p1: Vec<f64> = (0..=n + 1).map(|d| pw(d as f64, alpha + 1.0)).collect();

    let mut traj = Trajectory::start(problem, *grid);
    for step in 0..n {
        let f = traj.node_f();
        let predictor_sum: f64 = (0..=step).map(|j| b[step - j] * f[j]).sum();
        let y_pred = problem.y0() + local * f[step] + pred_scale * predictor_sum;
        let f_pred = problem.rhs(grid.node(step + 1), y_pred);

        // a_0 = n^(α+1) − (n−α)(n+1)^α
        let s = step as f64;
        let mut corrector_sum = (p1[step] - (s - alpha) * pw(s + 1.0, alpha)) * f[0];
        for (j, fj) in f.iter().enumerate().take(step + 1).skip(1) {
            let d = step + 1 - j;
            corrector_sum += (p1[d + 1] - 2.0 * p1[d] + p1[d - 1]) * fj;
        }
        corrector_sum += f_pred;
        let y_next = problem.y0() + local * f_pred + corr_scale * corrector_sum;
        traj.push_node(problem, y_next);
    }
    traj
}

/// Explicit two-step Lagrange scheme.
pub fn solve_toufik_atangana(
    problem: &FractionalIvp,
    grid: &UniformGrid,
    normalization: Normalization,
) -> Trajectory {
    let alpha = problem.alpha();
    let n = grid.n_steps();
    let ab = normalization.value(alpha);
    let local = (1.0 - alpha) / ab;
    let scale = alpha / ab * grid.dt().powf(alpha) / gamma_unchecked(alpha + 2.0);

    // weight on f_k and on f_{k−1} at lag d = n − k
    let current: Vec<f64> = (0..=n)
        .map(|d| {
            let d = d as f64;
            pw(d + 1.0, alpha) * (d + 2.0 + alpha) - pw(d, alpha) * (d + 2.0 + 2.0 * alpha)
        })
        .collect();
    let previous: Vec<f64> = (0..=n)
        .map(|d| {
            let d = d as f64;
            pw(d + 1.0, alpha + 1.0) - pw(d, alpha) * (d + 1.0 + alpha)
        })
        .collect();

    let mut traj = Trajectory::start(problem, *grid);
    for step in 0..n {
        let f = traj.node_f();
        let mut sum = 0.0;
        for k in 0..=step {
            let d = step - k;
            let f_prev = if k == 0 { f[0] } else { f[k - 1] };
            sum += current[d] * f[k] - previous[d] * f_prev;
        }
        let y_next = problem.y0() + local * f[step] + scale * sum;
        traj.push_node(problem, y_next);
    }
    traj
}
