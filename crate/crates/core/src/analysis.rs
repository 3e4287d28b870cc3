//! Benchmark problems with closed-form solutions, error metrics and the
//! convergence-study driver.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;

use crate::baselines::{solve_baseline, BaselineKind};
use crate::error::{Error, Result};
use crate::problem::{FractionalIvp, Normalization, Trajectory, UniformGrid};
use crate::solver::{solve, SolverOptions};
use crate::special::{gamma, ml_two};

/// D^α y = t^n, y(0) = y0 on [0, 1].
pub fn example1_problem(alpha: f64, n: u32, y0: f64) -> Result<FractionalIvp> {
    if n == 0 {
        return Err(Error::InvalidProblem(
            "polynomial degree n must be positive".into(),
        ));
    }
    let exponent = n as i32;
    FractionalIvp::new(alpha, y0, 1.0, move |t, _| t.powi(exponent))
}

/// D^α y + y = t, y(0) = 0 on [0, 1].
pub fn example2_problem(alpha: f64) -> Result<FractionalIvp> {
    FractionalIvp::new(alpha, 0.0, 1.0, |t, y| t - y)
}

/// y(t) = y0 + (1−α)/M t^n + α Γ(n+1)/(M Γ(α+n+1)) t^(α+n).
pub fn exact_example1(
    alpha: f64,
    n: u32,
    y0: f64,
    normalization: Normalization,
    t: f64,
) -> Result<f64> {
    let m = normalization.value(alpha);
    let nf = n as f64;
    let coeff = alpha * gamma(nf + 1.0)? / (m * gamma(alpha + nf + 1.0)?);
    Ok(y0 + (1.0 - alpha) / m * t.powi(n as i32) + coeff * t.powf(alpha + nf))
}

/// y(t) = [(1−α) t E_{α,2}(z) + α t^(α+1) E_{α,α+2}(z)] / c,
/// with c = M(α) + 1 − α and z = −α t^α / c.
pub fn exact_example2(alpha: f64, normalization: Normalization, t: f64) -> Result<f64> {
    if t == 0.0 {
        return Ok(0.0);
    }
    let c = normalization.value(alpha) + 1.0 - alpha;
    let z = -alpha * t.powf(alpha) / c;
    let first = (1.0 - alpha) * t * ml_two(alpha, 2.0, z)?;
    let second = alpha * t.powf(alpha + 1.0) * ml_two(alpha, alpha + 2.0, z)?;
    Ok((first + second) / c)
}

/// The two benchmark problems of the convergence studies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Benchmark {
    /// Right-hand side t^n, y0 = 1.
    Example1 { n: u32 },
    /// Right-hand side t − y, y0 = 0.
    Example2,
}

impl Benchmark {
    pub fn problem(self, alpha: f64) -> Result<FractionalIvp> {
        match self {
            Benchmark::Example1 { n } => example1_problem(alpha, n, 1.0),
            Benchmark::Example2 => example2_problem(alpha),
        }
    }

    pub fn exact(self, alpha: f64, normalization: Normalization, t: f64) -> Result<f64> {
        match self {
            Benchmark::Example1 { n } => exact_example1(alpha, n, 1.0, normalization, t),
            Benchmark::Example2 => exact_example2(alpha, normalization, t),
        }
    }
}

/// max_{1≤i≤N} |exact(t_i) − y_i|; the initial node is excluded.
pub fn max_abs_error<E: Fn(f64) -> f64>(traj: &Trajectory, exact: E) -> f64 {
    try_max_abs_error(traj, |t| Ok(exact(t))).expect("infallible exact solution")
}

/// [`max_abs_error`] for exact solutions that can fail.
pub fn try_max_abs_error<E: Fn(f64) -> Result<f64>>(traj: &Trajectory, exact: E) -> Result<f64> {
    let mut worst = 0.0f64;
    for (t, y) in traj.points().skip(1) {
        let err = (exact(t)? - y).abs();
        // NaN must not be masked by max()
        if err.is_nan() {
            return Ok(f64::NAN);
        }
        worst = worst.max(err);
    }
    Ok(worst)
}

/// log₂(E(N/2) / E(N)).
pub fn eoc(error_half: f64, error_full: f64) -> Result<f64> {
    for e in [error_half, error_full] {
        if !(e > 0.0 && e.is_finite()) {
            return Err(Error::Domain {
                function: "eoc",
                value: e,
            });
        }
    }
    Ok((error_half / error_full).log2())
}

/// Any of the three schemes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scheme {
    Proposed,
    Baseline(BaselineKind),
}

impl Scheme {
    pub const ALL: [Scheme; 3] = [
        Scheme::Proposed,
        Scheme::Baseline(BaselineKind::BaleanuJajarmiPc),
        Scheme::Baseline(BaselineKind::ToufikAtangana),
    ];

    pub fn name(self) -> &'static str {
        match self {
            Scheme::Proposed => "proposed",
            Scheme::Baseline(kind) => kind.name(),
        }
    }

    /// Baselines ignore the corrector mode.
    pub fn solve(
        self,
        problem: &FractionalIvp,
        grid: &UniformGrid,
        options: &SolverOptions,
    ) -> Result<Trajectory> {
        match self {
            Scheme::Proposed => solve(problem, grid, options),
            Scheme::Baseline(kind) => {
                Ok(solve_baseline(kind, problem, grid, options.normalization))
            }
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Scheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "proposed" {
            return Ok(Scheme::Proposed);
        }
        s.parse().map(Scheme::Baseline).map_err(|_| {
            Error::InvalidOptions(format!(
                "unknown scheme '{s}' (expected proposed, baleanu_jajarmi or toufik_atangana)"
            ))
        })
    }
}

/// Result of one row of a convergence study.
#[derive(Debug, Clone, PartialEq)]
pub enum RowOutcome {
    Solved {
        max_abs_error: f64,
        /// Absent for the first row and whenever the previous row is not N/2
        /// or either error is zero.
        eoc: Option<f64>,
    },
    Failed(Error),
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceRecord {
    pub n_steps: usize,
    pub outcome: RowOutcome,
    /// Wall time around the solve only; informational.
    pub cpu_seconds: f64,
}

impl ConvergenceRecord {
    pub fn max_abs_error(&self) -> Option<f64> {
        match self.outcome {
            RowOutcome::Solved { max_abs_error, .. } => Some(max_abs_error),
            RowOutcome::Failed(_) => None,
        }
    }

    pub fn eoc(&self) -> Option<f64> {
        match self.outcome {
            RowOutcome::Solved { eoc, .. } => eoc,
            RowOutcome::Failed(_) => None,
        }
    }

    pub fn is_failed(&self) -> bool {
        matches!(self.outcome, RowOutcome::Failed(_))
    }
}

/// Solves `problem` for every N in `n_list` and tabulates E(N) and EOC.
///
/// Rows run in parallel; the output follows the order of `n_list`.
pub fn run_study<E>(
    problem: &FractionalIvp,
    exact: E,
    scheme: Scheme,
    n_list: &[usize],
    options: &SolverOptions,
) -> Result<Vec<ConvergenceRecord>>
where
    E: Fn(f64) -> Result<f64> + Sync,
{
    if n_list.is_empty() {
        return Err(Error::InvalidOptions(
            "study needs at least one grid size".into(),
        ));
    }
    if n_list.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidOptions(format!(
            "grid sizes must be strictly increasing, got {n_list:?}"
        )));
    }
    options.validate()?;

    let rows: Vec<(Result<f64>, f64)> = n_list
        .par_iter()
        .map(|&n| {
            let grid = match UniformGrid::for_problem(problem, n) {
                Ok(g) => g,
                Err(e) => return (Err(e), 0.0),
            };
            let start = Instant::now();
            let solved = scheme.solve(problem, &grid, options);
            let seconds = start.elapsed().as_secs_f64();
            (
                solved.and_then(|tr| try_max_abs_error(&tr, &exact)),
                seconds,
            )
        })
        .collect();

    let mut records: Vec<ConvergenceRecord> = Vec::with_capacity(rows.len());
    for (i, (error, cpu_seconds)) in rows.into_iter().enumerate() {
        let n_steps = n_list[i];
        let outcome = match error {
            Ok(max_abs_error) => {
                let eoc = records.last().and_then(|prev| match prev.outcome {
                    RowOutcome::Solved {
                        max_abs_error: e_half,
                        ..
                    } if prev.n_steps * 2 == n_steps => eoc(e_half, max_abs_error).ok(),
                    _ => None,
                });
                RowOutcome::Solved { max_abs_error, eoc }
            }
            Err(e) => RowOutcome::Failed(e),
        };
        records.push(ConvergenceRecord {
            n_steps,
            outcome,
            cpu_seconds,
        });
    }
    Ok(records)
}
