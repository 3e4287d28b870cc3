//! Predictor-corrector solver for fractional initial value problems with the
//! Atangana-Baleanu-Caputo derivative
//!
//! ```text
//! ABC D^α y(t) = f(t, y(t)),  y(0) = y0,  0 < α ≤ 1.
//! ```
//!
//! The problem is rewritten with the AB fractional integral and discretized
//! on a uniform grid with an auxiliary midpoint in every step. A piecewise
//! quadratic Newton interpolant through (t_j, t_{j+1/2}, t_{j+1}) gives the
//! corrector; piecewise linear interpolants give the explicit midpoint and
//! predictor stages. All kernel integrals are evaluated in closed form.
//!
//! Modules:
//!
//! - [`special`]: Gamma and Mittag-Leffler functions.
//! - [`problem`]: [`FractionalIvp`], [`UniformGrid`], [`Normalization`],
//!   [`Trajectory`] and the reference [`ab_integral`].
//! - [`weights`]: closed-form kernel moments and lag tables.
//! - [`solver`]: the midpoint/predictor/corrector scheme.
//! - [`baselines`]: fractional Adams and two-step Lagrange schemes for comparison.
//! - [`analysis`]: benchmark problems, exact solutions, E(N), EOC and studies.
//! - [`quadrature`]: adaptive Gauss-Kronrod reference quadrature.
//!
//! ```
//! use fracpc::{analysis, solve, SolverOptions, UniformGrid, Normalization};
//!
//! let problem = analysis::example1_problem(0.5, 2, 1.0).unwrap();
//! let grid = UniformGrid::for_problem(&problem, 40).unwrap();
//! let traj = solve(&problem, &grid, &SolverOptions::default()).unwrap();
//! let err = analysis::max_abs_error(&traj, |t| {
//!     analysis::exact_example1(0.5, 2, 1.0, Normalization::Unit, t).unwrap()
//! });
//! assert!(err < 1e-13);
//! ```

pub mod analysis;
pub mod baselines;
pub mod error;
pub mod problem;
pub mod quadrature;
pub mod solver;
pub mod special;
pub mod weights;

pub use analysis::{run_study, ConvergenceRecord, RowOutcome, Scheme};
pub use baselines::BaselineKind;
pub use error::{Error, Result};
pub use problem::{ab_integral, FractionalIvp, Normalization, Rhs, Trajectory, UniformGrid};
pub use solver::{solve, CorrectorMode, SolverOptions};
pub use weights::SchemeWeights;
