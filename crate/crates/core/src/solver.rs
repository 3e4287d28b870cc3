//! Three-stage Newton-interpolation predictor-corrector scheme.
//!
//! Each step m → m+1 runs
//!
//! 1. [`midpoint_value`]: explicit y_{m+1/2} from piecewise-linear
//!    interpolation of the corrected history plus a constant piece on
//!    [t_m, t_{m+1/2}];
//! 2. [`predictor_value`]: explicit y^P_{m+1} from the node/midpoint history
//!    with a linear piece on each first half-interval and a constant piece on
//!    each second half-interval;
//! 3. [`corrector_value`]: piecewise-quadratic interpolation through
//!    (t_j, t_{j+1/2}, t_{j+1}), with f(t_{m+1}, ·) resolved at the predictor
//!    (PECE) or by fixed-point sweeps.
//!
//! The corrector history Υ_{m−1} is a lag-weighted sum over all completed
//! segments. Its weights change with m, so it is re-summed each step from the
//! cached per-segment f differences: O(m) per step, O(N²) per solve.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::problem::{FractionalIvp, Normalization, Trajectory, UniformGrid};
use crate::weights::SchemeWeights;

/// How f(t_{m+1}, y_{m+1}) inside the corrector is resolved.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CorrectorMode {
    /// Evaluate once at the predictor value.
    #[default]
    Pece,
    /// Run k fixed-point sweeps starting from the predictor value.
    Iterate(usize),
}

impl fmt::Display for CorrectorMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CorrectorMode::Pece => f.write_str("pece"),
            CorrectorMode::Iterate(k) => write!(f, "iterate:{k}"),
        }
    }
}

impl FromStr for CorrectorMode {
    type Err = Error;

    /// Accepts `pece`, `iterate:K` or `iterate=K`.
    fn from_str(s: &str) -> Result<Self> {
        if s == "pece" {
            return Ok(CorrectorMode::Pece);
        }
        let count = s
            .strip_prefix("iterate:")
            .or_else(|| s.strip_prefix("iterate="))
            .ok_or_else(|| {
                Error::InvalidOptions(format!(
                    "unknown corrector mode '{s}' (expected pece or iterate:K)"
                ))
            })?;
        let k: usize = count
            .parse()
            .map_err(|_| Error::InvalidOptions(format!("bad iteration count in '{s}'")))?;
        if k == 0 {
            return Err(Error::InvalidOptions(
                "iterate mode needs at least one sweep".into(),
            ));
        }
        Ok(CorrectorMode::Iterate(k))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SolverOptions {
    pub corrector_mode: CorrectorMode,
    pub normalization: Normalization,
}

impl SolverOptions {
    pub fn new(corrector_mode: CorrectorMode, normalization: Normalization) -> Result<Self> {
        let opts = Self {
            corrector_mode,
            normalization,
        };
        opts.validate()?;
        Ok(opts)
    }

    pub fn validate(&self) -> Result<()> {
        match self.corrector_mode {
            CorrectorMode::Iterate(0) => Err(Error::InvalidOptions(
                "iterate mode needs at least one sweep".into(),
            )),
            _ => Ok(()),
        }
    }
}

/// f-differences of one completed segment [t_j, t_{j+1}].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SegmentTerms {
    /// f_j
    pub node: f64,
    /// f_{j+1/2} − f_j
    pub first_diff: f64,
    /// f_j − 2 f_{j+1/2} + f_{j+1}
    pub second_diff: f64,
}

/// Cached [`SegmentTerms`] for the corrector history sum.
#[derive(Debug, Clone, Default)]
pub struct HistoryTerms {
    segments: Vec<SegmentTerms>,
}

impl HistoryTerms {
    pub fn with_capacity(n: usize) -> Self {
        Self {
            segments: Vec::with_capacity(n),
        }
    }

    pub fn len(&self) -> usize {
        self.segments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.segments.is_empty()
    }

    pub fn segments(&self) -> &[SegmentTerms] {
        &self.segments
    }

    /// Records the next segment once node j+1 of `traj` has been corrected.
    pub fn extend_from(&mut self, traj: &Trajectory) {
        let j = self.segments.len();
        let f = traj.node_f();
        let fm = traj.mid_f();
        assert!(
            j + 1 < f.len() && j < fm.len(),
            "segment {j} is not complete in the trajectory"
        );
        self.segments.push(SegmentTerms {
            node: f[j],
            first_diff: fm[j] - f[j],
            second_diff: f[j] - 2.0 * fm[j] + f[j + 1],
        });
    }

    /// Υ_{m−1}: the corrector memory over segments 0..m at target node m+1,
    /// without the α/M(α) factor. Empty (zero) for m = 0.
    pub fn sum(&self, weights: &SchemeWeights, m: usize) -> f64 {
        assert!(
            m <= self.segments.len(),
            "history has only {} segments",
            self.len()
        );
        let (mut rect, mut lin, mut quad) = (0.0, 0.0, 0.0);
        for (j, seg) in self.segments[..m].iter().enumerate() {
            let d = m - j;
            rect += seg.node * weights.rect(d);
            lin += seg.first_diff * weights.lin(d);
            quad += seg.second_diff * weights.quad(d);
        }
        weights.rect_scale() * rect
            + 2.0 * weights.lin_scale() * lin
            + 2.0 * weights.quad_scale() * quad
    }
}

/// y_{j+1/2}; needs nodes 0..=j in `traj`.
pub fn midpoint_value(
    traj: &Trajectory,
    problem: &FractionalIvp,
    weights: &SchemeWeights,
    j: usize,
) -> f64 {
    let f = traj.node_f();
    assert!(j < f.len(), "midpoint {j} needs node {j}");
    let (mut rect, mut lin) = (0.0, 0.0);
    for k in 0..j {
        let d = j - k;
        rect += f[k] * weights.rect_half(d);
        lin += (f[k + 1] - f[k]) * weights.lin_half(d);
    }
    let memory =
        weights.rect_scale() * (rect + weights.last_half() * f[j]) + weights.lin_scale() * lin;
    problem.y0() + weights.local() * f[j] + weights.memory() * memory
}

/// y^P_{m+1}; needs nodes 0..=m and midpoints 0..=m.
pub fn predictor_value(
    traj: &Trajectory,
    problem: &FractionalIvp,
    weights: &SchemeWeights,
    m: usize,
) -> f64 {
    let f = traj.node_f();
    let fm = traj.mid_f();
    assert!(
        m < f.len() && m < fm.len(),
        "predictor {m} needs node and midpoint {m}"
    );
    let (mut halves, mut linear) = (0.0, 0.0);
    for j in 0..=m {
        let d = m - j;
        halves += f[j] * weights.first_half(d) + fm[j] * weights.second_half(d);
        linear += (fm[j] - f[j]) * weights.coeff_c(d);
    }
    let memory = weights.rect_scale() * halves + 2.0 * weights.lin_scale() * linear;
    problem.y0() + weights.local() * fm[m] + weights.memory() * memory
}

/// y_{m+1} from the corrector, given the predictor value.
///
/// `history` must hold segments 0..m. In [`CorrectorMode::Iterate`] mode a
/// sweep whose magnitude exceeds 1e6 · max(|y_pred|, 1) (or is not finite)
/// aborts with [`Error::CorrectorDivergence`].
pub fn corrector_value(
    traj: &Trajectory,
    problem: &FractionalIvp,
    weights: &SchemeWeights,
    history: &HistoryTerms,
    mode: CorrectorMode,
    m: usize,
    y_pred: f64,
) -> Result<f64> {
    let f = traj.node_f();
    let fm = traj.mid_f();
    assert!(
        m < f.len() && m < fm.len(),
        "corrector {m} needs node and midpoint {m}"
    );

    let q0 = weights.quad(0);
    let newest = weights.rect_scale() * f[m]
        + 2.0 * weights.lin_scale() * (fm[m] - f[m])
        + 2.0 * weights.quad_scale() * q0 * (f[m] - 2.0 * fm[m]);
    let base = problem.y0() + weights.memory() * (history.sum(weights, m) + newest);
    // f(t_{m+1}, y_{m+1}) enters both the local term and the last quadratic piece
    let implicit = weights.local() + weights.memory() * 2.0 * weights.quad_scale() * q0;

    let t_next = traj.grid().node(m + 1);
    match mode {
        CorrectorMode::Pece => Ok(base + implicit * problem.rhs(t_next, y_pred)),
        CorrectorMode::Iterate(sweeps) => {
            let limit = 1e6 * y_pred.abs().max(1.0);
            let mut y = y_pred;
            for _ in 0..sweeps {
                y = base + implicit * problem.rhs(t_next, y);
                if !y.is_finite() || y.abs() > limit {
                    return Err(Error::CorrectorDivergence {
                        step: m + 1,
                        magnitude: y.abs(),
                    });
                }
            }
            Ok(y)
        }
    }
}

/// Solves `problem` on `grid` with the midpoint/predictor/corrector scheme.
pub fn solve(
    problem: &FractionalIvp,
    grid: &UniformGrid,
    options: &SolverOptions,
) -> Result<Trajectory> {
    options.validate()?;
    let n = grid.n_steps();
    let weights = SchemeWeights::new(problem.alpha(), options.normalization, grid.dt(), n);
    let mut traj = Trajectory::start(problem, *grid);
    let mut history = HistoryTerms::with_capacity(n);

    for m in 0..n {
        let y_mid = midpoint_value(&traj, problem, &weights, m);
        traj.push_midpoint(problem, y_mid);
        let y_pred = predictor_value(&traj, problem, &weights, m);
        let y_next = corrector_value(
            &traj,
            problem,
            &weights,
            &history,
            options.corrector_mode,
            m,
            y_pred,
        )?;
        traj.push_node(problem, y_next);
        history.extend_from(&traj);
    }
    Ok(traj)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn problem(
        alpha: f64,
        y0: f64,
        f: impl Fn(f64, f64) -> f64 + Send + Sync + 'static,
    ) -> FractionalIvp {
        FractionalIvp::new(alpha, y0, 1.0, f).unwrap()
    }

    #[test]
    fn corrector_mode_parsing() {
        assert_eq!(
            "pece".parse::<CorrectorMode>().unwrap(),
            CorrectorMode::Pece
        );
        assert_eq!(
            "iterate:3".parse::<CorrectorMode>().unwrap(),
            CorrectorMode::Iterate(3)
        );
        assert_eq!(
            "iterate=2".parse::<CorrectorMode>().unwrap(),
            CorrectorMode::Iterate(2)
        );
        assert!("iterate:0".parse::<CorrectorMode>().is_err());
        assert!("newton".parse::<CorrectorMode>().is_err());
        assert!(SolverOptions::new(CorrectorMode::Iterate(0), Normalization::Unit).is_err());
    }

    #[test]
    fn zero_rhs_keeps_initial_value() {
        let p = problem(0.6, 2.5, |_, _| 0.0);
        let grid = UniformGrid::new(1.0, 7).unwrap();
        let w = SchemeWeights::new(0.6, Normalization::Unit, grid.dt(), 7);
        let mut tr = Trajectory::start(&p, grid);
        assert_eq!(midpoint_value(&tr, &p, &w, 0), 2.5);
        tr.push_midpoint(&p, 2.5);
        assert_eq!(predictor_value(&tr, &p, &w, 0), 2.5);
        let h = HistoryTerms::default();
        assert_eq!(
            corrector_value(&tr, &p, &w, &h, CorrectorMode::Pece, 0, 2.5).unwrap(),
            2.5
        );

        let tr = solve(&p, &grid, &SolverOptions::default()).unwrap();
        assert!(tr.node_values().iter().all(|&y| y == 2.5));
        assert!(tr.mid_values().iter().all(|&y| y == 2.5));
    }

    #[test]
    fn single_step_grid() {
        let p = problem(0.4, -1.0, |_, _| 0.0);
        let tr = solve(
            &p,
            &UniformGrid::new(1.0, 1).unwrap(),
            &SolverOptions::default(),
        )
        .unwrap();
        assert_eq!(tr.node_values(), &[-1.0, -1.0]);
        assert_eq!(tr.mid_values(), &[-1.0]);
    }

    #[test]
    fn classical_limit_first_stages() {
        let p = problem(1.0, 3.0, |_, _| 1.0);
        let grid = UniformGrid::new(1.0, 10).unwrap();
        let w = SchemeWeights::new(1.0, Normalization::Unit, grid.dt(), 10);
        let mut tr = Trajectory::start(&p, grid);
        let mid = midpoint_value(&tr, &p, &w, 0);
        assert!((mid - 3.05).abs() < 1e-15);
        tr.push_midpoint(&p, mid);
        let pred = predictor_value(&tr, &p, &w, 0);
        assert!((pred - 3.1).abs() < 1e-15);
    }

    #[test]
    fn midpoint_first_step_formula() {
        let (a, y0, c) = (0.35, 0.5, -2.0);
        let p = problem(a, y0, move |_, _| c);
        let grid = UniformGrid::new(1.0, 8).unwrap();
        let norm = Normalization::GammaWeighted;
        let w = SchemeWeights::new(a, norm, grid.dt(), 8);
        let tr = Trajectory::start(&p, grid);
        let ab = norm.value(a);
        let expected = y0
            + ((1.0 - a) / ab
                + a * (grid.dt() / 2.0).powf(a) / (ab * crate::special::gamma(a + 1.0).unwrap()))
                * c;
        assert!((midpoint_value(&tr, &p, &w, 0) - expected).abs() < 1e-15);
    }

    #[test]
    fn iterate_mode_converges_to_fixed_point() {
        let p = problem(0.5, 1.0, |_, y| -y);
        let grid = UniformGrid::new(1.0, 20).unwrap();
        let one = solve(
            &p,
            &grid,
            &SolverOptions::new(CorrectorMode::Iterate(1), Normalization::Unit).unwrap(),
        )
        .unwrap();
        let pece = solve(&p, &grid, &SolverOptions::default()).unwrap();
        assert_eq!(one, pece);
        let many = solve(
            &p,
            &grid,
            &SolverOptions::new(CorrectorMode::Iterate(40), Normalization::Unit).unwrap(),
        )
        .unwrap();
        assert!(many.node_values().iter().all(|y| y.is_finite()));
    }

    #[test]
    fn iterate_mode_reports_divergence() {
        // implicit weight ≈ 0.9 makes y ← base + 0.9·1e3·y blow up
        let p = problem(0.1, 1.0, |_, y| 1e3 * y);
        let grid = UniformGrid::new(1.0, 4).unwrap();
        let opts = SolverOptions::new(CorrectorMode::Iterate(50), Normalization::Unit).unwrap();
        let err = solve(&p, &grid, &opts).unwrap_err();
        assert!(matches!(err, Error::CorrectorDivergence { step: 1, .. }));
    }
}
