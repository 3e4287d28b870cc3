//! Problem definition, grid, normalization and trajectory storage.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::quadrature::{integrate_weakly_singular, QuadratureOptions};
use crate::special::gamma_unchecked;

/// Right-hand side f(t, y).
pub type Rhs = Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>;

/// The normalization function M(α) multiplying the ABC operators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Normalization {
    /// M(α) = 1.
    #[default]
    Unit,
    /// M(α) = 1 − α + α/Γ(α).
    GammaWeighted,
}

impl Normalization {
    /// M(α) for α ∈ [0, 1].
    pub fn value(self, alpha: f64) -> f64 {
        match self {
            Normalization::Unit => 1.0,
            Normalization::GammaWeighted => {
                if alpha == 0.0 {
                    1.0
                } else {
                    1.0 - alpha + alpha / gamma_unchecked(alpha)
                }
            }
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Normalization::Unit => "unit",
            Normalization::GammaWeighted => "gamma_weighted",
        }
    }
}

impl fmt::Display for Normalization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Normalization {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "unit" => Ok(Normalization::Unit),
            "gamma_weighted" | "gamma-weighted" => Ok(Normalization::GammaWeighted),
            other => Err(Error::InvalidOptions(format!(
                "unknown normalization '{other}' (expected unit or gamma_weighted)"
            ))),
        }
    }
}

/// ABC-derivative initial value problem D^α y = f(t, y), y(0) = y0 on (0, T].
#[derive(Clone)]
pub struct FractionalIvp {
    alpha: f64,
    y0: f64,
    t_end: f64,
    rhs: Rhs,
}

impl FractionalIvp {
    pub fn new<F>(alpha: f64, y0: f64, t_end: f64, rhs: F) -> Result<Self>
    where
        F: Fn(f64, f64) -> f64 + Send + Sync + 'static,
    {
        Self::from_rhs(alpha, y0, t_end, Arc::new(rhs))
    }

    pub fn from_rhs(alpha: f64, y0: f64, t_end: f64, rhs: Rhs) -> Result<Self> {
        if !(alpha > 0.0 && alpha <= 1.0) {
            return Err(Error::InvalidProblem(format!(
                "alpha must lie in (0, 1], got {alpha}"
            )));
        }
        if !(t_end > 0.0 && t_end.is_finite()) {
            return Err(Error::InvalidProblem(format!(
                "t_end must be positive and finite, got {t_end}"
            )));
        }
        if !y0.is_finite() {
            return Err(Error::InvalidProblem(format!(
                "y0 must be finite, got {y0}"
            )));
        }
        Ok(Self {
            alpha,
            y0,
            t_end,
            rhs,
        })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn y0(&self) -> f64 {
        self.y0
    }

    pub fn t_end(&self) -> f64 {
        self.t_end
    }

    #[inline]
    pub fn rhs(&self, t: f64, y: f64) -> f64 {
        (self.rhs)(t, y)
    }

    /// Same problem with a different fractional order.
    pub fn with_alpha(&self, alpha: f64) -> Result<Self> {
        Self::from_rhs(alpha, self.y0, self.t_end, Arc::clone(&self.rhs))
    }
}

impl fmt::Debug for FractionalIvp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FractionalIvp")
            .field("alpha", &self.alpha)
            .field("y0", &self.y0)
            .field("t_end", &self.t_end)
            .finish_non_exhaustive()
    }
}

/// N equal steps over [0, T] with midpoints.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UniformGrid {
    n_steps: usize,
    dt: f64,
    t_end: f64,
}

impl UniformGrid {
    pub fn new(t_end: f64, n_steps: usize) -> Result<Self> {
        if n_steps == 0 {
            return Err(Error::InvalidGrid("n_steps must be at least 1".into()));
        }
        if !(t_end > 0.0 && t_end.is_finite()) {
            return Err(Error::InvalidGrid(format!(
                "t_end must be positive and finite, got {t_end}"
            )));
        }
        let dt = t_end / n_steps as f64;
        if !dt.is_normal() {
            return Err(Error::InvalidGrid(format!(
                "step size underflows for t_end = {t_end}, n_steps = {n_steps}"
            )));
        }
        Ok(Self { n_steps, dt, t_end })
    }

    pub fn for_problem(problem: &FractionalIvp, n_steps: usize) -> Result<Self> {
        Self::new(problem.t_end(), n_steps)
    }

    pub fn n_steps(&self) -> usize {
        self.n_steps
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn t_end(&self) -> f64 {
        self.t_end
    }

    /// t_j; the last node is exactly `t_end`.
    #[inline]
    pub fn node(&self, j: usize) -> f64 {
        (j as f64 / self.n_steps as f64) * self.t_end
    }

    /// t_{j+1/2}.
    #[inline]
    pub fn midpoint(&self, j: usize) -> f64 {
        ((2 * j + 1) as f64 / (2 * self.n_steps) as f64) * self.t_end
    }

    pub fn nodes(&self) -> impl Iterator<Item = f64> + '_ {
        (0..=self.n_steps).map(|j| self.node(j))
    }
}

/// Node values y_j, midpoint values y_{j+1/2}, and the cached f at each.
///
/// Baseline schemes fill nodes only; the midpoint vectors stay empty.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    grid: UniformGrid,
    node_values: Vec<f64>,
    node_f: Vec<f64>,
    mid_values: Vec<f64>,
    mid_f: Vec<f64>,
}

impl Trajectory {
    /// Trajectory holding only the initial node.
    pub fn start(problem: &FractionalIvp, grid: UniformGrid) -> Self {
        let n = grid.n_steps();
        let mut node_values = Vec::with_capacity(n + 1);
        let mut node_f = Vec::with_capacity(n + 1);
        node_values.push(problem.y0());
        node_f.push(problem.rhs(0.0, problem.y0()));
        Self {
            grid,
            node_values,
            node_f,
            mid_values: Vec::with_capacity(n),
            mid_f: Vec::with_capacity(n),
        }
    }

    /// Appends y_{j+1} and caches f(t_{j+1}, y_{j+1}).
    pub fn push_node(&mut self, problem: &FractionalIvp, y: f64) {
        let j = self.node_values.len();
        assert!(j <= self.grid.n_steps(), "trajectory already complete");
        let t = self.grid.node(j);
        self.node_values.push(y);
        self.node_f.push(problem.rhs(t, y));
    }

    /// Appends y_{j+1/2} and caches f(t_{j+1/2}, y_{j+1/2}).
    pub fn push_midpoint(&mut self, problem: &FractionalIvp, y: f64) {
        let j = self.mid_values.len();
        assert!(
            j < self.node_values.len() && j < self.grid.n_steps(),
            "midpoint {j} requested before node {j}"
        );
        let t = self.grid.midpoint(j);
        self.mid_values.push(y);
        self.mid_f.push(problem.rhs(t, y));
    }

    pub fn grid(&self) -> &UniformGrid {
        &self.grid
    }

    pub fn node_values(&self) -> &[f64] {
        &self.node_values
    }

    pub fn node_f(&self) -> &[f64] {
        &self.node_f
    }

    pub fn mid_values(&self) -> &[f64] {
        &self.mid_values
    }

    pub fn mid_f(&self) -> &[f64] {
        &self.mid_f
    }

    pub fn is_complete(&self) -> bool {
        self.node_values.len() == self.grid.n_steps() + 1
    }

    /// (t_j, y_j) pairs.
    pub fn points(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.node_values
            .iter()
            .enumerate()
            .map(|(j, &y)| (self.grid.node(j), y))
    }
}

/// AB fractional integral of `g` at time `t`:
///
/// ```text
/// (1−α)/M(α) · g(t) + α/(M(α) Γ(α)) · ∫_0^t g(s) (t−s)^(α−1) ds
/// ```
///
/// α = 0 returns g(t) and α = 1 the classical integral. Evaluated with
/// adaptive quadrature; intended as a reference, not for bulk use.
pub fn ab_integral<G: Fn(f64) -> f64>(
    alpha: f64,
    normalization: Normalization,
    g: G,
    t: f64,
) -> Result<f64> {
    if !(0.0..=1.0).contains(&alpha) {
        return Err(Error::Domain {
            function: "ab_integral",
            value: alpha,
        });
    }
    if !(t >= 0.0 && t.is_finite()) {
        return Err(Error::Domain {
            function: "ab_integral",
            value: t,
        });
    }
    if alpha == 0.0 {
        return Ok(g(t));
    }
    let m = normalization.value(alpha);
    let local = (1.0 - alpha) / m * g(t);
    if t == 0.0 {
        return Ok(local);
    }
    let convolution =
        integrate_weakly_singular(&g, 0.0, t, t, alpha, &QuadratureOptions::default())?;
    Ok(local + alpha / (m * gamma_unchecked(alpha)) * convolution)
}

#[cfg(test)]
#[allow(clippy::excessive_precision)]
mod tests {
    use super::*;

    #[test]
    fn normalization_endpoints() {
        for n in [Normalization::Unit, Normalization::GammaWeighted] {
            assert_eq!(n.value(0.0), 1.0);
            assert!((n.value(1.0) - 1.0).abs() < 1e-15);
            for a in [0.1, 0.5, 0.9] {
                assert!(n.value(a) > 0.0);
            }
        }
        assert_eq!(
            "gamma_weighted".parse::<Normalization>().unwrap(),
            Normalization::GammaWeighted
        );
        assert!("other".parse::<Normalization>().is_err());
    }

    #[test]
    fn problem_validation() {
        assert!(FractionalIvp::new(0.0, 1.0, 1.0, |_, _| 0.0).is_err());
        assert!(FractionalIvp::new(1.1, 1.0, 1.0, |_, _| 0.0).is_err());
        assert!(FractionalIvp::new(1.0, 1.0, 1.0, |_, _| 0.0).is_ok());
        assert!(FractionalIvp::new(0.5, 1.0, 0.0, |_, _| 0.0).is_err());
        assert!(FractionalIvp::new(0.5, 1.0, f64::INFINITY, |_, _| 0.0).is_err());
        assert!(FractionalIvp::new(0.5, f64::NAN, 1.0, |_, _| 0.0).is_err());
    }

    #[test]
    fn grid_layout() {
        let g = UniformGrid::new(1.0, 40).unwrap();
        assert!((g.dt() * 40.0 - 1.0).abs() <= f64::EPSILON);
        assert_eq!(g.node(0), 0.0);
        assert_eq!(g.node(40), 1.0);
        assert!((g.midpoint(3) - 3.5 / 40.0).abs() < 1e-16);
        let nodes: Vec<f64> = g.nodes().collect();
        assert_eq!(nodes.len(), 41);
        assert!(nodes.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn grid_rejects_degenerate() {
        assert!(UniformGrid::new(1.0, 0).is_err());
        assert!(UniformGrid::new(1e-320, 1_000_000).is_err());
        assert!(UniformGrid::new(-1.0, 5).is_err());
        assert!(UniformGrid::new(1.0, 1).is_ok());
    }

    #[test]
    fn trajectory_bookkeeping() {
        let p = FractionalIvp::new(0.5, 2.0, 1.0, |t, y| t + y).unwrap();
        let g = UniformGrid::new(1.0, 2).unwrap();
        let mut tr = Trajectory::start(&p, g);
        assert_eq!(tr.node_values(), &[2.0]);
        assert_eq!(tr.node_f(), &[2.0]);
        tr.push_midpoint(&p, 3.0);
        assert_eq!(tr.mid_f(), &[3.25]);
        tr.push_node(&p, 4.0);
        tr.push_node(&p, 5.0);
        assert!(tr.is_complete());
        assert_eq!(tr.node_f(), &[2.0, 4.5, 6.0]);
    }

    #[test]
    fn ab_integral_limits() {
        let v = ab_integral(1.0, Normalization::Unit, |_| 1.0, 2.0).unwrap();
        assert!((v - 2.0).abs() < 1e-13);
        let v = ab_integral(0.0, Normalization::Unit, |s| s.sin() + 3.0, 0.7).unwrap();
        assert_eq!(v, 0.7f64.sin() + 3.0);
    }

    #[test]
    fn ab_integral_half_order_linear() {
        // 0.5 + 0.5/Γ(1/2) · B(2, 1/2), 50-digit reference
        let v = ab_integral(0.5, Normalization::Unit, |s| s, 1.0).unwrap();
        assert!((v - 0.876_126_389_031_837_52).abs() < 1e-13);
    }

    #[test]
    fn ab_integral_rejects_bad_arguments() {
        assert!(ab_integral(1.5, Normalization::Unit, |s| s, 1.0).is_err());
        assert!(ab_integral(0.5, Normalization::Unit, |s| s, -1.0).is_err());
    }
}
