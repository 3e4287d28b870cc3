use thiserror::Error;

/// Errors raised by the special functions, quadrature and solvers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{function}: argument {value} is outside the domain")]
    Domain { function: &'static str, value: f64 },

    #[error("{function}({value}) overflows f64")]
    Overflow { function: &'static str, value: f64 },

    #[error("{function}: series did not converge within {terms} terms")]
    SeriesNonConvergence {
        function: &'static str,
        terms: usize,
    },

    #[error("adaptive quadrature stopped after {subdivisions} subdivisions with error estimate {estimate:e} (target {target:e})")]
    QuadratureNonConvergence {
        subdivisions: usize,
        estimate: f64,
        target: f64,
    },

    #[error("corrector iteration diverged at step {step} (|y| = {magnitude:e})")]
    CorrectorDivergence { step: usize, magnitude: f64 },

    #[error("invalid problem: {0}")]
    InvalidProblem(String),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("invalid options: {0}")]
    InvalidOptions(String),
}

pub type Result<T> = std::result::Result<T, Error>;
