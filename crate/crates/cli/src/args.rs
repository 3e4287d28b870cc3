use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "fracpc",
    version,
    about = "Predictor-corrector solver for ABC fractional IVPs"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve one problem for a single (alpha, N, scheme) and write solution.csv
    Solve(RunArgs),
    /// Convergence study over a doubling chain of N; writes study.csv
    Study(RunArgs),
    /// Errors of several schemes and orders at fixed N; writes compare.csv and curve_*.csv
    Compare(RunArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ProblemKind {
    /// D^α y = t^n, y(0) = 1
    Example1,
    /// D^α y = t − y, y(0) = 0
    Example2,
    /// Right-hand side given by --rhs
    Custom,
}

impl ProblemKind {
    pub fn from_name(s: &str) -> Option<Self> {
        <Self as ValueEnum>::from_str(s, true).ok()
    }
}

/// Options shared by all subcommands. Every option may also come from the
/// `--config` file; values given here take precedence.
#[derive(Debug, Clone, Default, Args)]
pub struct RunArgs {
    /// key=value file with defaults for any of the options below
    #[arg(long, value_name = "PATH")]
    pub config: Option<PathBuf>,

    #[arg(long, value_enum)]
    pub problem: Option<ProblemKind>,

    /// Polynomial degree n of example1
    #[arg(long, value_name = "N")]
    pub n_poly: Option<u32>,

    /// Fractional order in (0, 1]; repeatable
    #[arg(long, value_name = "ALPHA")]
    pub alpha: Vec<f64>,

    /// Number of grid steps N; repeatable
    #[arg(long, value_name = "N")]
    pub steps: Vec<usize>,

    /// proposed, baleanu_jajarmi or toufik_atangana; repeatable
    #[arg(long, value_name = "NAME")]
    pub scheme: Vec<String>,

    /// unit or gamma_weighted
    #[arg(long, value_name = "KIND")]
    pub normalization: Option<String>,

    /// pece or iterate:K
    #[arg(long, value_name = "MODE")]
    pub corrector: Option<String>,

    /// Output directory
    #[arg(long, value_name = "DIR")]
    pub out: Option<PathBuf>,

    /// Right-hand side f(t, y) of a custom problem, e.g. "t - y" or "sin(t) * y"
    #[arg(long, value_name = "EXPR")]
    pub rhs: Option<String>,

    /// Initial value of a custom problem
    #[arg(long, value_name = "Y0", allow_negative_numbers = true)]
    pub y0: Option<f64>,

    /// Final time of a custom problem
    #[arg(long, value_name = "T")]
    pub t_end: Option<f64>,
}
