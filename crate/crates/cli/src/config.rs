//! Run configuration assembled from a key=value file and command-line flags.
//!
//! File format: one `key = value` per line, `#` starts a comment. Keys are
//! the long flag names (`n-poly` and `n_poly` both work). List-valued keys
//! (`alpha`, `steps`, `scheme`) take comma-separated values and accumulate
//! over repeated lines. A list given on the command line replaces the file's
//! list as a whole.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use exmex::prelude::*;
use fracpc::analysis::Benchmark;
use fracpc::{CorrectorMode, FractionalIvp, Normalization, Rhs, Scheme, SolverOptions};

use crate::args::{ProblemKind, RunArgs};
use crate::error::{CliError, CliResult};

const DEFAULT_N_POLY: u32 = 3;

#[derive(Debug, Clone)]
pub enum ProblemSpec {
    Benchmark(Benchmark),
    Custom { rhs: String, y0: f64, t_end: f64 },
}

impl ProblemSpec {
    pub fn benchmark(&self) -> Option<Benchmark> {
        match self {
            ProblemSpec::Benchmark(b) => Some(*b),
            ProblemSpec::Custom { .. } => None,
        }
    }

    pub fn build(&self, alpha: f64) -> CliResult<FractionalIvp> {
        match self {
            ProblemSpec::Benchmark(b) => Ok(b.problem(alpha)?),
            ProblemSpec::Custom { rhs, y0, t_end } => {
                let f = compile_rhs(rhs)?;
                FractionalIvp::from_rhs(alpha, *y0, *t_end, f).map_err(config_from_core)
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub problem: ProblemSpec,
    pub alphas: Vec<f64>,
    pub steps: Vec<usize>,
    pub schemes: Vec<Scheme>,
    pub options: SolverOptions,
    pub out: PathBuf,
}

fn config_from_core(e: fracpc::Error) -> CliError {
    CliError::Config(e.to_string())
}

/// Compiles an expression in `t` and `y` into a right-hand side.
pub fn compile_rhs(expr: &str) -> CliResult<Rhs> {
    let parsed = exmex::parse::<f64>(expr)
        .map_err(|e| CliError::Config(format!("cannot parse rhs '{expr}': {e}")))?;
    let mut slots = Vec::new();
    for name in parsed.var_names() {
        match name.as_str() {
            "t" => slots.push(0usize),
            "y" => slots.push(1usize),
            other => {
                return Err(CliError::Config(format!(
                    "rhs may only use the variables t and y, found '{other}'"
                )))
            }
        }
    }
    // probe once so evaluation errors surface as config errors
    let probe: Vec<f64> = slots.iter().map(|_| 0.5).collect();
    parsed
        .eval(&probe)
        .map_err(|e| CliError::Config(format!("cannot evaluate rhs '{expr}': {e}")))?;
    Ok(Arc::new(move |t: f64, y: f64| {
        let tv = [t, y];
        let vars: Vec<f64> = slots.iter().map(|&i| tv[i]).collect();
        parsed.eval(&vars).unwrap_or(f64::NAN)
    }))
}

#[derive(Debug, Default)]
struct FileValues {
    problem: Option<ProblemKind>,
    n_poly: Option<u32>,
    alpha: Vec<f64>,
    steps: Vec<usize>,
    scheme: Vec<String>,
    normalization: Option<String>,
    corrector: Option<String>,
    out: Option<PathBuf>,
    rhs: Option<String>,
    y0: Option<f64>,
    t_end: Option<f64>,
}

fn parse_num<T: std::str::FromStr>(path: &Path, line: usize, key: &str, raw: &str) -> CliResult<T> {
    raw.trim().parse().map_err(|_| {
        CliError::Config(format!(
            "{}:{line}: invalid value '{raw}' for {key}",
            path.display()
        ))
    })
}

fn read_file(path: &Path) -> CliResult<FileValues> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::ConfigFile {
        path: path.to_path_buf(),
        source,
    })?;
    let mut v = FileValues::default();
    for (idx, raw_line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw_line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(CliError::Config(format!(
                "{}:{line_no}: expected key = value",
                path.display()
            )));
        };
        let key = key.trim().replace('_', "-");
        let value = value.trim();
        let items = || value.split(',').map(str::trim).filter(|s| !s.is_empty());
        match key.as_str() {
            "problem" => {
                v.problem = Some(ProblemKind::from_name(value).ok_or_else(|| {
                    CliError::Config(format!(
                        "{}:{line_no}: unknown problem '{value}'",
                        path.display()
                    ))
                })?)
            }
            "n-poly" => v.n_poly = Some(parse_num(path, line_no, &key, value)?),
            "alpha" => {
                for item in items() {
                    v.alpha.push(parse_num(path, line_no, &key, item)?);
                }
            }
            "steps" => {
                for item in items() {
                    v.steps.push(parse_num(path, line_no, &key, item)?);
                }
            }
            "scheme" => v.scheme.extend(items().map(String::from)),
            "normalization" => v.normalization = Some(value.to_string()),
            "corrector" => v.corrector = Some(value.to_string()),
            "out" => v.out = Some(PathBuf::from(value)),
            "rhs" => v.rhs = Some(value.to_string()),
            "y0" => v.y0 = Some(parse_num(path, line_no, &key, value)?),
            "t-end" => v.t_end = Some(parse_num(path, line_no, &key, value)?),
            other => {
                return Err(CliError::Config(format!(
                    "{}:{line_no}: unknown key '{other}'",
                    path.display()
                )))
            }
        }
    }
    Ok(v)
}

fn pick_list<T>(flags: Vec<T>, file: Vec<T>) -> Vec<T> {
    if flags.is_empty() {
        file
    } else {
        flags
    }
}

impl RunConfig {
    /// Merges flags over the optional config file and validates the result.
    pub fn from_args(args: RunArgs) -> CliResult<Self> {
        let file = match &args.config {
            Some(path) => read_file(path)?,
            None => FileValues::default(),
        };

        let kind = args
            .problem
            .or(file.problem)
            .unwrap_or(ProblemKind::Example1);
        let n_poly = args.n_poly.or(file.n_poly);
        let rhs = args.rhs.or(file.rhs);
        let y0 = args.y0.or(file.y0);
        let t_end = args.t_end.or(file.t_end);

        let problem = match kind {
            ProblemKind::Custom => {
                if n_poly.is_some() {
                    return Err(CliError::Config("n-poly only applies to example1".into()));
                }
                let rhs = rhs.ok_or_else(|| CliError::Config("custom problem needs rhs".into()))?;
                compile_rhs(&rhs)?;
                ProblemSpec::Custom {
                    rhs,
                    y0: y0.unwrap_or(0.0),
                    t_end: t_end.unwrap_or(1.0),
                }
            }
            ProblemKind::Example1 | ProblemKind::Example2 => {
                if rhs.is_some() || y0.is_some() || t_end.is_some() {
                    return Err(CliError::Config(
                        "rhs, y0 and t-end only apply to the custom problem".into(),
                    ));
                }
                if kind == ProblemKind::Example1 {
                    let n = n_poly.unwrap_or(DEFAULT_N_POLY);
                    if n == 0 {
                        return Err(CliError::Config("n-poly must be positive".into()));
                    }
                    ProblemSpec::Benchmark(Benchmark::Example1 { n })
                } else {
                    if n_poly.is_some() {
                        return Err(CliError::Config("n-poly only applies to example1".into()));
                    }
                    ProblemSpec::Benchmark(Benchmark::Example2)
                }
            }
        };

        let alphas = pick_list(args.alpha, file.alpha);
        if alphas.is_empty() {
            return Err(CliError::Config("at least one alpha is required".into()));
        }
        if let Some(a) = alphas.iter().find(|a| !(**a > 0.0 && **a <= 1.0)) {
            return Err(CliError::Config(format!(
                "alpha must lie in (0, 1], got {a}"
            )));
        }

        let steps = pick_list(args.steps, file.steps);
        if steps.is_empty() {
            return Err(CliError::Config(
                "at least one steps value is required".into(),
            ));
        }
        if steps.contains(&0) {
            return Err(CliError::Config("steps must be positive".into()));
        }

        let scheme_names = pick_list(args.scheme, file.scheme);
        let schemes = if scheme_names.is_empty() {
            vec![Scheme::Proposed]
        } else {
            scheme_names
                .iter()
                .map(|s| s.parse::<Scheme>().map_err(config_from_core))
                .collect::<CliResult<Vec<_>>>()?
        };

        let normalization = match args.normalization.or(file.normalization) {
            Some(s) => s.parse::<Normalization>().map_err(config_from_core)?,
            None => Normalization::default(),
        };
        let corrector = match args.corrector.or(file.corrector) {
            Some(s) => s.parse::<CorrectorMode>().map_err(config_from_core)?,
            None => CorrectorMode::default(),
        };
        let options = SolverOptions::new(corrector, normalization).map_err(config_from_core)?;

        Ok(Self {
            problem,
            alphas,
            steps,
            schemes,
            options,
            out: args.out.or(file.out).unwrap_or_else(|| PathBuf::from(".")),
        })
    }
}
