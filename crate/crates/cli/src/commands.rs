//! The three subcommands. Each writes its CSV files only after every run
//! it depends on has finished.

use std::path::{Path, PathBuf};

use fracpc::{
    run_study, ConvergenceRecord, Normalization, RowOutcome, Scheme, Trajectory, UniformGrid,
};
use rayon::prelude::*;

use crate::config::RunConfig;
use crate::error::{CliError, CliResult};

fn real(x: f64) -> String {
    format!("{x:.16e}")
}

fn write_csv(path: &Path, header: &[String], rows: &[Vec<String>]) -> CliResult<()> {
    let wrap = |source: csv::Error| CliError::Output {
        path: path.to_path_buf(),
        source,
    };
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_path(path)
        .map_err(wrap)?;
    w.write_record(header).map_err(wrap)?;
    for row in rows {
        w.write_record(row).map_err(wrap)?;
    }
    w.flush().map_err(|e| wrap(e.into()))
}

fn prepare_out(dir: &Path) -> CliResult<()> {
    std::fs::create_dir_all(dir).map_err(|e| CliError::Output {
        path: dir.to_path_buf(),
        source: e.into(),
    })
}

fn single<T: Copy + std::fmt::Debug>(what: &str, values: &[T]) -> CliResult<T> {
    match values {
        [v] => Ok(*v),
        _ => Err(CliError::Config(format!(
            "expected exactly one {what}, got {values:?}"
        ))),
    }
}

fn require_exact(cfg: &RunConfig, command: &str) -> CliResult<fracpc::analysis::Benchmark> {
    cfg.problem.benchmark().ok_or_else(|| {
        CliError::Config(format!(
            "{command} needs a problem with a known exact solution"
        ))
    })
}

fn exact_column(
    cfg: &RunConfig,
    alpha: f64,
    traj: &Trajectory,
    norm: Normalization,
) -> CliResult<Option<Vec<f64>>> {
    let Some(bench) = cfg.problem.benchmark() else {
        return Ok(None);
    };
    let values = traj
        .grid()
        .nodes()
        .map(|t| bench.exact(alpha, norm, t))
        .collect::<fracpc::Result<Vec<f64>>>()?;
    Ok(Some(values))
}

fn solve_one(cfg: &RunConfig, scheme: Scheme, alpha: f64, n: usize) -> CliResult<Trajectory> {
    let problem = cfg.problem.build(alpha)?;
    let grid =
        UniformGrid::for_problem(&problem, n).map_err(|e| CliError::Config(e.to_string()))?;
    let traj = scheme.solve(&problem, &grid, &cfg.options)?;
    if let Some(bad) = traj.node_values().iter().find(|y| !y.is_finite()) {
        return Err(CliError::Solver(fracpc::Error::InvalidProblem(format!(
            "{scheme} produced a non-finite value ({bad}) for alpha = {alpha}, N = {n}"
        ))));
    }
    Ok(traj)
}

/// Writes `solution.csv` for one (alpha, N, scheme).
pub fn cmd_solve(cfg: &RunConfig) -> CliResult<PathBuf> {
    let alpha = single("alpha", &cfg.alphas)?;
    let n = single("steps value", &cfg.steps)?;
    let scheme = single("scheme", &cfg.schemes)?;
    let traj = solve_one(cfg, scheme, alpha, n)?;
    let exact = exact_column(cfg, alpha, &traj, cfg.options.normalization)?;

    let mut header = vec!["t".to_string(), "y_numeric".to_string()];
    if exact.is_some() {
        header.extend(["y_exact".to_string(), "abs_error".to_string()]);
    }
    let rows: Vec<Vec<String>> = traj
        .points()
        .enumerate()
        .map(|(i, (t, y))| {
            let mut row = vec![real(t), real(y)];
            if let Some(ex) = &exact {
                row.push(real(ex[i]));
                row.push(real((ex[i] - y).abs()));
            }
            row
        })
        .collect();

    prepare_out(&cfg.out)?;
    let path = cfg.out.join("solution.csv");
    write_csv(&path, &header, &rows)?;
    Ok(path)
}

/// Writes `study.csv` with one row per (scheme, alpha, N).
pub fn cmd_study(cfg: &RunConfig) -> CliResult<PathBuf> {
    let bench = require_exact(cfg, "study")?;
    for w in cfg.steps.windows(2) {
        if w[1] != 2 * w[0] {
            return Err(CliError::Config(format!(
                "study steps must form a doubling chain, got {:?}",
                cfg.steps
            )));
        }
    }
    let norm = cfg.options.normalization;
    let jobs: Vec<(Scheme, f64)> = cfg
        .schemes
        .iter()
        .flat_map(|&s| cfg.alphas.iter().map(move |&a| (s, a)))
        .collect();
    let results: Vec<CliResult<Vec<ConvergenceRecord>>> = jobs
        .par_iter()
        .map(|&(scheme, alpha)| {
            let problem = bench.problem(alpha)?;
            Ok(run_study(
                &problem,
                |t| bench.exact(alpha, norm, t),
                scheme,
                &cfg.steps,
                &cfg.options,
            )?)
        })
        .collect();

    let header: Vec<String> = ["scheme", "alpha", "N", "AE", "EOC", "CTs"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    let mut rows = Vec::new();
    let mut first_failure = None;
    for ((scheme, alpha), result) in jobs.iter().zip(results) {
        for rec in result? {
            let (ae, eoc) = match &rec.outcome {
                RowOutcome::Solved { max_abs_error, eoc } => {
                    (real(*max_abs_error), eoc.map(real).unwrap_or_default())
                }
                RowOutcome::Failed(e) => {
                    eprintln!("{scheme}, alpha = {alpha}, N = {}: {e}", rec.n_steps);
                    first_failure.get_or_insert_with(|| e.clone());
                    (String::new(), String::new())
                }
            };
            rows.push(vec![
                scheme.name().to_string(),
                alpha.to_string(),
                rec.n_steps.to_string(),
                ae,
                eoc,
                real(rec.cpu_seconds),
            ]);
        }
    }

    prepare_out(&cfg.out)?;
    let path = cfg.out.join("study.csv");
    write_csv(&path, &header, &rows)?;
    match first_failure {
        Some(e) => Err(CliError::Solver(e)),
        None => Ok(path),
    }
}

/// Writes `compare.csv` (scheme × alpha errors at one N) and one
/// `curve_<scheme>_alpha<alpha>.csv` per cell.
pub fn cmd_compare(cfg: &RunConfig) -> CliResult<PathBuf> {
    let bench = require_exact(cfg, "compare")?;
    let n = single("steps value", &cfg.steps)?;
    let norm = cfg.options.normalization;
    let jobs: Vec<(Scheme, f64)> = cfg
        .schemes
        .iter()
        .flat_map(|&s| cfg.alphas.iter().map(move |&a| (s, a)))
        .collect();
    let solved: Vec<CliResult<(Trajectory, Vec<f64>)>> = jobs
        .par_iter()
        .map(|&(scheme, alpha)| {
            let traj = solve_one(cfg, scheme, alpha, n)?;
            let exact = traj
                .grid()
                .nodes()
                .map(|t| bench.exact(alpha, norm, t))
                .collect::<fracpc::Result<Vec<f64>>>()?;
            Ok((traj, exact))
        })
        .collect();
    let solved = solved.into_iter().collect::<CliResult<Vec<_>>>()?;

    prepare_out(&cfg.out)?;
    let mut header = vec!["scheme".to_string()];
    header.extend(cfg.alphas.iter().map(|a| format!("alpha={a}")));
    let mut rows = Vec::new();
    for (si, scheme) in cfg.schemes.iter().enumerate() {
        let mut row = vec![scheme.name().to_string()];
        for ai in 0..cfg.alphas.len() {
            let (traj, exact) = &solved[si * cfg.alphas.len() + ai];
            let err = traj
                .node_values()
                .iter()
                .zip(exact)
                .skip(1)
                .map(|(y, e)| (e - y).abs())
                .fold(0.0f64, f64::max);
            row.push(real(err));
        }
        rows.push(row);
    }

    let curve_header: Vec<String> = ["t", "y_numeric", "y_exact"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    for ((scheme, alpha), (traj, exact)) in jobs.iter().zip(&solved) {
        let curve: Vec<Vec<String>> = traj
            .points()
            .zip(exact)
            .map(|((t, y), e)| vec![real(t), real(y), real(*e)])
            .collect();
        let path = cfg
            .out
            .join(format!("curve_{}_alpha{alpha}.csv", scheme.name()));
        write_csv(&path, &curve_header, &curve)?;
    }

    let path = cfg.out.join("compare.csv");
    write_csv(&path, &header, &rows)?;
    Ok(path)
}
