//! Comparison schemes against reference error magnitudes.

use fracpc::analysis::{
    exact_example1, exact_example2, example1_problem, example2_problem, max_abs_error,
};
use fracpc::baselines::{solve_baleanu_jajarmi, solve_toufik_atangana};
use fracpc::{solve, Normalization, SolverOptions, UniformGrid};

fn within_factor(value: f64, target: f64, factor: f64) -> bool {
    value <= target * factor && value >= target / factor
}

fn example1_error(alpha: f64, n_poly: u32, n: usize, scheme: &str) -> f64 {
    let p = example1_problem(alpha, n_poly, 1.0).unwrap();
    let grid = UniformGrid::for_problem(&p, n).unwrap();
    let tr = match scheme {
        "bj" => solve_baleanu_jajarmi(&p, &grid, Normalization::Unit),
        "ta" => solve_toufik_atangana(&p, &grid, Normalization::Unit),
        _ => solve(&p, &grid, &SolverOptions::default()).unwrap(),
    };
    max_abs_error(&tr, |t| {
        exact_example1(alpha, n_poly, 1.0, Normalization::Unit, t).unwrap()
    })
}

#[test]
fn adams_scheme_is_second_order() {
    for alpha in [0.5, 0.7, 0.9] {
        let errs: Vec<f64> = [10, 20, 40, 80]
            .iter()
            .map(|&n| example1_error(alpha, 3, n, "bj"))
            .collect();
        for w in errs.windows(2) {
            let order = (w[0] / w[1]).log2();
            assert!((1.8..=2.1).contains(&order), "alpha = {alpha}: {order}");
        }
    }
    assert!(within_factor(example1_error(0.7, 3, 20, "bj"), 5.5e-4, 3.0));
}

#[test]
fn adams_scheme_on_linear_problem() {
    let p = example2_problem(0.5).unwrap();
    let tr = solve_baleanu_jajarmi(
        &p,
        &UniformGrid::for_problem(&p, 40).unwrap(),
        Normalization::Unit,
    );
    let err = max_abs_error(&tr, |t| {
        exact_example2(0.5, Normalization::Unit, t).unwrap()
    });
    assert!(within_factor(err, 6.9e-3, 3.0), "{err}");
}

#[test]
fn two_step_scheme_magnitudes() {
    assert!(within_factor(example1_error(0.5, 2, 40, "ta"), 2.5e-2, 3.0));
    assert!(within_factor(example1_error(0.7, 2, 40, "ta"), 2.0e-2, 3.0));
    assert!(within_factor(example1_error(1.0, 2, 40, "ta"), 5.0e-4, 3.0));
}

#[test]
fn proposed_scheme_beats_both_baselines() {
    for alpha in [0.5, 0.7, 0.99, 1.0] {
        for (n_poly, n) in [(2, 40), (3, 40), (3, 80)] {
            let ours = example1_error(alpha, n_poly, n, "pc");
            assert!(ours < example1_error(alpha, n_poly, n, "bj"));
            assert!(ours < example1_error(alpha, n_poly, n, "ta"));
        }
    }
}
