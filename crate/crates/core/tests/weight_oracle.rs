//! Closed-form kernel moments against adaptive quadrature of their defining
//! integrals (unit step, τ = s − t_j).

use fracpc::quadrature::{integrate_weakly_singular, QuadratureOptions};
use fracpc::weights::*;
use fracpc::{Normalization, SchemeWeights};
use proptest::prelude::*;

const REL: f64 = 1e-8;

fn oracle<G: Fn(f64) -> f64>(g: G, a: f64, b: f64, c: f64, alpha: f64) -> f64 {
    let opts = QuadratureOptions {
        abs_tol: 1e-14,
        rel_tol: 1e-13,
        max_subdivisions: 4000,
    };
    integrate_weakly_singular(g, a, b, c, alpha, &opts).unwrap()
}

fn close(closed: f64, reference: f64) -> bool {
    (closed - reference).abs() <= REL * reference.abs().max(1e-300)
}

fn triple() -> impl Strategy<Value = (f64, usize, usize)> {
    (0.05f64..=1.0, 0usize..=50).prop_flat_map(|(a, m)| (Just(a), Just(m), 0..=m))
}

fn half_triple() -> impl Strategy<Value = (f64, usize, usize)> {
    (0.05f64..=1.0, 1usize..=50).prop_flat_map(|(a, j)| (Just(a), Just(j), 0..j))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn rect_matches_quadrature((a, m, j) in triple()) {
        let d = (m - j) as f64;
        let r = a * oracle(|_| 1.0, 0.0, 1.0, d + 1.0, a);
        prop_assert!(close(moment_rect(a, m, j), r));
    }

    #[test]
    fn lin_matches_quadrature((a, m, j) in triple()) {
        let d = (m - j) as f64;
        let r = a * (a + 1.0) * oracle(|t| t, 0.0, 1.0, d + 1.0, a);
        prop_assert!(close(moment_lin(a, m, j), r));
    }

    #[test]
    fn quad_matches_quadrature((a, m, j) in triple()) {
        let d = (m - j) as f64;
        let r = a * (a + 1.0) * (a + 2.0) * oracle(|t| t * (t - 0.5), 0.0, 1.0, d + 1.0, a);
        prop_assert!(close(moment_quad(a, m, j), r), "{} vs {}", moment_quad(a, m, j), r);
    }

    #[test]
    fn rect_half_matches_quadrature((a, j, k) in half_triple()) {
        let d = (j - k) as f64;
        let r = a * oracle(|_| 1.0, 0.0, 1.0, d + 0.5, a);
        prop_assert!(close(moment_rect_half(a, j, k), r));
    }

    #[test]
    fn lin_half_matches_quadrature((a, j, k) in half_triple()) {
        let d = (j - k) as f64;
        let r = a * (a + 1.0) * oracle(|t| t, 0.0, 1.0, d + 0.5, a);
        prop_assert!(close(moment_lin_half(a, j, k), r));
    }

    #[test]
    fn last_half_matches_quadrature(a in 0.05f64..=1.0) {
        let r = a * oracle(|_| 1.0, 0.0, 0.5, 0.5, a);
        prop_assert!(close(moment_last_half(a), r));
    }

    #[test]
    fn predictor_halves_match_quadrature((a, m, j) in triple()) {
        let d = (m - j) as f64;
        let first = a * oracle(|_| 1.0, 0.0, 0.5, d + 1.0, a);
        let second = a * oracle(|_| 1.0, 0.5, 1.0, d + 1.0, a);
        prop_assert!(close(predictor_moment_first_half(a, m, j), first));
        prop_assert!(close(predictor_moment_second_half(a, m, j), second));
    }

    #[test]
    fn coeff_c_matches_quadrature((a, m, j) in triple()) {
        let d = (m - j) as f64;
        let r = a * (a + 1.0) * oracle(|t| t, 0.0, 0.5, d + 1.0, a);
        let c = predictor_coeff_c(a, j, m);
        prop_assert!((c - r).abs() <= REL * r.abs() + 1e-13 * (m as f64 + 1.0), "{c} vs {r}");
    }

    #[test]
    fn telescoping_rect_sum(a in 0.05f64..=1.0, m in 0usize..=50) {
        let s: f64 = (0..=m).map(|j| moment_rect(a, m, j)).sum();
        let expect = ((m + 1) as f64).powf(a);
        prop_assert!((s - expect).abs() <= 1e-12 * expect);
    }

    #[test]
    fn halves_split_rect_and_positivity((a, m, j) in triple()) {
        let sum = predictor_moment_first_half(a, m, j) + predictor_moment_second_half(a, m, j);
        let rect = moment_rect(a, m, j);
        prop_assert!((sum - rect).abs() <= 1e-14 * rect.max(1.0));
        prop_assert!(rect > 0.0);
        if j >= 1 {
            prop_assert!(moment_rect_half(a, j, j - 1) > 0.0);
        }
    }

    #[test]
    fn tables_agree_with_free_functions((a, m, j) in triple()) {
        let w = SchemeWeights::new(a, Normalization::Unit, 0.01, 50);
        let d = m - j;
        prop_assert_eq!(w.rect(d), moment_rect(a, m, j));
        prop_assert_eq!(w.lin(d), moment_lin(a, m, j));
        prop_assert_eq!(w.quad(d), moment_quad(a, m, j));
        prop_assert_eq!(w.first_half(d), predictor_moment_first_half(a, m, j));
        prop_assert_eq!(w.second_half(d), predictor_moment_second_half(a, m, j));
        let c = predictor_coeff_c(a, j, m);
        prop_assert!((w.coeff_c(d) - c).abs() <= 1e-12 * (m as f64 + 1.0));
        if d >= 1 {
            prop_assert_eq!(w.rect_half(d), moment_rect_half(a, m, j));
            prop_assert_eq!(w.lin_half(d), moment_lin_half(a, m, j));
        }
    }
}

#[test]
fn classical_degeneration() {
    for (m, j) in [(0, 0), (5, 2), (9, 0)] {
        assert!((moment_lin(1.0, m, j) - 1.0).abs() < 1e-14);
        // ∫_0^1 τ(τ−½) dτ = 1/12, times 3! = ½
        assert!((moment_quad(1.0, m, j) - 0.5).abs() < 1e-13);
        assert!((moment_rect(1.0, m, j) - 1.0).abs() < 1e-14);
    }
}
