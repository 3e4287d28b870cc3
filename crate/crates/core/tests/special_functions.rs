//! Identities of the Gamma and Mittag-Leffler implementations.
//!
//! The series evaluation is only accurate where cancellation is mild, so the
//! Mittag-Leffler properties sample |z| ≤ 1 for all α and |z| ≤ 2 for α ≥ 0.3.

use fracpc::special::{gamma, ml_one, ml_two};
use proptest::prelude::*;

fn ml_domain() -> impl Strategy<Value = (f64, f64)> {
    prop_oneof![
        (0.05f64..=1.0, -1.0f64..=1.0),
        (0.3f64..=1.0, -2.0f64..=2.0),
    ]
}

proptest! {
    #[test]
    fn ml_one_is_exp_at_unit_order(z in -5.0f64..=5.0) {
        let e = z.exp();
        prop_assert!((ml_one(1.0, z).unwrap() - e).abs() <= 1e-12 * e.max(1.0));
    }

    #[test]
    fn ml_recurrence((alpha, z) in ml_domain(), beta in 0.2f64..3.0) {
        let lhs = ml_two(alpha, beta, z).unwrap();
        let rhs = z * ml_two(alpha, alpha + beta, z).unwrap() + 1.0 / gamma(beta).unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-10 * lhs.abs().max(1.0), "{lhs} vs {rhs}");
    }

    #[test]
    fn ml_increases_along_real_axis((alpha, z) in ml_domain(), dz in 1e-3f64..0.5) {
        prop_assert!(ml_one(alpha, z + dz).unwrap() > ml_one(alpha, z).unwrap());
    }

    #[test]
    fn gamma_functional_equation(x in 0.05f64..30.0) {
        let lhs = gamma(x + 1.0).unwrap();
        let rhs = x * gamma(x).unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-13 * lhs.abs());
    }
}
