use proptest::prelude::*;

use etarho::circle::{
    eta_partial, eta_term, eta_term_ordered, kernel_value, IntegrationOrder, QuadratureConfig, SubsetFamily, TermMode,
};

/// −i·∂ₓ of the heat kernel (4πt)^{-1/2} e^{−(x−y)²/4t}, by central differences.
fn kernel_by_differences(x: f64, y: f64, t: f64) -> f64 {
    let heat = |x: f64| (-(x - y).powi(2) / (4.0 * t)).exp() / (4.0 * std::f64::consts::PI * t).sqrt();
    let h = 1e-5;
    -(heat(x + h) - heat(x - h)) / (2.0 * h)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn kernel_is_the_derivative_of_the_heat_kernel(x in -3.0f64..3.0, y in -3.0f64..3.0, t in 0.2f64..4.0) {
        let k = kernel_value(x, y, t).unwrap();
        prop_assert!(k.re == 0.0);
        prop_assert!((k.im - kernel_by_differences(x, y, t)).abs() < 1e-7);
        let swapped = kernel_value(y, x, t).unwrap();
        prop_assert!((k.im + swapped.im).abs() < 1e-15);
    }
}

#[test]
fn fubini_order_swap_is_stable() {
    let cfg = QuadratureConfig::default();
    for n in [1i64, 2, 5, 13] {
        let a = eta_term_ordered(n, &cfg, IntegrationOrder::TimeOuter).unwrap();
        let b = eta_term_ordered(n, &cfg, IntegrationOrder::SpaceOuter).unwrap();
        assert!((a.im - b.im).abs() < cfg.abs_tol * 10.0 + 1e-9 * a.im.abs(), "n={n}: {} vs {}", a.im, b.im);
    }
}

#[test]
fn audit_mode_agrees_with_closed_form() {
    let cfg = QuadratureConfig::default();
    let family = SubsetFamily::parse("primes").unwrap();
    let exact = eta_partial(&family, 25, &cfg, TermMode::ClosedForm).unwrap();
    let audit = eta_partial(&family, 25, &cfg, TermMode::Audit).unwrap();
    let (a, b) = (exact.final_sum().unwrap(), audit.final_sum().unwrap());
    assert!((a.im - b.im).abs() < 1e-9);
    assert_eq!(a.terms_used, 25);
    let t = eta_term(-4, &cfg).unwrap();
    assert!((t.im + 1.0 / (4.0 * std::f64::consts::PI)).abs() < 1e-10);
}
