use conformable_hydrogen::calculus::{
    conf_derivative, conf_derivative_limit, conf_integral, Alpha, Function, GaussLegendre,
    QuadratureSpec,
};
use conformable_hydrogen::hydrogen::{
    energy_level, radial_wavefunction, scaled_problem, u_function, ModelParams, QuantumNumbers,
};
use conformable_hydrogen::special::{
    conf_laguerre, conf_laguerre_rodrigues_oracle, conf_legendre, legendre_assoc,
};
use conformable_hydrogen::verification::{
    default_grid, normalization_report, radial_function, radial_ode_residual_of, radial_overlap,
    DerivativeMode,
};
use conformable_hydrogen::{Differentiable, LaguerreParams, LegendreParams};
use proptest::prelude::*;

fn alpha(a: f64) -> Alpha {
    Alpha::new(a).unwrap()
}

fn close(a: f64, b: f64, rel: f64) -> bool {
    (a - b).abs() <= rel * a.abs().max(b.abs()).max(1.0)
}

fn state() -> impl Strategy<Value = (u32, u32)> {
    (1u32..=5).prop_flat_map(|n| (Just(n), 0..n))
}

fn smooth(c: f64) -> Function<'static> {
    Function::new(move |t: f64| (c * t).sin() + t * t)
        .with_first(move |t| c * (c * t).cos() + 2.0 * t)
}

fn decaying(c: f64) -> Function<'static> {
    Function::new(move |t: f64| (-c * t).exp() * t)
        .with_first(move |t| (-c * t).exp() * (1.0 - c * t))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn derivative_is_linear(a in 0.3f64..=1.0, t in 0.05f64..10.0, p in -3.0f64..3.0, q in -3.0f64..3.0, c in 0.1f64..2.0) {
        let (f, g) = (smooth(c), decaying(c));
        let combo = Function::new(move |t: f64| p * ((c * t).sin() + t * t) + q * (-c * t).exp() * t)
            .with_first(move |t| p * (c * (c * t).cos() + 2.0 * t) + q * (-c * t).exp() * (1.0 - c * t));
        let lhs = conf_derivative(&combo, alpha(a), t).unwrap();
        let rhs = p * conf_derivative(&f, alpha(a), t).unwrap() + q * conf_derivative(&g, alpha(a), t).unwrap();
        prop_assert!(close(lhs, rhs, 1e-12), "{lhs} vs {rhs}");
    }

    #[test]
    fn derivative_obeys_product_rule(a in 0.3f64..=1.0, t in 0.05f64..10.0, c in 0.1f64..2.0) {
        let (f, g) = (smooth(c), decaying(c));
        let product = Function::new(move |t: f64| ((c * t).sin() + t * t) * (-c * t).exp() * t).with_first(move |t| {
            let (v, dv) = ((c * t).sin() + t * t, c * (c * t).cos() + 2.0 * t);
            let (w, dw) = ((-c * t).exp() * t, (-c * t).exp() * (1.0 - c * t));
            dv * w + v * dw
        });
        let al = alpha(a);
        let lhs = conf_derivative(&product, al, t).unwrap();
        let rhs = f.eval(t) * conf_derivative(&g, al, t).unwrap() + g.eval(t) * conf_derivative(&f, al, t).unwrap();
        prop_assert!(close(lhs, rhs, 1e-12), "{lhs} vs {rhs}");
    }

    #[test]
    fn power_rule_holds(a in 0.3f64..=1.0, t in 0.05f64..10.0, p in -2.0f64..4.0) {
        let f = Function::new(move |t: f64| t.powf(p)).with_first(move |t| p * t.powf(p - 1.0));
        let d = conf_derivative(&f, alpha(a), t).unwrap();
        prop_assert!(close(d, p * t.powf(p - a), 1e-12));
        let value_only = Function::new(move |t: f64| t.powf(p));
        let fd = conf_derivative(&value_only, alpha(a), t).unwrap();
        prop_assert!(close(fd, p * t.powf(p - a), 1e-6), "{fd} vs {}", p * t.powf(p - a));
    }

    #[test]
    fn limit_quotient_matches_derivative(a in 0.3f64..=1.0, t in 0.1f64..5.0, c in 0.1f64..2.0) {
        let f = smooth(c);
        let exact = conf_derivative(&f, alpha(a), t).unwrap();
        let quotient = conf_derivative_limit(&f, alpha(a), t, 1e-7).unwrap();
        prop_assert!(close(exact, quotient, 1e-5), "{exact} vs {quotient}");
    }

    #[test]
    fn improper_integral_matches_gamma(a in 0.3f64..=1.0, j in 0u32..6) {
        // ∫_0^∞ x^{jα} e^{-x^α/α} x^{α-1} dx = α^j j!
        let al = alpha(a);
        let v = conf_integral(|x| al.pow(x).powi(j as i32) * (-al.pow(x) / a).exp(), al, 0.0, f64::INFINITY, &QuadratureSpec::laguerre(16)).unwrap();
        let exact = a.powi(j as i32) * (1..=j).map(f64::from).product::<f64>();
        prop_assert!(close(v, exact, 1e-10), "{v} vs {exact}");
    }

    #[test]
    fn finite_integral_matches_direct_quadrature(a in 0.3f64..=1.0, lo in 0.1f64..2.0, width in 0.1f64..5.0, c in 0.1f64..3.0) {
        let hi = lo + width;
        let al = alpha(a);
        let v = conf_integral(|x| (c * x).cos(), al, lo, hi, &QuadratureSpec::legendre(32)).unwrap();
        let (direct, _) = GaussLegendre::new(200).integrate(lo, hi, &|x: f64| (c * x).cos() * x.powf(a - 1.0));
        prop_assert!(close(v, direct, 1e-10), "{v} vs {direct}");
    }

    #[test]
    fn states_are_normalized(a in 0.5f64..=1.0, (n, l) in state()) {
        let p = ModelParams::natural(alpha(a));
        let norm = normalization_report(QuantumNumbers::radial(n, l).unwrap(), &p).unwrap();
        prop_assert!((norm - 1.0).abs() <= 1e-8, "{norm}");
    }

    #[test]
    fn different_levels_are_orthogonal(a in 0.5f64..=1.0, l in 0u32..3, n1 in 1u32..=5, n2 in 1u32..=5) {
        prop_assume!(n1 > l && n2 > l && n1 != n2);
        let p = ModelParams::natural(alpha(a));
        let v = radial_overlap(QuantumNumbers::radial(n1, l).unwrap(), QuantumNumbers::radial(n2, l).unwrap(), &p).unwrap();
        prop_assert!(v.abs() <= 1e-7, "{v}");
    }

    #[test]
    fn energies_rise_toward_zero(a in 0.3f64..=1.0, n in 1u32..40) {
        let (e1, e2) = (energy_level(n, alpha(a)).unwrap(), energy_level(n + 1, alpha(a)).unwrap());
        prop_assert!(e1 < e2 && e2 < 0.0);
    }

    #[test]
    fn radial_is_rescaled_reduced_function(a in 0.5f64..=1.0, (n, l) in state(), r in 0.01f64..20.0) {
        let p = ModelParams::natural(alpha(a));
        let qn = QuantumNumbers::radial(n, l).unwrap();
        let s = scaled_problem(qn, &p);
        let rho = s.rho_from_r(r);
        let via_u = 2.0 * s.k * u_function(qn, &p, rho).unwrap() / alpha(a).pow(rho);
        let direct = radial_wavefunction(qn, &p, r).unwrap();
        prop_assert!((via_u - direct).abs() <= 1e-12 * direct.abs().max(1.0));
    }

    #[test]
    fn finite_differences_agree_with_analytic_residual(a in 0.5f64..=1.0, (n, l) in state()) {
        let p = ModelParams::natural(alpha(a));
        let qn = QuantumNumbers::radial(n, l).unwrap();
        let f = radial_function(qn, &p);
        let grid = default_grid();
        let analytic = radial_ode_residual_of(&f, qn, &p, &grid, DerivativeMode::Analytic).unwrap();
        let fd = radial_ode_residual_of(&f, qn, &p, &grid, DerivativeMode::FiniteDifference).unwrap();
        prop_assert!(analytic.max_rel_residual <= 1e-10);
        prop_assert!(fd.max_rel_residual <= 1e-4, "{}", fd.max_rel_residual);
    }

    #[test]
    fn reduced_function_is_flat_near_origin(a in 0.75f64..=1.0, (n, l) in state()) {
        prop_assume!(n <= 3);
        let p = ModelParams::natural(alpha(a));
        let qn = QuantumNumbers::radial(n, l).unwrap();
        let scaled = |rho: f64| u_function(qn, &p, rho).unwrap() / alpha(a).pow(rho).powi(l as i32 + 1);
        let reference = scaled(1e-4);
        for rho in [2e-4, 5e-4, 1e-3] {
            prop_assert!(((scaled(rho) - reference) / reference).abs() <= 1e-2);
        }
    }

    #[test]
    fn laguerre_matches_rodrigues_oracle(a in 0.5f64..=1.0, s in 0u32..=3, m in 0u32..=5, x in 0.05f64..8.0) {
        let lp = LaguerreParams::new(s, m);
        let direct = conf_laguerre(lp, alpha(a), x).unwrap();
        let oracle = conf_laguerre_rodrigues_oracle(lp, alpha(a), x).unwrap();
        prop_assert!((direct - oracle).abs() <= 1e-5 * direct.abs().max(1.0), "{direct} vs {oracle}");
    }

    #[test]
    fn legendre_reduces_to_classical(l in 0u32..6, m in -5i32..=5, theta in 0.0f64..std::f64::consts::PI) {
        prop_assume!(m.unsigned_abs() <= l);
        let lp = LegendreParams::new(l, m).unwrap();
        let conf = conf_legendre(lp, Alpha::ONE, theta).unwrap();
        let classical = legendre_assoc(lp, theta.cos()).unwrap();
        prop_assert!(close(conf, classical, 1e-13));
    }
}
