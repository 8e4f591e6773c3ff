use approx::assert_relative_eq;
use num_complex::Complex64;
use proptest::prelude::*;
use qdamp_core::oscillator::{build_basis, q_wronskian, residual, sampled_residual};
use qdamp_core::riccati::riccati_samples;
use qdamp_core::special::{eq_eval, eq_eval_product, eq_series};
use qdamp_core::{characteristic_roots, OscillatorSpec, QParam, Regime, DEFAULT_TAIL_TOL};

fn spec(gamma: f64, omega: f64, q: f64) -> OscillatorSpec {
    OscillatorSpec::new(gamma, omega, QParam::new(q).unwrap()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn every_basis_solves_the_equation(gamma in 0.0f64..6.0, omega in 0.2f64..3.0, q in 1.05f64..4.0) {
        let s = spec(gamma, omega, q);
        let basis = build_basis(&s, 64).unwrap();
        for x in [&basis.x1, &basis.x2] {
            let r = residual(&s, x).unwrap().max_abs() / x.max_abs();
            prop_assert!(r < 1e-12, "regime {} residual {r:e}", basis.regime);
        }
        let x = basis.real_combination(0.7, -1.3);
        for t in [0.1, 0.5, 1.0] {
            let v = sampled_residual(&s, |u| x.eval(u, DEFAULT_TAIL_TOL), t).unwrap();
            prop_assert!(v.norm() < 1e-8, "t = {t}: {v}");
        }
    }

    #[test]
    fn wronskian_at_origin_is_root_difference(gamma in 0.0f64..6.0, omega in 0.2f64..3.0, q in 1.05f64..4.0) {
        let s = spec(gamma, omega, q);
        let basis = build_basis(&s, 64).unwrap();
        let w0 = q_wronskian(&basis, 0.0).unwrap();
        let r = characteristic_roots(&s, 1e-9);
        let expected = match basis.regime {
            Regime::Critical => Complex64::new(-omega, 0.0),
            Regime::Over => r.lambda2 - r.lambda1,
            Regime::Under => Complex64::new(r.big_omega.unwrap(), 0.0),
        };
        prop_assert!((w0 - expected).norm() <= 1e-12 * (1.0 + expected.norm()), "{w0} vs {expected}");
    }

    #[test]
    fn product_and_series_agree_off_the_zeros(z in -6.0f64..6.0, q in 1.2f64..4.0) {
        let qq = QParam::new(q).unwrap();
        let p = eq_eval_product(Complex64::new(z, 0.0), qq, 1e-18).unwrap().value;
        let s = eq_series(Complex64::new(1.0, 0.0), qq, 128).eval(z, DEFAULT_TAIL_TOL).unwrap();
        prop_assert!((p - s).norm() <= 1e-10 * (1.0 + s.norm()), "{p} vs {s}");
    }
}

#[test]
fn exponential_semigroup_fails_but_q_derivative_eigen_relation_holds() {
    let qq = QParam::new(2.0).unwrap();
    let a = eq_eval(Complex64::new(-0.4, 0.0), qq).unwrap();
    let b = eq_eval(Complex64::new(-0.6, 0.0), qq).unwrap();
    let ab = eq_eval(Complex64::new(-1.0, 0.0), qq).unwrap();
    assert!((a * b - ab).norm() > 1e-3);

    let x = eq_series(Complex64::new(-0.4, 0.0), qq, 64);
    let lhs = x.dq().value_at(1.3).unwrap();
    let rhs = x.value_at(1.3).unwrap() * -0.4;
    assert_relative_eq!(lhs.re, rhs.re, max_relative = 1e-13);
}

#[test]
fn riccati_transform_of_every_regime() {
    for (g, w) in [(1.0, 1.0), (5.0, 2.0), (2.0, 1.0)] {
        let s = spec(g, w, 1.5);
        let x = build_basis(&s, 64).unwrap().real_combination(1.0, 0.5);
        let grid: Vec<f64> = (1..=100).map(|i| i as f64 * 0.03).collect();
        let samples = riccati_samples(&s, &x, &grid, 1e-2).unwrap();
        assert!(samples.len() > 80);
        for p in samples {
            assert!(p.relative_residual() < 1e-8, "{p:?}");
        }
    }
}
