//! Jackson q-exponential (series and infinite product), q-trigonometric
//! functions, the q-logarithm and the zeros of `e_q(-wt)`.

use num_complex::Complex64;

use crate::error::{QError, Result};
use crate::qcore::{q_bracket, QParam};
use crate::series::{QSeries, DEFAULT_ORDER, DEFAULT_TAIL_TOL};

/// Product factors are multiplied until their deviation from 1 drops
/// below this; the rest is folded into a first-order tail correction.
pub const PRODUCT_CUTOFF: f64 = 1e-18;

/// Relative tail tolerance for [`lnq_eval`].
pub const LNQ_TAIL_TOL: f64 = 1e-14;

/// Above this many factors the product is abandoned for the series.
const MAX_PRODUCT_FACTORS: f64 = 1e6;

/// Series/product crossover in `|z|`.
const CROSSOVER: f64 = 1.0;

/// Result of evaluating `e_q(z)` by its infinite product.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EqProductEval {
    pub q: QParam,
    pub z: Complex64,
    /// Number of explicit factors before the tail correction.
    pub factors_used: usize,
    pub value: Complex64,
}

/// Coefficients `lambda^n / [n]_q!` of `e_q(lambda t)` for `n = 0..=order`.
///
/// Built by the ratio recurrence `c_n = c_(n-1) lambda / [n]_q`, so the
/// coefficients underflow gracefully where `[n]_q!` itself would overflow.
pub fn eq_series(lambda: Complex64, q: QParam, order: usize) -> QSeries {
    let mut coeffs = Vec::with_capacity(order + 1);
    let mut c = Complex64::new(1.0, 0.0);
    coeffs.push(c);
    for n in 1..=order {
        c = c * lambda / q_bracket(n, q);
        coeffs.push(c);
    }
    QSeries::new(coeffs, q).expect("order + 1 >= 1 coefficients")
}

/// `e_q(z) = prod_(n>=0) (1 + (1 - 1/q) q^(-n) z)`.
pub fn eq_eval_product(z: Complex64, q: QParam, tol: f64) -> Result<EqProductEval> {
    if !(tol > 0.0) {
        return Err(QError::InvalidParameter(format!(
            "product cutoff must be positive, got {tol}"
        )));
    }
    let qv = q.value();
    let mut u = z * q.one_minus_inv();
    let mut value = Complex64::new(1.0, 0.0);
    let mut n = 0usize;
    while u.norm() >= tol {
        value *= 1.0 + u;
        u /= qv;
        n += 1;
    }
    // sum_(m>=n) log(1 + u q^-(m-n)) ~ u q / (q - 1)
    if u.norm() > 0.0 {
        value *= (u * (qv / (qv - 1.0))).exp();
    }
    Ok(EqProductEval {
        q,
        z,
        factors_used: n,
        value,
    })
}

fn product_factor_estimate(z: Complex64, q: QParam) -> f64 {
    let lead = z.norm() * q.one_minus_inv();
    if lead <= PRODUCT_CUTOFF {
        0.0
    } else {
        (lead / PRODUCT_CUTOFF).ln() / q.value().ln()
    }
}

/// Evaluates `e_q` from its series, doubling the order until the tail
/// guard passes.
pub fn eq_eval_series(z: Complex64, q: QParam) -> Result<Complex64> {
    let mut order = DEFAULT_ORDER;
    loop {
        let s = eq_series(z, q, order);
        match s.eval(1.0, DEFAULT_TAIL_TOL) {
            Ok(v) => return Ok(v),
            Err(e @ QError::TailGuard { .. }) if order >= 1 << 14 => return Err(e),
            Err(QError::TailGuard { .. }) => order *= 2,
            Err(e) => return Err(e),
        }
    }
}

/// `e_q(z)`: series near the origin, product elsewhere.
///
/// The product is skipped when `q` is so close to 1 that it would need
/// an impractical number of factors.
pub fn eq_eval(z: Complex64, q: QParam) -> Result<Complex64> {
    if z.norm() <= CROSSOVER || product_factor_estimate(z, q) > MAX_PRODUCT_FACTORS {
        eq_eval_series(z, q)
    } else {
        Ok(eq_eval_product(z, q, PRODUCT_CUTOFF)?.value)
    }
}

/// `cos_q(omega t)`, the real part of `e_q(i omega t)`.
pub fn cosq_series(omega: f64, q: QParam, order: usize) -> QSeries {
    eq_series(Complex64::new(0.0, omega), q, order).re()
}

/// `sin_q(omega t)`, the imaginary part of `e_q(i omega t)`.
pub fn sinq_series(omega: f64, q: QParam, order: usize) -> QSeries {
    eq_series(Complex64::new(0.0, omega), q, order).im()
}

/// `Ln_q(1 - x) = -sum_(l=1..=order) x^l / [l]_q`.
///
/// The series converges for `|x| < q`. Fails with a tail-guard error when
/// the last term is not below [`LNQ_TAIL_TOL`] relative to the sum.
pub fn lnq_eval(x: f64, q: QParam, order: usize) -> Result<f64> {
    if order == 0 {
        return Err(QError::InvalidParameter("Ln_q needs order >= 1".into()));
    }
    if !(x.abs() < q.value()) {
        return Err(QError::Domain(format!(
            "Ln_q(1 - x) series diverges for |x| >= q (x = {x}, q = {q})"
        )));
    }
    // x^l / [l]_q = q (x/q)^l / s_l with s_l = [l]_q / q^(l-1) bounded,
    // so neither factor overflows at high order
    let qv = q.value();
    let ratio = x / qv;
    let mut sum = 0.0;
    let mut power = 1.0;
    let mut normalized = 0.0;
    let mut last = 0.0;
    for _ in 1..=order {
        power *= ratio;
        normalized = 1.0 + normalized / qv;
        last = qv * power / normalized;
        sum -= last;
    }
    let estimate = last.abs() / (1.0 + sum.abs());
    if !(estimate <= LNQ_TAIL_TOL) {
        return Err(QError::TailGuard {
            t: x,
            order,
            estimate,
            tol: LNQ_TAIL_TOL,
        });
    }
    Ok(sum)
}

/// Positive zeros `t_k = q^(k+1) / ((q - 1) omega)` of `e_q(-omega t)`,
/// ascending. Each is the zero of one factor of the product.
pub fn eq_zeros(q: QParam, omega: f64, count: usize) -> Result<Vec<f64>> {
    if !(omega > 0.0) || !omega.is_finite() {
        return Err(QError::InvalidParameter(format!(
            "omega must be positive, got {omega}"
        )));
    }
    if count == 0 {
        return Err(QError::InvalidParameter("count must be >= 1".into()));
    }
    let qv = q.value();
    let base = 1.0 / ((qv - 1.0) * omega);
    Ok((1..=count).map(|k| base * qv.powi(k as i32)).collect())
}

/// Zero of `e_q(-omega t)` closest to `t`.
pub fn nearest_eq_zero(q: QParam, omega: f64, t: f64) -> Option<f64> {
    if !(omega > 0.0) || !(t > 0.0) {
        return None;
    }
    let qv = q.value();
    let first = qv / ((qv - 1.0) * omega);
    // index of the zero just below t, clamped at 0
    let k = ((t / first).ln() / qv.ln()).floor().max(0.0) as i32;
    let below = first * qv.powi(k);
    let above = below * qv;
    Some(if (t - below).abs() <= (above - t).abs() {
        below
    } else {
        above
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::q_factorial;

    fn q(v: f64) -> QParam {
        QParam::new(v).unwrap()
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn eq_series_coefficients() {
        let s = eq_series(c(-1.0, 0.0), q(2.0), 3);
        let got: Vec<f64> = s.coeffs().iter().map(|z| z.re).collect();
        assert_eq!(got[0], 1.0);
        assert_eq!(got[1], -1.0);
        assert!((got[2] - 1.0 / 3.0).abs() < 1e-16);
        assert!((got[3] + 1.0 / 21.0).abs() < 1e-16);
        assert_eq!(
            eq_series(c(3.7, -2.0), q(1.3), 10).eval_unchecked(0.0),
            c(1.0, 0.0)
        );
    }

    #[test]
    fn eq_series_matches_factorial_where_representable() {
        let qq = q(1.5);
        let s = eq_series(c(0.7, 0.0), qq, 40);
        for n in 0..=40 {
            let expected = 0.7f64.powi(n as i32) / q_factorial(n, qq).unwrap();
            assert!((s.coeff(n).re - expected).abs() <= 1e-14 * expected);
        }
    }

    #[test]
    fn eq_series_survives_factorial_overflow() {
        let s = eq_series(c(-4.0, 0.0), q(3.0), 64);
        assert!(s.coeffs().iter().all(|z| z.re.is_finite()));
        assert_eq!(s.coeff(64).re, 0.0);
    }

    #[test]
    fn product_examples() {
        let one = eq_eval_product(c(0.0, 0.0), q(2.0), PRODUCT_CUTOFF).unwrap();
        assert_eq!(one.value, c(1.0, 0.0));
        assert_eq!(one.factors_used, 0);
        let zero = eq_eval_product(c(-2.0, 0.0), q(2.0), PRODUCT_CUTOFF).unwrap();
        assert_eq!(zero.value, c(0.0, 0.0));
        assert!(eq_eval_product(c(1.0, 0.0), q(2.0), 0.0).is_err());
    }

    #[test]
    fn product_agrees_with_series() {
        let qq = q(2.0);
        let prod = eq_eval_product(c(1.0, 0.0), qq, PRODUCT_CUTOFF)
            .unwrap()
            .value;
        let ser = eq_series(c(1.0, 0.0), qq, 40).eval(1.0, 1e-12).unwrap();
        assert!((prod - ser).norm() <= 1e-10 * ser.norm());
        let ser_m1 = eq_series(c(-1.0, 0.0), qq, 40).eval(1.0, 1e-10).unwrap();
        let prod_m1 = eq_eval_product(c(-1.0, 0.0), qq, PRODUCT_CUTOFF)
            .unwrap()
            .value;
        assert!((prod_m1 - ser_m1).norm() <= 1e-10 * ser_m1.norm());
    }

    #[test]
    fn product_series_grid() {
        for qv in [1.5, 2.0, 3.0] {
            let qq = q(qv);
            for z in [
                c(0.5, 0.0),
                c(-0.5, 0.0),
                c(1.0, 0.0),
                c(-1.0, 0.0),
                c(0.0, 1.0),
            ] {
                let p = eq_eval_product(z, qq, PRODUCT_CUTOFF).unwrap().value;
                let s = eq_series(z, qq, DEFAULT_ORDER).eval(1.0, 1e-14).unwrap();
                assert!(
                    (p - s).norm() <= 1e-10 * s.norm(),
                    "q={qv} z={z}: {p} vs {s}"
                );
            }
        }
    }

    #[test]
    fn eigen_relation_on_coefficients() {
        for qv in [1.1, 2.0, 5.0] {
            let qq = q(qv);
            let lam = c(-0.8, 1.3);
            let s = eq_series(lam, qq, 50);
            let lhs = s.dq();
            let rhs = &eq_series(lam, qq, 49) * lam;
            for n in 0..=49 {
                // coefficient-wise relative, with an absolute floor in the subnormal range
                let tol = 1e-12 * rhs.coeff(n).norm() + 1e-300;
                assert!((lhs.coeff(n) - rhs.coeff(n)).norm() <= tol, "q={qv} n={n}");
            }
        }
    }

    #[test]
    fn q_trig_coefficients_and_origin() {
        let qq = q(2.0);
        let cs = cosq_series(1.0, qq, 8);
        let sn = sinq_series(1.0, qq, 8);
        assert_eq!(cs.eval_unchecked(0.0).re, 1.0);
        assert_eq!(sn.eval_unchecked(0.0).re, 0.0);
        assert!((cs.coeff(2).re + 1.0 / 3.0).abs() < 1e-16);
        assert!((cs.coeff(4).re - 1.0 / 315.0).abs() < 1e-18);
        for n in 0..=8 {
            if n % 2 == 1 {
                assert_eq!(cs.coeff(n).re, 0.0);
            } else {
                assert_eq!(sn.coeff(n).re, 0.0);
            }
        }
    }

    #[test]
    fn q_trig_pythagoras_is_modulus() {
        let qq = q(2.0);
        let t = 0.5;
        let cv = cosq_series(1.0, qq, 64).eval(t, 1e-14).unwrap().re;
        let sv = sinq_series(1.0, qq, 64).eval(t, 1e-14).unwrap().re;
        let modulus = eq_series(c(0.0, 1.0), qq, 64)
            .eval(t, 1e-14)
            .unwrap()
            .norm_sqr();
        assert!((cv * cv + sv * sv - modulus).abs() <= 1e-12);
        assert!((modulus - 1.0).abs() > 1e-3);
    }

    #[test]
    fn cos_q_is_unbounded() {
        let cs = cosq_series(1.0, q(2.0), 128);
        let peak = (0..=4000)
            .map(|i| cs.eval(i as f64 * 0.01, 1e-12).unwrap().re.abs())
            .fold(0.0, f64::max);
        assert!(peak > 1e3, "peak {peak}");
    }

    #[test]
    fn lnq_examples() {
        assert_eq!(lnq_eval(0.0, q(2.0), 10).unwrap(), 0.0);
        let near = lnq_eval(0.5, q(1.0 + 1e-8), 64).unwrap();
        assert!((near - 0.5f64.ln()).abs() <= 1e-6);
        let a = lnq_eval(0.5, q(2.0), 40).unwrap();
        let b = lnq_eval(0.5, q(2.0), 80).unwrap();
        assert!((a - b).abs() <= 1e-12);
    }

    #[test]
    fn lnq_domain_and_guard() {
        assert!(matches!(lnq_eval(2.0, q(2.0), 100), Err(QError::Domain(_))));
        assert!(matches!(
            lnq_eval(-2.5, q(2.0), 100),
            Err(QError::Domain(_))
        ));
        assert!(matches!(
            lnq_eval(1.9, q(2.0), 10),
            Err(QError::TailGuard { .. })
        ));
        assert!(lnq_eval(1.9, q(2.0), 2000).is_ok());
        assert!(lnq_eval(0.1, q(2.0), 0).is_err());
    }

    fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
        let mut flo = f(lo);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            let fm = f(mid);
            if fm == 0.0 {
                return mid;
            }
            if (fm > 0.0) == (flo > 0.0) {
                lo = mid;
                flo = fm;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }

    #[test]
    fn zeros_match_bisection() {
        let cases = [(2.0, 1.0), (3.0, 2.0), (1.5, 0.7)];
        for (qv, w) in cases {
            let qq = q(qv);
            let zeros = eq_zeros(qq, w, 4).unwrap();
            for &z in &zeros {
                let f = |t: f64| {
                    eq_eval_product(c(-w * t, 0.0), qq, PRODUCT_CUTOFF)
                        .unwrap()
                        .value
                        .re
                };
                let root = bisect(f, z / qv.sqrt(), z * qv.sqrt());
                assert!((root - z).abs() <= 1e-9 * z, "q={qv} w={w}: {root} vs {z}");
            }
        }
        assert_eq!(eq_zeros(q(2.0), 1.0, 4).unwrap(), vec![2.0, 4.0, 8.0, 16.0]);
        assert!((eq_zeros(q(3.0), 2.0, 1).unwrap()[0] - 0.75).abs() < 1e-15);
        assert!(eq_zeros(q(2.0), 0.0, 1).is_err());
    }

    #[test]
    fn zero_interlacing() {
        let qq = q(2.0);
        let zeros = eq_zeros(qq, 1.0, 6).unwrap();
        let mut prev_sign = 1.0;
        let mut lo = 0.0;
        for &z in &zeros {
            let mid = 0.5 * (lo + z);
            let v = eq_eval_product(c(-mid, 0.0), qq, PRODUCT_CUTOFF)
                .unwrap()
                .value
                .re;
            assert_eq!(v.signum(), prev_sign, "between {lo} and {z}");
            prev_sign = -prev_sign;
            lo = z;
        }
    }

    #[test]
    fn nearest_zero_lookup() {
        let qq = q(2.0);
        assert_eq!(nearest_eq_zero(qq, 1.0, 2.1), Some(2.0));
        assert_eq!(nearest_eq_zero(qq, 1.0, 0.3), Some(2.0));
        assert_eq!(nearest_eq_zero(qq, 1.0, 7.0), Some(8.0));
        assert_eq!(nearest_eq_zero(qq, 1.0, -1.0), None);
    }

    #[test]
    fn eq_eval_switches_strategy() {
        let qq = q(2.0);
        let big = eq_eval(c(-3.0, 0.0), qq).unwrap();
        let ser = eq_series(c(-3.0, 0.0), qq, 64).eval(1.0, 1e-13).unwrap();
        assert!((big - ser).norm() <= 1e-12);
        // q so close to 1 that the product would need billions of factors
        let near = eq_eval(c(-2.0, 0.0), q(1.0 + 1e-10)).unwrap();
        assert!((near.re - (-2.0f64).exp()).abs() <= 1e-8);
    }
}
