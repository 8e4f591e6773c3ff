//! q-Riccati equation `D_q y + y(qt) y(t) + G y + w^2 = 0`, reached from the
//! oscillator through `y = D_q x / x`.

use num_complex::Complex64;

use crate::error::{QError, Result};
use crate::oscillator::OscillatorSpec;
use crate::qcore::{q_bracket, try_q_derivative_at, QParam};
use crate::series::{QSeries, DEFAULT_TAIL_TOL};
use crate::special::nearest_eq_zero;

/// `|x|` must exceed this times `1 + max|x|` for `D_q x / x` to be formed.
pub const ZERO_THRESHOLD_REL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RiccatiSample {
    pub t: f64,
    pub y: Complex64,
    pub residual: Complex64,
    /// `1 + |D_q y| + |y(qt) y(t)| + |G y| + w^2`.
    pub scale: f64,
}

impl RiccatiSample {
    pub fn relative_residual(&self) -> f64 {
        self.residual.norm() / self.scale
    }
}

/// If `x` is `c e_q(lambda t)` with real `lambda < 0`, returns `lambda`.
fn eq_profile_rate(x: &QSeries) -> Option<f64> {
    let c0 = x.coeff(0);
    if c0.norm() == 0.0 || x.order() < 2 {
        return None;
    }
    let lambda = x.coeff(1) / c0;
    if lambda.im != 0.0 || !(lambda.re < 0.0) {
        return None;
    }
    let mut expected = c0;
    for n in 1..=x.order().min(8) {
        expected = expected * lambda / q_bracket(n, x.q());
        if (x.coeff(n) - expected).norm() > 1e-12 * expected.norm() {
            return None;
        }
    }
    Some(lambda.re)
}

fn near_zero_error(x: &QSeries, t: f64) -> QError {
    let nearest_zero = eq_profile_rate(x).and_then(|lam| nearest_eq_zero(x.q(), -lam, t));
    QError::NearZero { t, nearest_zero }
}

/// `y(t) = D_q x(t) / x(t)` from the series, with `|x(t)|` compared against
/// `ZERO_THRESHOLD_REL * (1 + scale)`.
pub fn to_riccati_scaled(x: &QSeries, t: f64, scale: f64) -> Result<Complex64> {
    let xv = x.eval(t, DEFAULT_TAIL_TOL)?;
    if !(xv.norm() > ZERO_THRESHOLD_REL * (1.0 + scale)) {
        return Err(near_zero_error(x, t));
    }
    let dx = x.dq().eval(t, DEFAULT_TAIL_TOL)?;
    Ok(dx / xv)
}

pub fn to_riccati(x: &QSeries, t: f64) -> Result<Complex64> {
    to_riccati_scaled(x, t, 0.0)
}

/// Left side of the q-Riccati equation for a sampled `y`.
pub fn riccati_residual<F>(y: F, t: f64, gamma: f64, omega: f64, q: QParam) -> Result<Complex64>
where
    F: Fn(f64) -> Result<Complex64>,
{
    Ok(riccati_terms(&y, t, gamma, omega, q)?.0)
}

fn riccati_terms<F>(
    y: &F,
    t: f64,
    gamma: f64,
    omega: f64,
    q: QParam,
) -> Result<(Complex64, f64, Complex64)>
where
    F: Fn(f64) -> Result<Complex64>,
{
    let dy = try_q_derivative_at(y, t, q)?;
    let yt = y(t)?;
    let yqt = y(q.value() * t)?;
    let w2 = omega * omega;
    let residual = dy + yqt * yt + yt * gamma + w2;
    let scale = 1.0 + dy.norm() + (yqt * yt).norm() + (yt * gamma).norm() + w2;
    Ok((residual, scale, yt))
}

/// Real zeros of a real series on `[t0, t1]`: sign-change scan on
/// `samples` intervals, refined by bisection.
pub fn real_zeros(x: &QSeries, t0: f64, t1: f64, samples: usize) -> Result<Vec<f64>> {
    if !(t1 > t0) || samples == 0 {
        return Err(QError::InvalidParameter(format!(
            "zero scan needs t0 < t1 and samples >= 1 (t0={t0}, t1={t1})"
        )));
    }
    if !x.is_real() {
        return Ok(Vec::new());
    }
    let f = |t: f64| x.eval(t, DEFAULT_TAIL_TOL).map(|v| v.re);
    let step = (t1 - t0) / samples as f64;
    let mut zeros = Vec::new();
    let mut lo = t0;
    let mut flo = f(lo)?;
    for i in 1..=samples {
        let hi = t0 + step * i as f64;
        let fhi = f(hi)?;
        if flo == 0.0 {
            zeros.push(lo);
        } else if flo.signum() != fhi.signum() && fhi != 0.0 {
            let (mut a, mut b, mut fa) = (lo, hi, flo);
            for _ in 0..100 {
                let m = 0.5 * (a + b);
                let fm = f(m)?;
                if fm == 0.0 {
                    a = m;
                    b = m;
                    break;
                }
                if fm.signum() == fa.signum() {
                    a = m;
                    fa = fm;
                } else {
                    b = m;
                }
            }
            zeros.push(0.5 * (a + b));
        }
        lo = hi;
        flo = fhi;
    }
    if flo == 0.0 {
        zeros.push(lo);
    }
    Ok(zeros)
}

/// Riccati residuals of `y = D_q x / x` on a grid.
///
/// Points within `exclusion` of a zero of `x` at `t` or at `qt` are
/// skipped, as are points failing the near-zero threshold.
pub fn riccati_samples(
    spec: &OscillatorSpec,
    x: &QSeries,
    grid: &[f64],
    exclusion: f64,
) -> Result<Vec<RiccatiSample>> {
    if grid.is_empty() {
        return Ok(Vec::new());
    }
    let qv = spec.q.value();
    let lo = grid.iter().copied().fold(f64::INFINITY, f64::min).min(0.0);
    let hi = grid.iter().copied().fold(f64::NEG_INFINITY, f64::max) * qv;
    let zeros = if hi > lo {
        real_zeros(x, lo, hi, 4096)?
    } else {
        Vec::new()
    };
    let mut max_x = 0.0f64;
    for &t in grid {
        max_x = max_x.max(x.eval(t, DEFAULT_TAIL_TOL)?.norm());
        max_x = max_x.max(x.eval(qv * t, DEFAULT_TAIL_TOL)?.norm());
    }
    let y = |s: f64| to_riccati_scaled(x, s, max_x);
    let mut out = Vec::with_capacity(grid.len());
    for &t in grid {
        if t == 0.0
            || zeros
                .iter()
                .any(|z| (t - z).abs() < exclusion || (qv * t - z).abs() < exclusion)
        {
            continue;
        }
        match riccati_terms(&y, t, spec.gamma, spec.omega, spec.q) {
            Ok((residual, scale, yt)) => out.push(RiccatiSample {
                t,
                y: yt,
                residual,
                scale,
            }),
            Err(QError::NearZero { .. }) => continue,
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oscillator::build_basis;
    use crate::qcore::q_derivative_at;
    use crate::series::DEFAULT_ORDER;
    use crate::special::eq_series;

    fn q(v: f64) -> QParam {
        QParam::new(v).unwrap()
    }

    #[test]
    fn eigen_profile_gives_constant_y() {
        let qq = q(2.0);
        let lam = Complex64::new(-0.7, 0.4);
        let x = eq_series(lam, qq, DEFAULT_ORDER);
        for t in [0.0, 0.2, 0.9, 1.5] {
            let y = to_riccati(&x, t).unwrap();
            assert!((y - lam).norm() <= 1e-13, "t={t}: {y}");
        }
        let flat = QSeries::constant(Complex64::new(3.0, 0.0), 5, qq);
        assert_eq!(to_riccati(&flat, 0.4).unwrap(), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn combination_matches_sampled_quotient() {
        let qq = q(2.0);
        let spec = OscillatorSpec::new(1.0, 1.0, qq).unwrap();
        let x = build_basis(&spec, DEFAULT_ORDER)
            .unwrap()
            .real_combination(0.8, -0.3);
        let t = 0.3;
        let y = to_riccati(&x, t).unwrap();
        let f = |s: f64| x.eval_unchecked(s);
        let direct = q_derivative_at(f, t, qq).unwrap() / f(t);
        assert!((y - direct).norm() <= 1e-10 * direct.norm());
    }

    #[test]
    fn near_zero_names_eq_zero() {
        let qq = q(2.0);
        let x = eq_series(Complex64::new(-1.0, 0.0), qq, DEFAULT_ORDER);
        match to_riccati(&x, 2.0) {
            Err(QError::NearZero {
                nearest_zero: Some(z),
                ..
            }) => assert_eq!(z, 2.0),
            other => panic!("expected near-zero error, got {other:?}"),
        }
        let mixed = &x + &eq_series(Complex64::new(-3.0, 0.0), qq, DEFAULT_ORDER);
        assert_eq!(eq_profile_rate(&mixed), None);
    }

    #[test]
    fn constant_root_has_zero_residual() {
        let qq = q(2.0);
        let y = |_t: f64| Ok(Complex64::new(-1.0, 0.0));
        for t in [0.1, 0.5, 3.0] {
            assert_eq!(
                riccati_residual(y, t, 2.0, 1.0, qq).unwrap(),
                Complex64::new(0.0, 0.0)
            );
        }
        let off = |_t: f64| Ok(Complex64::new(0.5, 0.0));
        let r = riccati_residual(off, 0.7, 2.0, 1.0, qq).unwrap();
        assert_eq!(r, Complex64::new(0.25 + 1.0 + 1.0, 0.0));
        assert!(riccati_residual(y, 0.0, 2.0, 1.0, qq).is_err());
    }

    #[test]
    fn under_damped_combination_linearizes() {
        let qq = q(2.0);
        let spec = OscillatorSpec::new(1.0, 1.0, qq).unwrap();
        let x = build_basis(&spec, DEFAULT_ORDER).unwrap().combined();
        let grid: Vec<f64> = (1..=50).map(|i| i as f64 / 50.0).collect();
        let samples = riccati_samples(&spec, &x, &grid, 1e-2).unwrap();
        assert!(samples.len() >= 45);
        for s in &samples {
            assert!(s.relative_residual() <= 1e-8, "t={} r={}", s.t, s.residual);
        }
    }

    #[test]
    fn zero_scan_finds_eq_zeros() {
        let qq = q(2.0);
        let x = eq_series(Complex64::new(-1.0, 0.0), qq, 128);
        let z = real_zeros(&x, 0.0, 9.0, 900).unwrap();
        assert_eq!(z.len(), 3);
        for (got, want) in z.iter().zip([2.0, 4.0, 8.0]) {
            assert!((got - want).abs() <= 1e-9);
        }
    }
}
