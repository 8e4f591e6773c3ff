//! q-arithmetic primitives and the sampled Jackson q-derivative.

use std::fmt;
use std::ops::{Div, Sub};

use crate::error::{QError, Result};

/// Deformation parameter `q`, restricted to `q > 1`.
///
/// For `q > 1` the Jackson q-exponential is entire, which every other
/// module relies on. The classical (`q = 1`) oracle in
/// [`crate::oscillator`] does not take a `QParam` at all.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct QParam(f64);

impl QParam {
    pub fn new(q: f64) -> Result<Self> {
        if !q.is_finite() || q <= 1.0 {
            return Err(QError::InvalidParameter(format!(
                "q must be finite and > 1, got {q}"
            )));
        }
        Ok(QParam(q))
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.0
    }

    /// `1 - 1/q`, the scale of the infinite-product factors.
    #[inline]
    pub fn one_minus_inv(self) -> f64 {
        1.0 - 1.0 / self.0
    }
}

impl fmt::Display for QParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// `[n]_q = 1 + q + ... + q^(n-1)`, with `[0]_q = 0`.
///
/// Summed term by term; the quotient `(q^n - 1)/(q - 1)` cancels badly
/// as `q -> 1+`.
pub fn q_bracket(n: usize, q: QParam) -> f64 {
    let q = q.value();
    let mut sum = 0.0;
    let mut power = 1.0;
    for _ in 0..n {
        sum += power;
        power *= q;
    }
    sum
}

/// `[n]_q! = [1]_q [2]_q ... [n]_q`, with `[0]_q! = 1`.
pub fn q_factorial(n: usize, q: QParam) -> Result<f64> {
    let mut acc = 1.0;
    for k in 1..=n {
        acc *= q_bracket(k, q);
        if !acc.is_finite() {
            return Err(QError::Range(format!(
                "[{n}]_q! exceeds f64 range at q = {q} (overflow at k = {k})"
            )));
        }
    }
    Ok(acc)
}

/// Brackets `[0]_q ..= [n]_q` in one pass.
pub fn q_brackets(n: usize, q: QParam) -> Vec<f64> {
    let q = q.value();
    let mut out = Vec::with_capacity(n + 1);
    let mut sum = 0.0;
    let mut power = 1.0;
    out.push(0.0);
    for _ in 0..n {
        sum += power;
        power *= q;
        out.push(sum);
    }
    out
}

fn check_point(t: f64) -> Result<()> {
    if t == 0.0 {
        return Err(QError::Domain(
            "the q-difference quotient is singular at t = 0; use the series form (QSeries::dq)"
                .into(),
        ));
    }
    if !t.is_finite() {
        return Err(QError::Domain(format!("non-finite time {t}")));
    }
    Ok(())
}

/// Jackson derivative `(f(qt) - f(t)) / ((q - 1) t)` of a sampled function.
pub fn q_derivative_at<T, F>(f: F, t: f64, q: QParam) -> Result<T>
where
    T: Sub<Output = T> + Div<f64, Output = T>,
    F: Fn(f64) -> T,
{
    check_point(t)?;
    let q = q.value();
    Ok((f(q * t) - f(t)) / ((q - 1.0) * t))
}

/// Same as [`q_derivative_at`] for evaluators that can fail.
pub fn try_q_derivative_at<T, F>(f: F, t: f64, q: QParam) -> Result<T>
where
    T: Sub<Output = T> + Div<f64, Output = T>,
    F: Fn(f64) -> Result<T>,
{
    check_point(t)?;
    let q = q.value();
    Ok((f(q * t)? - f(t)?) / ((q - 1.0) * t))
}

/// Second Jackson derivative from samples at `t`, `qt` and `q^2 t`.
pub fn try_q_derivative2_at<T, F>(f: F, t: f64, q: QParam) -> Result<T>
where
    T: Copy + Sub<Output = T> + Div<f64, Output = T>,
    F: Fn(f64) -> Result<T>,
{
    check_point(t)?;
    let qv = q.value();
    let inner_t = try_q_derivative_at(&f, t, q)?;
    let inner_qt = try_q_derivative_at(&f, qv * t, q)?;
    Ok((inner_qt - inner_t) / ((qv - 1.0) * t))
}
