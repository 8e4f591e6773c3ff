//! Exact truncated power series in `t` with complex coefficients.
//!
//! Every operator the solvers need (the Jackson derivative, the Euler
//! operator `t d/dt`, the classical derivative, products) acts on the
//! coefficient vector directly, so operator identities can be checked
//! coefficient by coefficient instead of by sampling.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{QError, Result};
use crate::qcore::{q_brackets, QParam};

/// Truncation order used when callers have no better estimate.
pub const DEFAULT_ORDER: usize = 64;

/// Relative tail tolerance used by [`QSeries::eval`] callers by default.
pub const DEFAULT_TAIL_TOL: f64 = 1e-12;

/// Power series `c_0 + c_1 t + ... + c_N t^N`, truncated at order `N`.
#[derive(Debug, Clone, PartialEq)]
pub struct QSeries {
    coeffs: Vec<Complex64>,
    q: QParam,
}

impl QSeries {
    pub fn new(coeffs: Vec<Complex64>, q: QParam) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(QError::InvalidParameter(
                "a series needs at least one coefficient".into(),
            ));
        }
        Ok(QSeries { coeffs, q })
    }

    pub fn from_real(coeffs: &[f64], q: QParam) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect(), q)
    }

    pub fn zero(order: usize, q: QParam) -> Self {
        QSeries {
            coeffs: vec![Complex64::new(0.0, 0.0); order + 1],
            q,
        }
    }

    pub fn constant(c: Complex64, order: usize, q: QParam) -> Self {
        let mut s = Self::zero(order, q);
        s.coeffs[0] = c;
        s
    }

    /// `t^n`, truncated at `order` (which must be at least `n`).
    pub fn monomial(n: usize, order: usize, q: QParam) -> Self {
        let mut s = Self::zero(order.max(n), q);
        s.coeffs[n] = Complex64::new(1.0, 0.0);
        s
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> Complex64 {
        self.coeffs.get(n).copied().unwrap_or_default()
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn q(&self) -> QParam {
        self.q
    }

    /// Jackson derivative: `c_n t^n -> [n]_q c_n t^(n-1)`.
    pub fn dq(&self) -> QSeries {
        let n = self.order();
        if n == 0 {
            return Self::zero(0, self.q);
        }
        let brackets = q_brackets(n, self.q);
        let coeffs = (1..=n).map(|k| self.coeffs[k] * brackets[k]).collect();
        QSeries { coeffs, q: self.q }
    }

    /// Euler operator `t d/dt`: `c_n -> n c_n`.
    pub fn euler_op(&self) -> QSeries {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| c * k as f64)
            .collect();
        QSeries { coeffs, q: self.q }
    }

    /// Classical derivative `d/dt`.
    pub fn ddt(&self) -> QSeries {
        let n = self.order();
        if n == 0 {
            return Self::zero(0, self.q);
        }
        let coeffs = (1..=n).map(|k| self.coeffs[k] * k as f64).collect();
        QSeries { coeffs, q: self.q }
    }

    /// Multiplication by `t^k`. The order grows by `k`; nothing is lost.
    pub fn mul_t(&self, k: usize) -> QSeries {
        let mut coeffs = vec![Complex64::new(0.0, 0.0); k];
        coeffs.extend_from_slice(&self.coeffs);
        QSeries { coeffs, q: self.q }
    }

    /// Cauchy product truncated at the smaller of the two orders.
    pub fn mul(&self, other: &QSeries) -> Result<QSeries> {
        self.check_q(other)?;
        let n = self.order().min(other.order());
        let coeffs = (0..=n)
            .map(|k| {
                (0..=k)
                    .map(|j| self.coeffs[j] * other.coeffs[k - j])
                    .sum::<Complex64>()
            })
            .collect();
        Ok(QSeries { coeffs, q: self.q })
    }

    pub fn scale(&self, factor: Complex64) -> QSeries {
        QSeries {
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
            q: self.q,
        }
    }

    pub fn scale_real(&self, factor: f64) -> QSeries {
        self.scale(Complex64::new(factor, 0.0))
    }

    pub fn truncate(&self, order: usize) -> QSeries {
        let keep = order.min(self.order()) + 1;
        QSeries {
            coeffs: self.coeffs[..keep].to_vec(),
            q: self.q,
        }
    }

    /// Coefficient-wise real part.
    pub fn re(&self) -> QSeries {
        self.map(|c| Complex64::new(c.re, 0.0))
    }

    /// Coefficient-wise imaginary part, as a real series.
    pub fn im(&self) -> QSeries {
        self.map(|c| Complex64::new(c.im, 0.0))
    }

    pub fn is_real(&self) -> bool {
        self.coeffs.iter().all(|c| c.im == 0.0)
    }

    fn map(&self, f: impl Fn(Complex64) -> Complex64) -> QSeries {
        QSeries {
            coeffs: self.coeffs.iter().copied().map(f).collect(),
            q: self.q,
        }
    }

    /// Largest coefficient modulus.
    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// `sum |c_n| |t|^n`, a magnitude scale for values at `t`.
    pub fn abs_term_sum(&self, t: f64) -> f64 {
        let at = t.abs();
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * at + c.norm())
    }

    /// Horner evaluation with no truncation check.
    pub fn eval_unchecked(&self, t: f64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, c| acc * t + c)
    }

    /// Horner evaluation guarded by the size of the last retained terms.
    ///
    /// Fails when `max(|c_N t^N|, |c_(N-1) t^(N-1)|) / (1 + |sum|)`
    /// exceeds `rel_tol`. Two terms are inspected because q-trigonometric
    /// series carry only every other power.
    pub fn eval(&self, t: f64, rel_tol: f64) -> Result<Complex64> {
        if !(rel_tol > 0.0) {
            return Err(QError::InvalidParameter(format!(
                "rel_tol must be positive, got {rel_tol}"
            )));
        }
        if !t.is_finite() {
            return Err(QError::Domain(format!("non-finite time {t}")));
        }
        let value = self.eval_unchecked(t);
        let n = self.order();
        let mut tail = (self.coeffs[n] * t.powi(n as i32)).norm();
        if n >= 1 {
            tail = tail.max((self.coeffs[n - 1] * t.powi(n as i32 - 1)).norm());
        }
        let estimate = tail / (1.0 + value.norm());
        if !(estimate <= rel_tol) {
            return Err(QError::TailGuard {
                t,
                order: n,
                estimate,
                tol: rel_tol,
            });
        }
        Ok(value)
    }

    /// Evaluation with [`DEFAULT_TAIL_TOL`].
    pub fn value_at(&self, t: f64) -> Result<Complex64> {
        self.eval(t, DEFAULT_TAIL_TOL)
    }

    pub fn check_q(&self, other: &QSeries) -> Result<()> {
        if self.q != other.q {
            return Err(QError::QMismatch(self.q.value(), other.q.value()));
        }
        Ok(())
    }

    /// `sum_i w_i s_i`, truncated at the smallest order.
    pub fn linear_combination(terms: &[(Complex64, &QSeries)]) -> Result<QSeries> {
        let (_, first) = terms
            .first()
            .ok_or_else(|| QError::Inconsistent("empty linear combination".into()))?;
        let order = terms.iter().map(|(_, s)| s.order()).min().unwrap_or(0);
        let mut acc = QSeries::zero(order, first.q);
        for (w, s) in terms {
            first.check_q(s)?;
            for (k, slot) in acc.coeffs.iter_mut().enumerate() {
                *slot += w * s.coeffs[k];
            }
        }
        Ok(acc)
    }

    fn zip_with(&self, other: &QSeries, f: impl Fn(Complex64, Complex64) -> Complex64) -> QSeries {
        assert_eq!(
            self.q, other.q,
            "QSeries arithmetic across different q values"
        );
        let n = self.order().min(other.order());
        let coeffs = (0..=n)
            .map(|k| f(self.coeffs[k], other.coeffs[k]))
            .collect();
        QSeries { coeffs, q: self.q }
    }
}

/// Addition truncates to the smaller order. Panics when `q` differs.
impl Add for &QSeries {
    type Output = QSeries;
    fn add(self, rhs: &QSeries) -> QSeries {
        self.zip_with(rhs, |a, b| a + b)
    }
}

/// Subtraction truncates to the smaller order. Panics when `q` differs.
impl Sub for &QSeries {
    type Output = QSeries;
    fn sub(self, rhs: &QSeries) -> QSeries {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Neg for &QSeries {
    type Output = QSeries;
    fn neg(self) -> QSeries {
        self.map(|c| -c)
    }
}

impl Mul<f64> for &QSeries {
    type Output = QSeries;
    fn mul(self, rhs: f64) -> QSeries {
        self.scale_real(rhs)
    }
}

impl Mul<Complex64> for &QSeries {
    type Output = QSeries;
    fn mul(self, rhs: Complex64) -> QSeries {
        self.scale(rhs)
    }
}
