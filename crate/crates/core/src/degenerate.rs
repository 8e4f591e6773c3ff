//! Repeated characteristic roots in constant-coefficient q-difference
//! equations of arbitrary order.
//!
//! The construction rests on three operator identities between the Euler
//! operator `E = t d/dt` and the Jackson derivative `D`:
//!
//! 1. `[E, D] = -D`
//! 2. `E D^n = D^n (E - n)`
//! 3. `E (w + D)^n = (w + D)^n E - n (w + D)^(n-1) D`
//!
//! The `*_check` functions apply both sides to a concrete series and return
//! the difference. That verifies each identity instance by instance on the
//! truncated coefficients; it is not a proof.
//!
//! From (3), if `(D + w) x = 0` then `t^k (d/dt)^k x` is annihilated by
//! `(D + w)^n` for every `k < n`, which gives the family built by
//! [`degenerate_basis`].

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{QError, Result};
use crate::qcore::QParam;
use crate::series::QSeries;
use crate::special::eq_series;

/// Difference of two sides of an operator identity.
#[derive(Debug, Clone, PartialEq)]
pub struct IdentityCheck {
    pub difference: QSeries,
    /// Largest coefficient modulus among the images being compared.
    pub scale: f64,
}

impl IdentityCheck {
    fn new(lhs: &QSeries, rhs: &QSeries) -> Self {
        IdentityCheck {
            difference: lhs - rhs,
            scale: lhs.max_abs().max(rhs.max_abs()),
        }
    }

    /// `max |difference|`, relative to `scale` (zero when both sides are zero).
    pub fn defect(&self) -> f64 {
        let d = self.difference.max_abs();
        if self.scale == 0.0 {
            d
        } else {
            d / self.scale
        }
    }
}

fn dq_pow(f: &QSeries, n: usize) -> QSeries {
    (0..n).fold(f.clone(), |acc, _| acc.dq())
}

/// `(D + w)^n f`. The order drops by `n`.
pub fn apply_operator(omega: f64, n: usize, f: &QSeries) -> Result<QSeries> {
    if f.order() < n {
        return Err(QError::InvalidParameter(format!(
            "(D + w)^{n} needs a series of order >= {n}, got {}",
            f.order()
        )));
    }
    let mut acc = f.clone();
    for _ in 0..n {
        let shifted = acc.truncate(acc.order() - 1);
        acc = &acc.dq() + &(&shifted * omega);
    }
    Ok(acc)
}

/// `E D f - D E f + D f`.
pub fn commutator_check(f: &QSeries) -> IdentityCheck {
    let d = f.dq();
    let lhs = &d.euler_op() + &d;
    let rhs = f.euler_op().dq();
    IdentityCheck::new(&lhs, &rhs)
}

/// `E D^n f - D^n (E - n) f`.
pub fn shift_identity_check(n: usize, f: &QSeries) -> Result<IdentityCheck> {
    if n == 0 || f.order() <= n {
        return Err(QError::InvalidParameter(format!(
            "shift identity needs n >= 1 and order > n (n = {n}, order = {})",
            f.order()
        )));
    }
    let lhs = dq_pow(f, n).euler_op();
    let shifted = &f.euler_op() - &(f * n as f64);
    let rhs = dq_pow(&shifted, n);
    Ok(IdentityCheck::new(&lhs, &rhs))
}

/// `E (w + D)^n f - [(w + D)^n E f - n (w + D)^(n-1) D f]`.
pub fn general_identity_check(omega: f64, n: usize, f: &QSeries) -> Result<IdentityCheck> {
    if n == 0 || f.order() <= n {
        return Err(QError::InvalidParameter(format!(
            "general identity needs n >= 1 and order > n (n = {n}, order = {})",
            f.order()
        )));
    }
    let lhs = apply_operator(omega, n, f)?.euler_op();
    let first = apply_operator(omega, n, &f.euler_op())?;
    let second = &apply_operator(omega, n - 1, &f.dq())? * n as f64;
    let rhs = &first - &second;
    Ok(IdentityCheck::new(&lhs, &rhs))
}

/// `t^k (d/dt)^k s`, which keeps the order of `s`.
pub fn euler_power(s: &QSeries, k: usize) -> QSeries {
    (0..k).fold(s.clone(), |acc, _| acc.ddt()).mul_t(k)
}

/// Solutions `x_k = t^k (d/dt)^k e_q(-w t)`, `k < n`, of `(D + w)^n x = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct DegenerateFamily {
    pub omega: f64,
    pub n: usize,
    pub q: QParam,
    pub members: Vec<QSeries>,
}

impl DegenerateFamily {
    /// `max_k max |(D + w)^n x_k|`, relative to the largest member coefficient.
    pub fn annihilation_defects(&self) -> Result<Vec<f64>> {
        self.members
            .iter()
            .map(|x| Ok(apply_operator(self.omega, self.n, x)?.max_abs() / x.max_abs().max(1e-300)))
            .collect()
    }

    /// Generalized q-Wronskian at `t = 0`: entry `(j, k)` is `D^j x_k` at 0.
    ///
    /// The matrix is an extension of the 2x2 q-Wronskian of the critical
    /// oscillator to `n` members.
    pub fn wronskian_matrix_at_origin(&self) -> DMatrix<Complex64> {
        DMatrix::from_fn(self.n, self.n, |j, k| dq_pow(&self.members[k], j).coeff(0))
    }

    pub fn wronskian_det_at_origin(&self) -> Complex64 {
        self.wronskian_matrix_at_origin().determinant()
    }
}

fn family_at(lambda: Complex64, n: usize, q: QParam, order: usize) -> Vec<QSeries> {
    let base = eq_series(lambda, q, order);
    (0..n).map(|k| euler_power(&base, k)).collect()
}

pub fn degenerate_basis(omega: f64, n: usize, q: QParam, order: usize) -> Result<DegenerateFamily> {
    if n == 0 || order < n + 2 {
        return Err(QError::InvalidParameter(format!(
            "degenerate family needs n >= 1 and order >= n + 2 (n = {n}, order = {order})"
        )));
    }
    Ok(DegenerateFamily {
        omega,
        n,
        q,
        members: family_at(Complex64::new(-omega, 0.0), n, q, order),
    })
}

/// `sum_k a_k D^k x = 0` with constant coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct QDifferenceEquation {
    pub a: Vec<Complex64>,
    pub q: QParam,
}

impl QDifferenceEquation {
    pub fn new(a: Vec<Complex64>, q: QParam) -> Result<Self> {
        if a.len() < 2 {
            return Err(QError::InvalidParameter(
                "equation degree must be >= 1".into(),
            ));
        }
        if a.last().is_none_or(|c| c.norm() == 0.0) {
            return Err(QError::InvalidParameter(
                "leading coefficient a_N must be nonzero".into(),
            ));
        }
        Ok(QDifferenceEquation { a, q })
    }

    /// Monic equation `prod (D - lambda_i)^(m_i) x = 0`.
    pub fn from_roots(roots: &[(Complex64, usize)], q: QParam) -> Result<Self> {
        let mut poly = vec![Complex64::new(1.0, 0.0)];
        for &(lambda, m) in roots {
            for _ in 0..m {
                let mut next = vec![Complex64::new(0.0, 0.0); poly.len() + 1];
                for (i, c) in poly.iter().enumerate() {
                    next[i + 1] += c;
                    next[i] -= c * lambda;
                }
                poly = next;
            }
        }
        Self::new(poly, q)
    }

    pub fn degree(&self) -> usize {
        self.a.len() - 1
    }

    /// `sum_(k=0..=N) a_k lambda^k`, including the constant term.
    pub fn characteristic(&self, lambda: Complex64) -> Complex64 {
        self.a
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, c| acc * lambda + c)
    }

    /// `sum_k a_k D^k x`, truncated to `order(x) - N`.
    pub fn apply(&self, x: &QSeries) -> Result<QSeries> {
        if x.q() != self.q {
            return Err(QError::QMismatch(x.q().value(), self.q.value()));
        }
        let n = self.degree();
        if x.order() < n {
            return Err(QError::InvalidParameter(format!(
                "series of order {} too short for a degree-{n} equation",
                x.order()
            )));
        }
        let out_order = x.order() - n;
        let mut acc = QSeries::zero(out_order, self.q);
        let mut d = x.clone();
        for (k, a_k) in self.a.iter().enumerate() {
            if k > 0 {
                d = d.dq();
            }
            acc = &acc + &(&d.truncate(out_order) * *a_k);
        }
        Ok(acc)
    }
}

/// `sum c_i x_i` over `e_q(lambda t)` for simple roots and the family
/// `t^k (d/dt)^k e_q(lambda t)`, `k < m`, for a root of multiplicity `m`.
pub fn general_solution(
    roots: &[(Complex64, usize)],
    coeffs: &[Complex64],
    q: QParam,
    order: usize,
) -> Result<QSeries> {
    let total: usize = roots.iter().map(|r| r.1).sum();
    if roots.iter().any(|r| r.1 == 0) {
        return Err(QError::Inconsistent(
            "root multiplicities must be >= 1".into(),
        ));
    }
    if total != coeffs.len() {
        return Err(QError::Inconsistent(format!(
            "{} coefficients for {total} solutions (sum of multiplicities)",
            coeffs.len()
        )));
    }
    let members: Vec<QSeries> = roots
        .iter()
        .flat_map(|&(lambda, m)| family_at(lambda, m, q, order))
        .collect();
    let terms: Vec<(Complex64, &QSeries)> = coeffs.iter().copied().zip(members.iter()).collect();
    QSeries::linear_combination(&terms)
}
