//! The q-damped oscillator `D_q^2 x + G D_q x + w^2 x = 0`.
//!
//! Substituting `x = e_q(lambda t)` reduces the equation to
//! `lambda^2 + G lambda + w^2 = 0`, because `e_q` is an eigenfunction of
//! `D_q`. The three regimes differ only in how the two roots are turned
//! into a pair of independent series solutions:
//!
//! * under-damped: real and imaginary parts of `e_q(lambda_1 t)`. There is
//!   no `e_q(a + b) = e_q(a) e_q(b)` rule, so the solution does not split
//!   into a decay envelope times q-trigonometric factors.
//! * over-damped: `e_q(lambda_1 t)` and `e_q(lambda_2 t)`.
//! * critical: `e_q(-w t)` and `t d/dt e_q(-w t)`. The naive second
//!   solution `t e_q(-w t)` is not a solution when `q != 1`.
//!
//! This module also holds the classical `q = 1` oracle used for limit
//! checks and the first-order reduction `g D_q x + k x = 0`.

use std::fmt;

use num_complex::Complex64;

use crate::error::{QError, Result};
use crate::qcore::{try_q_derivative2_at, try_q_derivative_at, QParam};
use crate::series::{QSeries, DEFAULT_TAIL_TOL};
use crate::special::{eq_eval, eq_series, lnq_eval};

/// Relative discriminant tolerance below which a spec counts as critical.
pub const CRITICAL_TOL: f64 = 1e-9;

/// Classical oscillator `m x'' + g x' + k x = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassicalSpec {
    pub m: f64,
    pub gamma: f64,
    pub k: f64,
}

impl ClassicalSpec {
    pub fn new(m: f64, gamma: f64, k: f64) -> Result<Self> {
        if !(m > 0.0 && k > 0.0 && gamma >= 0.0)
            || !(m.is_finite() && k.is_finite() && gamma.is_finite())
        {
            return Err(QError::InvalidParameter(format!(
                "classical spec needs m > 0, k > 0, gamma >= 0 (got m={m}, gamma={gamma}, k={k})"
            )));
        }
        Ok(ClassicalSpec { m, gamma, k })
    }

    pub fn regime(&self) -> Regime {
        classify(self.gamma * self.gamma, 4.0 * self.m * self.k, CRITICAL_TOL)
    }
}

/// `(G, w, q)` with `G = gamma / m` and `w = sqrt(k / m)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OscillatorSpec {
    pub gamma: f64,
    pub omega: f64,
    pub q: QParam,
}

impl OscillatorSpec {
    pub fn new(gamma: f64, omega: f64, q: QParam) -> Result<Self> {
        if !(omega > 0.0) || !(gamma >= 0.0) || !omega.is_finite() || !gamma.is_finite() {
            return Err(QError::InvalidParameter(format!(
                "oscillator needs omega > 0 and Gamma >= 0 (got Gamma={gamma}, omega={omega})"
            )));
        }
        Ok(OscillatorSpec { gamma, omega, q })
    }

    pub fn from_classical(c: &ClassicalSpec, q: QParam) -> Result<Self> {
        Self::new(c.gamma / c.m, (c.k / c.m).sqrt(), q)
    }

    /// Unit-mass classical oscillator with the same `G` and `w`.
    pub fn classical_companion(&self) -> ClassicalSpec {
        ClassicalSpec {
            m: 1.0,
            gamma: self.gamma,
            k: self.omega * self.omega,
        }
    }

    pub fn regime(&self) -> Regime {
        classify(
            self.gamma * self.gamma,
            4.0 * self.omega * self.omega,
            CRITICAL_TOL,
        )
    }

    /// Radius `q / ((q - 1) w)` of the `Ln_q` closed form, which is also
    /// the first zero of `e_q(-w t)`.
    pub fn closed_form_radius(&self) -> f64 {
        let q = self.q.value();
        q / ((q - 1.0) * self.omega)
    }

    fn require_critical(&self, what: &str) -> Result<()> {
        if self.regime() != Regime::Critical {
            return Err(QError::InvalidParameter(format!(
                "{what} needs a critical spec (Gamma = 2 omega), got Gamma={}, omega={}",
                self.gamma, self.omega
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Regime {
    Under,
    Over,
    Critical,
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Regime::Under => "under",
            Regime::Over => "over",
            Regime::Critical => "critical",
        })
    }
}

/// Sign of `gamma2 - four_omega2`, with a relative band counted as zero.
pub fn classify(gamma2: f64, four_omega2: f64, tol: f64) -> Regime {
    let disc = gamma2 - four_omega2;
    if disc.abs() <= tol * gamma2.max(four_omega2) {
        Regime::Critical
    } else if disc < 0.0 {
        Regime::Under
    } else {
        Regime::Over
    }
}

/// Roots of `lambda^2 + G lambda + w^2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootPair {
    pub lambda1: Complex64,
    pub lambda2: Complex64,
    pub multiplicity: u8,
    pub regime: Regime,
    /// `sqrt(w^2 - G^2/4)`, only in the under-damped regime.
    pub big_omega: Option<f64>,
}

pub fn characteristic_roots(spec: &OscillatorSpec, tol: f64) -> RootPair {
    let (g, w) = (spec.gamma, spec.omega);
    let half = 0.5 * g;
    let regime = classify(g * g, 4.0 * w * w, tol);
    match regime {
        Regime::Critical => RootPair {
            lambda1: Complex64::new(-half, 0.0),
            lambda2: Complex64::new(-half, 0.0),
            multiplicity: 2,
            regime,
            big_omega: None,
        },
        Regime::Under => {
            let big = ((w - half) * (w + half)).sqrt();
            RootPair {
                lambda1: Complex64::new(-half, big),
                lambda2: Complex64::new(-half, -big),
                multiplicity: 1,
                regime,
                big_omega: Some(big),
            }
        }
        Regime::Over => {
            let root = ((half - w) * (half + w)).sqrt();
            // larger magnitude first, then the other from the product w^2
            let far = -half - root;
            let near = w * w / far;
            RootPair {
                lambda1: Complex64::new(near, 0.0),
                lambda2: Complex64::new(far, 0.0),
                multiplicity: 1,
                regime,
                big_omega: None,
            }
        }
    }
}

/// Two independent series solutions plus the constants `A`, `B` of the
/// displayed general solution.
#[derive(Debug, Clone, PartialEq)]
pub struct SolutionBasis {
    pub regime: Regime,
    pub x1: QSeries,
    pub x2: QSeries,
    pub labels: [String; 2],
    /// Only set in the critical regime.
    pub closed_form_radius: Option<f64>,
    /// Under-damped: coefficients of `e_q(lambda_1 t)` and `e_q(lambda_2 t)`;
    /// otherwise coefficients of `x1` and `x2`.
    pub a: Complex64,
    pub b: Complex64,
}

impl SolutionBasis {
    pub fn with_coefficients(mut self, a: Complex64, b: Complex64) -> Self {
        self.a = a;
        self.b = b;
        self
    }

    /// `A e_q(lambda_1 t) + B e_q(lambda_2 t)` (under-damped) or
    /// `A x1 + B x2`.
    pub fn combined(&self) -> QSeries {
        let (wa, wb) = match self.regime {
            // e_q(lambda_(1,2) t) = x1 +- i x2
            Regime::Under => (self.a + self.b, Complex64::i() * (self.a - self.b)),
            _ => (self.a, self.b),
        };
        QSeries::linear_combination(&[(wa, &self.x1), (wb, &self.x2)])
            .expect("basis elements share q")
    }

    /// `A x1 + B x2` over the basis itself, for every regime.
    pub fn real_combination(&self, a: f64, b: f64) -> QSeries {
        &(&self.x1 * a) + &(&self.x2 * b)
    }
}

pub fn build_basis(spec: &OscillatorSpec, order: usize) -> Result<SolutionBasis> {
    if order < 2 {
        return Err(QError::InvalidParameter(format!(
            "basis needs order >= 2, got {order}"
        )));
    }
    let roots = characteristic_roots(spec, CRITICAL_TOL);
    let one = Complex64::new(1.0, 0.0);
    let basis = match roots.regime {
        Regime::Under => {
            let e = eq_series(roots.lambda1, spec.q, order);
            let labels = if spec.gamma == 0.0 {
                ["cos_q(omega t)".to_string(), "sin_q(omega t)".to_string()]
            } else {
                [
                    "Re e_q(lambda1 t)".to_string(),
                    "Im e_q(lambda1 t)".to_string(),
                ]
            };
            SolutionBasis {
                regime: Regime::Under,
                x1: e.re(),
                x2: e.im(),
                labels,
                closed_form_radius: None,
                a: one,
                b: one,
            }
        }
        Regime::Over => SolutionBasis {
            regime: Regime::Over,
            x1: eq_series(roots.lambda1, spec.q, order),
            x2: eq_series(roots.lambda2, spec.q, order),
            labels: ["e_q(lambda1 t)".to_string(), "e_q(lambda2 t)".to_string()],
            closed_form_radius: None,
            a: one,
            b: one,
        },
        Regime::Critical => {
            let x1 = eq_series(Complex64::new(-spec.omega, 0.0), spec.q, order);
            let x2 = x1.euler_op();
            SolutionBasis {
                regime: Regime::Critical,
                x1,
                x2,
                labels: [
                    "e_q(-omega t)".to_string(),
                    "t d/dt e_q(-omega t)".to_string(),
                ],
                closed_form_radius: Some(spec.closed_form_radius()),
                a: one,
                b: one,
            }
        }
    };
    Ok(basis)
}

/// `D_q^2 x + G D_q x + w^2 x`, truncated to `order(x) - 2`.
pub fn residual(spec: &OscillatorSpec, x: &QSeries) -> Result<QSeries> {
    if x.q() != spec.q {
        return Err(QError::QMismatch(x.q().value(), spec.q.value()));
    }
    let d1 = x.dq();
    let d2 = d1.dq();
    let w2 = spec.omega * spec.omega;
    Ok(&(&d2 + &(&d1 * spec.gamma)) + &(x * w2))
}

/// The same residual from samples of `f` at `t`, `qt` and `q^2 t`.
pub fn sampled_residual<F>(spec: &OscillatorSpec, f: F, t: f64) -> Result<Complex64>
where
    F: Fn(f64) -> Result<Complex64>,
{
    let d2 = try_q_derivative2_at(&f, t, spec.q)?;
    let d1 = try_q_derivative_at(&f, t, spec.q)?;
    Ok(d2 + d1 * spec.gamma + f(t)? * (spec.omega * spec.omega))
}

/// Critical second solution `(1/(q-1)) Ln_q(1 - (q-1) w t) e_q(-w t)`.
///
/// `order` is the number of `Ln_q` terms; near the radius the series
/// converges slowly, so this usually needs far more terms than the
/// power series of `x2` itself.
pub fn x2_closed_form(t: f64, spec: &OscillatorSpec, order: usize) -> Result<f64> {
    spec.require_critical("x2 closed form")?;
    let radius = spec.closed_form_radius();
    if !(t.abs() < radius) {
        return Err(QError::Domain(format!(
            "Ln_q closed form valid only for |t| < {radius}, got t = {t}"
        )));
    }
    let q = spec.q.value();
    let ln = lnq_eval((q - 1.0) * spec.omega * t, spec.q, order)?;
    let e = eq_eval(Complex64::new(-spec.omega * t, 0.0), spec.q)?.re;
    Ok(ln * e / (q - 1.0))
}

/// `x1 D_q x2 - x2 D_q x1`, with both derivatives taken on the series.
pub fn q_wronskian(basis: &SolutionBasis, t: f64) -> Result<Complex64> {
    let x1 = basis.x1.value_at(t)?;
    let x2 = basis.x2.value_at(t)?;
    let d1 = basis.x1.dq().value_at(t)?;
    let d2 = basis.x2.dq().value_at(t)?;
    Ok(x1 * d2 - x2 * d1)
}

/// Critical-case q-Wronskian `-w e_q(-w t)^2`.
///
/// Follows from `D_q x2 = -w (x1 + x2)`, itself a consequence of
/// `[t d/dt, D_q] = -D_q`. Valid for every `t`.
pub fn wronskian_closed_form(spec: &OscillatorSpec, t: f64) -> Result<f64> {
    spec.require_critical("Wronskian closed form")?;
    let e = eq_eval(Complex64::new(-spec.omega * t, 0.0), spec.q)?.re;
    Ok(-spec.omega * e * e)
}

fn perturbed_roots(spec: &OscillatorSpec, epsilon: f64) -> Result<(f64, f64)> {
    spec.require_critical("perturbation check")?;
    if !(epsilon > 0.0) {
        return Err(QError::InvalidParameter(format!(
            "epsilon must be positive, got {epsilon}"
        )));
    }
    let w = spec.omega;
    Ok((-w, (2.0 * w * epsilon).sqrt()))
}

/// Near-critical expansion with `G/2 = w + epsilon`.
///
/// Returns `([e_q(lambda_1 t) - e_q(-w t)] / sqrt(2 w eps), -x2(t) / w)`
/// with `lambda_1 = -w + sqrt(2 w eps)`. The two agree to `O(sqrt(eps))`.
pub fn perturbation_check(
    spec: &OscillatorSpec,
    epsilon: f64,
    t: f64,
    order: usize,
) -> Result<(f64, f64)> {
    let (center, delta) = perturbed_roots(spec, epsilon)?;
    let perturbed = eq_series(Complex64::new(center + delta, 0.0), spec.q, order).value_at(t)?;
    let base = eq_series(Complex64::new(center, 0.0), spec.q, order);
    let diff = (perturbed - base.value_at(t)?).re / delta;
    let x2 = base.euler_op().value_at(t)?.re;
    Ok((diff, -x2 / spec.omega))
}

/// Symmetric variant `[e_q(lambda_1 t) - e_q(lambda_2 t)] / (2 sqrt(2 w eps))`,
/// accurate to `O(eps)`.
pub fn perturbation_check_symmetric(
    spec: &OscillatorSpec,
    epsilon: f64,
    t: f64,
    order: usize,
) -> Result<(f64, f64)> {
    let (center, delta) = perturbed_roots(spec, epsilon)?;
    let plus = eq_series(Complex64::new(center + delta, 0.0), spec.q, order).value_at(t)?;
    let minus = eq_series(Complex64::new(center - delta, 0.0), spec.q, order).value_at(t)?;
    let x2 = eq_series(Complex64::new(center, 0.0), spec.q, order)
        .euler_op()
        .value_at(t)?
        .re;
    Ok(((plus - minus).re / (2.0 * delta), -x2 / spec.omega))
}

/// Closed-form solution of the classical oscillator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassicalSolution {
    pub regime: Regime,
    a: f64,
    b: f64,
    decay: f64,
    // under: angular frequency; over: half-width of the real roots
    spread: f64,
}

impl ClassicalSolution {
    pub fn eval(&self, t: f64) -> f64 {
        let envelope = (-self.decay * t).exp();
        match self.regime {
            Regime::Under => {
                envelope * (self.a * (self.spread * t).cos() + self.b * (self.spread * t).sin())
            }
            Regime::Over => {
                self.a * ((-self.decay + self.spread) * t).exp()
                    + self.b * ((-self.decay - self.spread) * t).exp()
            }
            Regime::Critical => envelope * (self.a + self.b * t),
        }
    }
}

/// `e^{-g t/2m}(A cos wt + B sin wt)`, `A e^{l1 t} + B e^{l2 t}` or
/// `(A + B t) e^{-g t/2m}` depending on the sign of `g^2 - 4mk`.
pub fn classical_solution(spec: &ClassicalSpec, a: f64, b: f64) -> ClassicalSolution {
    let regime = spec.regime();
    let decay = spec.gamma / (2.0 * spec.m);
    let spread = match regime {
        Regime::Under => (spec.k / spec.m - decay * decay).sqrt(),
        Regime::Over => (decay * decay - spec.k / spec.m).sqrt(),
        Regime::Critical => 0.0,
    };
    ClassicalSolution {
        regime,
        a,
        b,
        decay,
        spread,
    }
}

/// Classical coefficients matching `A x1 + B x2` of the q-basis as `q -> 1`.
///
/// Only the critical regime rescales: `t d/dt e^{-wt} = -w t e^{-wt}`.
pub fn classical_counterpart(spec: &OscillatorSpec, a: f64, b: f64) -> (ClassicalSpec, f64, f64) {
    let c = spec.classical_companion();
    match spec.regime() {
        Regime::Critical => (c, a, -spec.omega * b),
        _ => (c, a, b),
    }
}

/// Solution `x0 e_q(-(k/g) t)` of the first-order reduction `g D_q x + k x = 0`.
pub fn first_order_solution(
    gamma: f64,
    k: f64,
    x0: Complex64,
    q: QParam,
    order: usize,
) -> Result<QSeries> {
    if !(gamma > 0.0) {
        return Err(QError::InvalidParameter(format!(
            "first-order reduction needs gamma > 0, got {gamma}"
        )));
    }
    Ok(eq_series(Complex64::new(-k / gamma, 0.0), q, order).scale(x0))
}

/// Convenience: evaluate a series with the default tail tolerance.
pub fn series_evaluator(x: &QSeries) -> impl Fn(f64) -> Result<Complex64> + '_ {
    move |t| x.eval(t, DEFAULT_TAIL_TOL)
}
