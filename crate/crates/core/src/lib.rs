//! Jackson q-calculus toolkit for the q-damped harmonic oscillator.
//!
//! * [`qcore`]: the deformation parameter, q-brackets, q-factorials and the
//!   sampled Jackson derivative.
//! * [`series`]: truncated power series on which all operators act exactly.
//! * [`special`]: `e_q` (series and product), `cos_q`, `sin_q`, `Ln_q`, zeros.
//! * [`oscillator`]: roots, regimes and solution bases of
//!   `D_q^2 x + G D_q x + w^2 x = 0`, the q-Wronskian, the classical oracle.
//! * [`degenerate`]: operator identities and solution families for
//!   repeated characteristic roots in order-N equations.
//! * [`riccati`]: the q-Riccati equation obtained from `y = D_q x / x`.
//! * [`modulation`]: q-periodic amplitudes and self-similar sampling windows.
//! * [`output`]: sampled time series and their CSV form.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod degenerate;
pub mod error;
pub mod modulation;
pub mod oscillator;
pub mod output;
pub mod qcore;
pub mod riccati;
pub mod series;
pub mod special;

pub use num_complex::Complex64;

pub use degenerate::{DegenerateFamily, QDifferenceEquation};
pub use error::{QError, Result};
pub use modulation::{ModulationKind, ModulationSpec};
pub use oscillator::{
    characteristic_roots, ClassicalSpec, OscillatorSpec, Regime, RootPair, SolutionBasis,
};
pub use output::TimeSeriesOutput;
pub use qcore::{q_bracket, q_derivative_at, q_factorial, QParam};
pub use series::{QSeries, DEFAULT_ORDER, DEFAULT_TAIL_TOL};
pub use special::{eq_eval, eq_eval_product, eq_series, eq_zeros, lnq_eval, EqProductEval};

/// Boxed fallible evaluator `t -> x(t)`.
pub type Evaluator = Box<dyn Fn(f64) -> Result<Complex64> + Send + Sync>;
