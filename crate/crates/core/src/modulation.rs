//! q-periodic amplitudes and self-similar sampling windows.
//!
//! A function with `A(qt) = A(t)` has `D_q A = 0`, so multiplying a
//! solution by it leaves every q-difference equation satisfied. The sine
//! mode `sin(2 pi ln t / ln q)` is the one used for the modulated plots.

use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::error::{QError, Result};
use crate::output::TimeSeriesOutput;
use crate::qcore::QParam;
use crate::series::{QSeries, DEFAULT_TAIL_TOL};
use crate::Evaluator;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModulationKind {
    Constant,
    QPeriodicSin,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModulationSpec {
    pub kind: ModulationKind,
    pub amplitude: f64,
    pub q: QParam,
}

impl ModulationSpec {
    pub fn constant(amplitude: f64, q: QParam) -> Self {
        ModulationSpec {
            kind: ModulationKind::Constant,
            amplitude,
            q,
        }
    }

    pub fn qperiodic(amplitude: f64, q: QParam) -> Self {
        ModulationSpec {
            kind: ModulationKind::QPeriodicSin,
            amplitude,
            q,
        }
    }

    /// `A(t)`; the sine mode is defined for `t > 0` only.
    pub fn factor(&self, t: f64) -> Result<f64> {
        match self.kind {
            ModulationKind::Constant => Ok(self.amplitude),
            ModulationKind::QPeriodicSin => Ok(self.amplitude * qperiodic_sin(t, self.q)?),
        }
    }
}

/// `sin(2 pi ln t / ln q)`.
pub fn qperiodic_sin(t: f64, q: QParam) -> Result<f64> {
    if !(t > 0.0) || !t.is_finite() {
        return Err(QError::Domain(format!(
            "q-periodic sine needs t > 0, got {t}"
        )));
    }
    let phase = t.ln() / q.value().ln();
    // reduce to one period before scaling by 2 pi
    Ok((TAU * (phase - phase.round())).sin())
}

/// `f(qt) - f(t)`, zero for q-periodic `f`.
pub fn verify_qperiodic<F: Fn(f64) -> f64>(f: F, t: f64, q: QParam) -> f64 {
    f(q.value() * t) - f(t)
}

/// `t -> A(t) x(t)`.
pub fn modulate(x: QSeries, spec: ModulationSpec) -> Evaluator {
    Box::new(move |t| {
        let a = spec.factor(t)?;
        Ok(x.eval(t, DEFAULT_TAIL_TOL)? * a)
    })
}

/// Samples `x_mod` on `(0, s]` at `points` uniform points for every scale `s`.
/// The grid starts at `s / points`; `t = 0` is never sampled.
pub fn self_similar_windows<F>(
    x_mod: F,
    scales: &[f64],
    points: usize,
) -> Result<Vec<TimeSeriesOutput>>
where
    F: Fn(f64) -> Result<Complex64>,
{
    if points < 2 {
        return Err(QError::InvalidParameter(format!(
            "windows need at least 2 points, got {points}"
        )));
    }
    scales
        .iter()
        .map(|&s| {
            if !(s > 0.0) || !s.is_finite() {
                return Err(QError::InvalidParameter(format!(
                    "window scale must be positive, got {s}"
                )));
            }
            let grid: Vec<f64> = (1..=points)
                .map(|i| {
                    if i == points {
                        s
                    } else {
                        s * i as f64 / points as f64
                    }
                })
                .collect();
            TimeSeriesOutput::sample(format!("scale {s}"), &grid, &x_mod)
        })
        .collect()
}
