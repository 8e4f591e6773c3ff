//! Sampled time series and their CSV form.
//!
//! Numbers are written with Rust's shortest round-trip formatting, so a
//! file parses back to the exact same `f64` values.

use std::fmt::Write as _;
use std::io;

use num_complex::Complex64;

use crate::error::{QError, Result};

/// Sampled `(t, x)` pairs, ascending in `t`.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeriesOutput {
    pub label: String,
    pub t: Vec<f64>,
    pub x: Vec<Complex64>,
}

/// `steps` equally spaced points from `t0` to `t1` inclusive.
pub fn linspace(t0: f64, t1: f64, steps: usize) -> Vec<f64> {
    match steps {
        0 => Vec::new(),
        1 => vec![t0],
        _ => {
            let h = (t1 - t0) / (steps - 1) as f64;
            (0..steps)
                .map(|i| {
                    if i + 1 == steps {
                        t1
                    } else {
                        t0 + h * i as f64
                    }
                })
                .collect()
        }
    }
}

impl TimeSeriesOutput {
    pub fn sample<F>(label: impl Into<String>, grid: &[f64], f: F) -> Result<Self>
    where
        F: Fn(f64) -> Result<Complex64>,
    {
        let x = grid.iter().map(|&t| f(t)).collect::<Result<Vec<_>>>()?;
        Ok(TimeSeriesOutput {
            label: label.into(),
            t: grid.to_vec(),
            x,
        })
    }

    pub fn len(&self) -> usize {
        self.t.len()
    }

    pub fn is_empty(&self) -> bool {
        self.t.is_empty()
    }

    pub fn is_real(&self) -> bool {
        self.x.iter().all(|v| v.im == 0.0)
    }

    pub fn t_max(&self) -> Option<f64> {
        self.t.last().copied()
    }

    /// Column names: `x` for real data, `x_re,x_im` otherwise.
    pub fn value_columns(&self) -> Vec<&'static str> {
        if self.is_real() {
            vec!["x"]
        } else {
            vec!["x_re", "x_im"]
        }
    }

    /// Value cells for row `i`, matching [`Self::value_columns`].
    pub fn value_cells(&self, i: usize, real: bool) -> Vec<f64> {
        if real {
            vec![self.x[i].re]
        } else {
            vec![self.x[i].re, self.x[i].im]
        }
    }

    pub fn to_csv(&self) -> String {
        let real = self.is_real();
        let mut out = String::from("t,");
        out.push_str(&self.value_columns().join(","));
        out.push('\n');
        for i in 0..self.len() {
            let mut cells = vec![self.t[i]];
            cells.extend(self.value_cells(i, real));
            push_row(&mut out, &cells);
        }
        out
    }

    pub fn write_csv<W: io::Write>(&self, mut w: W) -> io::Result<()> {
        w.write_all(self.to_csv().as_bytes())
    }

    /// Parses the output of [`Self::to_csv`].
    pub fn from_csv(label: impl Into<String>, text: &str) -> Result<Self> {
        let mut lines = text.lines();
        let header = lines
            .next()
            .ok_or_else(|| QError::Inconsistent("empty CSV".into()))?;
        let complex = match header {
            "t,x" => false,
            "t,x_re,x_im" => true,
            other => {
                return Err(QError::Inconsistent(format!(
                    "unexpected CSV header {other:?}"
                )))
            }
        };
        let mut t = Vec::new();
        let mut x = Vec::new();
        for (lineno, line) in lines.enumerate() {
            let cells = parse_row(line)
                .map_err(|e| QError::Inconsistent(format!("line {}: {e}", lineno + 2)))?;
            match (complex, cells.as_slice()) {
                (false, [tv, xv]) => {
                    t.push(*tv);
                    x.push(Complex64::new(*xv, 0.0));
                }
                (true, [tv, re, im]) => {
                    t.push(*tv);
                    x.push(Complex64::new(*re, *im));
                }
                _ => {
                    return Err(QError::Inconsistent(format!(
                        "line {}: wrong number of columns",
                        lineno + 2
                    )))
                }
            }
        }
        Ok(TimeSeriesOutput {
            label: label.into(),
            t,
            x,
        })
    }
}

/// Formats one CSV row of numbers.
pub fn push_row(out: &mut String, cells: &[f64]) {
    for (i, c) in cells.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        write!(out, "{c:?}").expect("writing to String");
    }
    out.push('\n');
}

pub fn parse_row(line: &str) -> std::result::Result<Vec<f64>, std::num::ParseFloatError> {
    line.split(',').map(|c| c.trim().parse::<f64>()).collect()
}
