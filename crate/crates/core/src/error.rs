use thiserror::Error;

/// Errors raised by q-calculus operations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum QError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("range error: {0}")]
    Range(String),

    /// The truncated series is not accurate enough at this time point.
    #[error(
        "tail guard failed at t = {t}: order {order} leaves tail estimate {estimate:e} > {tol:e}; rebuild with a larger order"
    )]
    TailGuard {
        t: f64,
        order: usize,
        estimate: f64,
        tol: f64,
    },

    #[error("series built under different q ({0} vs {1})")]
    QMismatch(f64, f64),

    #[error("solution is (nearly) zero at t = {t}{}", match .nearest_zero {
        Some(z) => format!("; nearest e_q zero at t = {z}"),
        None => String::new(),
    })]
    NearZero { t: f64, nearest_zero: Option<f64> },

    #[error("inconsistent input: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, QError>;
