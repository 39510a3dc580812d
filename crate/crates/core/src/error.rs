use thiserror::Error;

/// Errors raised by the asymptotic and numerical routines.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("no root bracketed on ({lo}, {hi})")]
    NoRoot { lo: f64, hi: f64 },

    #[error("quadrature did not converge: estimate {value}, error estimate {error}")]
    Quadrature { value: f64, error: f64 },

    #[error("degenerate coordinate map: H = {h} <= 0")]
    DegenerateMap { h: f64 },

    #[error("degenerate problem: {0}")]
    Degenerate(String),

    #[error("ODE step failure at s = {at} (step {step})")]
    StepFailure { at: f64, step: f64 },

    #[error("fit rejected: {0}")]
    Fit(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}
