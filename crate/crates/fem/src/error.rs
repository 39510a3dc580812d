use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("degenerate element {index}: signed area {area:e}")]
    DegenerateElement { index: usize, area: f64 },

    #[error("invalid mesh: {0}")]
    InvalidMesh(String),

    #[error("non-conforming block interface: {0}")]
    NonConforming(String),

    #[error("stiffness singular after constraints (pivot {pivot:e} at equation {equation})")]
    Singular { equation: usize, pivot: f64 },

    #[error("solver stalled at relative residual {residual:e} after {iterations} iterations")]
    NoConvergence { residual: f64, iterations: usize },

    #[error("measurement region contains no elements")]
    EmptyRegion,

    #[error("mesh text line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(transparent)]
    Core(#[from] cusp_core::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}
