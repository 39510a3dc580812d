use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid configuration: {0}")]
    Config(String),

    #[error(transparent)]
    Core(#[from] cusp_core::Error),

    #[error(transparent)]
    Fem(#[from] cusp_fem::Error),

    #[error(
        "mesh not converged: refinement changed the zone stress by {change:.3} at rho = {rho}"
    )]
    NotConverged { rho: f64, change: f64 },

    #[error("csv: {0}")]
    Csv(#[from] csv::Error),

    #[error("malformed table: {0}")]
    Table(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn config(msg: impl Into<String>) -> Error {
    Error::Config(msg.into())
}
