use thiserror::Error;

use crate::measures::MeasureKind;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid model parameters: {0}")]
    InvalidParams(String),

    #[error("{n} spins exceed the supported limit of {limit}")]
    DimensionOverflow { n: usize, limit: usize },

    #[error("assembled Hamiltonian is not Hermitian (max deviation {0:e})")]
    NonHermitian(f64),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("eigensolver did not converge in sector M = {sector} after {iterations} iterations")]
    NoConvergence { sector: i32, iterations: usize },

    #[error("site {site} out of range for a chain of {n} spins")]
    SiteOutOfRange { site: usize, n: usize },

    #[error("site {0} listed more than once")]
    DuplicateSite(usize),

    #[error("invalid site selection: {0}")]
    InvalidPartition(String),

    #[error("invalid density matrix: {0}")]
    InvalidDensityMatrix(String),

    #[error("subsystem {index} out of range for {count} subsystems")]
    BadSubsystem { index: usize, count: usize },

    #[error("{what}: negative value {value:e} beyond numerical tolerance")]
    NegativeValue { what: &'static str, value: f64 },

    #[error("measurement optimizer did not converge after {0} iterations")]
    OptimizerNoConvergence(usize),

    #[error("invalid grid specification: {0}")]
    InvalidGrid(String),

    #[error("no sweep data for h = {h} and measure {kind}")]
    MissingSlice { h: f64, kind: MeasureKind },

    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    #[error("sweep point J = {j}, alpha = {alpha}, h = {h} failed: {source}")]
    PointFailed {
        j: f64,
        alpha: f64,
        h: f64,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
