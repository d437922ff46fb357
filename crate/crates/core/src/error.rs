use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("vector or form does not belong to module {0}")]
    ModuleMismatch(String),

    #[error("degenerate form: {0}")]
    Degenerate(String),

    #[error("basis order of {0} does not match the tensor product of the given factors")]
    BasisMismatch(String),

    #[error("internal inconsistency: {0}")]
    Inconsistency(String),

    #[error("no 3F2 mapping for this parameter tuple: {0}")]
    UnsupportedMapping(String),

    #[error("ill-defined hypergeometric series: {0}")]
    IllDefinedSeries(String),
}
