use alloc::string::String;

/// Errors raised by the core algorithms.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("unknown amino-acid code {0:?}")]
    UnknownResidue(char),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("empty input: {0}")]
    Empty(&'static str),
    #[error("k = {k} must be smaller than the pool size {pool}")]
    NeighborIndex { k: usize, pool: usize },
    #[error("prediction count must be positive")]
    ZeroPrediction,
    #[error("invalid parameter {name}: {reason}")]
    InvalidParameter { name: &'static str, reason: String },
    #[error("at least two SSEs are required, found {0}")]
    TooFewSses(usize),
    #[error("no template has {0} SSEs")]
    NoMatchingTemplate(usize),
}

pub type Result<T, E = Error> = core::result::Result<T, E>;

pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Error {
    Error::InvalidParameter {
        name,
        reason: reason.into(),
    }
}
