use thiserror::Error;

/// Errors raised by model construction and the check suites.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("degenerate data: {0}")]
    Degenerate(String),

    #[error("invalid model: {0}")]
    Model(String),

    #[error("incomplete model: missing {0}")]
    IncompleteModel(String),

    #[error("contract violation: {0}")]
    ContractViolation(String),

    #[error("almost complex structure is not integrable: {0}")]
    IntegrabilityViolation(String),

    #[error("model is not unimodular: {0}")]
    NonUnimodular(String),

    #[error("internal consistency failure: {0}")]
    InternalConsistency(String),

    #[error("{location}: {message}")]
    Parse { location: String, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
