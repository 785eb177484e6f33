use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    /// A caller broke an operation precondition.
    #[error("contract violation: {0}")]
    Contract(String),

    /// Input data is malformed or out of range (NaN distances, eta below 1, ...).
    #[error("data error: {0}")]
    Data(String),

    #[error("infeasible triple ({x}, {y}, {z}): {reason}")]
    Infeasible {
        x: String,
        y: String,
        z: String,
        reason: String,
    },

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    /// A self-map produced a point outside its domain.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("unknown fixture `{name}`; valid names: {}", valid.join(", "))]
    UnknownFixture { name: String, valid: Vec<String> },

    #[error("estimation error: {0}")]
    Estimation(String),

    /// Monitored inequalities contradict the declared contraction coefficients.
    #[error("inconsistent data: {0}")]
    InconsistentData(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn contract(msg: impl Into<String>) -> Error {
    Error::Contract(msg.into())
}
