use alloc::string::String;

/// Errors produced by the drift detection core.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("series too short: need at least {needed} values, got {got}")]
    SeriesTooShort { needed: usize, got: usize },
    #[error("non-finite value at position {index}")]
    NonFiniteValue { index: usize },
    #[error("normal equations are singular (pivot {pivot} of {size})")]
    RankDeficient { pivot: usize, size: usize },
    #[error("no admissible threshold split under the regime-size constraint")]
    NoAdmissibleSplit,
    #[error("threshold fit is not significant (p = {p_value})")]
    NotSignificant { p_value: f64 },
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("missing parameter `{0}`")]
    MissingParam(String),
    #[error("bad parameter `{name}`: {reason}")]
    BadParam { name: String, reason: String },
    #[error("value {value} outside the accepted domain: {reason}")]
    DomainError { value: f64, reason: &'static str },
    #[error("empty error segment")]
    EmptySegment,
    #[error("both error segments have a zero third quartile")]
    DegenerateZero,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("model kinds differ")]
    KindMismatch,
    #[error("empty training batch")]
    EmptyBatch,
    #[error("bad generator spec: {0}")]
    BadSpec(String),
}

pub type Result<T> = core::result::Result<T, Error>;

pub(crate) fn bad_param(name: &str, reason: &str) -> Error {
    Error::BadParam {
        name: name.into(),
        reason: reason.into(),
    }
}
