use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("pole at v = 1: {0}")]
    PoleAtOne(String),
    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("partition shape not exhausted after peeling: {0}")]
    ShapeNotExhausted(String),
    #[error("partition {0} is not in the admissible set")]
    NotAdmissible(String),
    #[error("configuration error: {0}")]
    Config(String),
    #[error("symbol {0} is not defined for this configuration")]
    UndefinedSymbol(String),
    #[error("no degree up to {0} can be tested safely: {1}")]
    TruncationUnsafe(usize, String),
    #[error("stability violation: {0}")]
    StabilityViolation(String),
    #[error("{0}")]
    Io(String),
}
