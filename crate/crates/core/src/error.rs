use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("presentation mismatch: {left} vs {right}")]
    PresentationMismatch { left: String, right: String },
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("unknown derivation `{0}`")]
    UnknownDerivation(String),
    #[error("cannot invert the zero element")]
    ZeroInverse,
    #[error("element is not invertible here: {0}")]
    NotInvertible(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("check failed: {0}")]
    CheckFailed(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("ill-conditioned inverse (condition number {0:.3e})")]
    IllConditioned(f64),
}

pub type Result<T> = std::result::Result<T, Error>;
