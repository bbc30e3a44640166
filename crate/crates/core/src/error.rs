use std::io;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("zero-energy filter")]
    ZeroEnergy,

    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("degenerate correlation: zero-lag value is zero")]
    DegenerateCorrelation,

    #[error("operation requires a real-valued filter")]
    ComplexFilter,

    #[error("non-finite LLR at index {0}")]
    NonFiniteLlr(usize),

    #[error("signal too short: need at least {needed} samples, got {actual}")]
    SignalTooShort { needed: usize, actual: usize },

    #[error("config error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }
}
