use thiserror::Error;

/// Errors produced by the digitization, recognition and experiment layers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("gauss digitization is empty")]
    EmptyDigitization,
    #[error("contract violation: {0}")]
    ContractViolation(String),
    #[error("degenerate border: {0}")]
    DegenerateBorder(String),
    #[error("edge {index} is not {delta} repetitions of the pattern of {p}/{q} or its reversal")]
    PatternMismatch { index: usize, p: u64, q: u64, delta: u64 },
    #[error("integer overflow in {0}")]
    Overflow(&'static str),
    #[error("experiment too small: {accepted} grid steps accepted, at least 4 required")]
    ExperimentTooSmall { accepted: usize },
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
