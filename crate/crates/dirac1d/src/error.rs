use thiserror::Error;

/// Errors produced by the simulation and I/O layers.
#[derive(Debug, Error)]
pub enum DiracError {
    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    #[error("grid too coarse or too small: {0}")]
    Resolution(String),

    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("degenerate state: {0}")]
    DegenerateState(String),

    #[error("peak tracking failed: {0}")]
    Tracking(String),

    #[error("config error at line {line}: {message}")]
    Config { line: usize, message: String },

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, DiracError>;
