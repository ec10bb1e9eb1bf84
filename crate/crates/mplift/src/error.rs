use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("index {index} out of range 1..={max}")]
    InvalidIndex { index: usize, max: usize },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error("lift size {0} is odd but matching colors are present")]
    Parity(usize),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("singular transform: {0}")]
    Singular(String),
    #[error("outside the supported numeric regime: {0}")]
    OutOfRegime(String),
    #[error("construction failed: {0}")]
    ConstructionFailed(String),
    #[error("numerical failure: {0}")]
    Numeric(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

/// Coarse classification used for process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Validation,
    Construction,
    Numeric,
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::ConstructionFailed(_) => ErrorKind::Construction,
            Error::Singular(_) | Error::OutOfRegime(_) | Error::Numeric(_) => ErrorKind::Numeric,
            _ => ErrorKind::Validation,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
