use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("index {index} out of range 1..={bound}")]
    IndexOutOfRange { index: usize, bound: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("unknown pattern name `{0}`")]
    UnknownPattern(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("blowup would have {edges} edges, above the cap of {cap}")]
    EdgeCapExceeded { edges: String, cap: u64 },

    #[error("tower level k={k} exceeds the configured cap {cap}")]
    TowerCapExceeded { k: u32, cap: u32 },
}

impl Error {
    /// Errors caused by a configured resource limit rather than bad input.
    pub fn is_resource(&self) -> bool {
        matches!(
            self,
            Error::EdgeCapExceeded { .. } | Error::TowerCapExceeded { .. }
        )
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
