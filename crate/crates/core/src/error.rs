use crate::lattice::ValidationReport;

/// Errors produced by the patchworking engine.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invalid subdivision: {}", .0.summary())]
    InvalidSubdivision(ValidationReport),

    #[error(
        "exhaustive search over 2^{vertices} sign vectors exceeds the cap 2^{cap_log2}; \
         use random or hill-climb mode instead"
    )]
    CapExceeded { vertices: usize, cap_log2: u32 },

    /// An internal consistency check failed. On a correct build this never happens.
    #[error("anomaly: {0}")]
    Anomaly(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidArgument(msg.into()))
}
