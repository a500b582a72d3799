use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("pole of {0}")]
    Pole(String),
    #[error("accuracy target missed: achieved {achieved:e}")]
    Accuracy { achieved: f64 },
    #[error("outside domain: {0}")]
    Domain(String),
    #[error("not normalisable: {0}")]
    NonNormalisable(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("sector not implemented: {0}")]
    UnsupportedSector(String),
    #[error("projection incomplete, residual {residual:e}")]
    Incomplete { residual: f64 },
    #[error("truncation residual {residual:e} above tolerance")]
    Truncation { residual: f64 },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidInput(msg.into()))
}
