use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid CSR structure: {0}")]
    InvalidCsr(String),

    #[error("zero pivot encountered in ILU(0) at row {row}")]
    ZeroPivot { row: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("bound not applicable: {0}")]
    BoundNotApplicable(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}:{line}: {msg}")]
    Parse {
        path: PathBuf,
        line: usize,
        msg: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn dim_err<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::DimensionMismatch(msg.into()))
}
