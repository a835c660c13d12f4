//! Error type shared across the crate.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("cannot parse Cartan spec {spec:?}: {message}")]
    CartanSpec { spec: String, message: String },

    #[error("invalid Cartan matrix: {0}")]
    InvalidCartan(String),

    #[error(
        "matrix is not of finite type: leading principal minor #{index} \
         of the symmetrized matrix is {value}, expected > 0"
    )]
    NotFiniteType { index: usize, value: String },

    #[error("generator index {index} out of range for rank {rank}")]
    GeneratorOutOfRange { index: usize, rank: usize },

    #[error("root closure exceeded the safety bound of {cap} roots; the matrix is not of finite type")]
    RootClosureOverflow { cap: usize },

    #[error("group enumeration exceeded the safety cap of {cap} elements")]
    ElementCapExceeded { cap: usize },

    #[error("operands belong to different Cartan data ({left} vs {right})")]
    CartanMismatch { left: String, right: String },

    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("invalid JSON payload: {0}")]
    Json(String),

    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn json(msg: impl Into<String>) -> Self {
        Error::Json(msg.into())
    }
}
