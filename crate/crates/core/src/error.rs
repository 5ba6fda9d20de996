use thiserror::Error;

use crate::solvers::SolverTrace;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    /// A tangent vector was used at a point other than its base.
    #[error("tangent vector is based at a different point")]
    BaseMismatch,
    #[error("non-finite input: {0}")]
    NonFinite(String),
    #[error("invalid manifold id `{0}`")]
    InvalidManifold(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("i/o error: {0}")]
    Io(String),
    #[error("operator not available: {0}")]
    Unavailable(String),
    /// A solver produced a non-finite iterate. The partial trace is kept so
    /// callers can flush it.
    #[error("numerical abort: {message}")]
    Numerical {
        message: String,
        trace: Box<SolverTrace>,
    },
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
