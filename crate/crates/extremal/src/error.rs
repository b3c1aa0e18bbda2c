use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("resource error: {0}")]
    Resource(String),
    #[error("integrity error: {0}")]
    Integrity(String),
    #[error("format error at line {line}: {msg}")]
    Format { line: usize, msg: String },
    #[error("no convergence after {iterations} iterations (residual {residual:e})")]
    Numerical { iterations: usize, residual: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
