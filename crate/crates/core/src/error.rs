use thiserror::Error;

/// Failure taxonomy shared by every module.
///
/// The variants are grouped so the command-line front end can map them onto
/// distinct exit codes: bad input, blown size guards, and failed
/// mathematical checks are reported differently.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("size limit exceeded: {0}")]
    SizeLimit(String),
    #[error("search budget exceeded: {0}")]
    Budget(String),
    #[error("unsupported mode: {0}")]
    Unsupported(String),
    #[error("not found: {0}")]
    NotFound(String),
    #[error("lemma violation: {0}")]
    LemmaViolation(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn size(msg: impl Into<String>) -> Self {
        Error::SizeLimit(msg.into())
    }
}
