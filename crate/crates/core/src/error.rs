use thiserror::Error;

/// Error type shared by every module of the workbench.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Input outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// A configured size or depth limit was exceeded.
    #[error("resource limit exceeded: {0}")]
    Resource(String),
    /// An identity that must hold failed; indicates a bug.
    #[error("internal error: {0}")]
    Internal(String),
    /// Malformed textual input.
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
