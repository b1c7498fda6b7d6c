use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// An enumeration or sampling bound would be exceeded.
    #[error("resource bound exceeded: {0}")]
    Resource(String),
    /// The group model lacks data the operation needs (e.g. a Cayley table).
    #[error("capability error: {0}")]
    Capability(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    /// A plug-in produced output violating its documented contract.
    #[error("contract violation: {0}")]
    Contract(String),
    /// Malformed input document.
    #[error("invalid input: {0}")]
    Input(String),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
