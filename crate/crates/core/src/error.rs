use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Input outside the domain of an operation (odd degree, singular curve, excluded parameter).
    #[error("domain error: {0}")]
    Domain(String),
    /// Malformed textual input.
    #[error("parse error: {0}")]
    Parse(String),
    /// A numerical procedure could not reach a decision.
    #[error("inconclusive: {0}")]
    Inconclusive(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
