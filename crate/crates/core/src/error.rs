use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An element whose payload does not match the semigroup it is used with.
    #[error("element `{element}` does not conform to {semigroup}")]
    Shape { semigroup: String, element: String },

    #[error("invalid semigroup descriptor: {0}")]
    Descriptor(String),

    /// Operators (or basis points) living on different Hilbert spaces.
    #[error("carrier mismatch: {0}")]
    Carrier(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("usage error: {0}")]
    Usage(String),

    #[error("resource limit exceeded: {0}")]
    Resource(String),

    #[error("domain error: {0}")]
    Domain(String),
}

pub type Result<T> = std::result::Result<T, Error>;
