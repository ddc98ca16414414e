use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed input in one of the byte/line formats.
    #[error("format error at byte {offset}: {message}")]
    Format { offset: usize, message: String },

    /// The value cannot be expressed in the requested format (e.g. parallel edges in graph6).
    #[error("unsupported by format: {0}")]
    UnsupportedFormat(String),

    /// An operation was called outside its precondition.
    #[error("contract violation: {0}")]
    Contract(String),

    #[error("unknown edge id {0}")]
    UnknownEdge(usize),

    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("invalid embedding: {0}")]
    InvalidEmbedding(String),

    #[error("{what} exceeds the bound {limit}: {hint}")]
    BoundExceeded {
        what: String,
        limit: usize,
        hint: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn format(offset: usize, message: impl Into<String>) -> Self {
        Error::Format {
            offset,
            message: message.into(),
        }
    }

    pub(crate) fn contract(message: impl Into<String>) -> Self {
        Error::Contract(message.into())
    }
}
