use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// Some vertex reaches itself with negative total weight.
    #[error("negative cycle through vertex {vertex}")]
    NegativeCycle { vertex: usize },

    #[error("graph with {v} vertices exceeds the enumeration limit of {limit}")]
    TooLarge { v: usize, limit: usize },

    #[error("malformed input at line {line}, column {column}: {message}")]
    MalformedInput {
        line: usize,
        column: usize,
        message: String,
    },
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}
