use thiserror::Error;

/// Errors reported by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("vertex {0} is out of range")]
    VertexOutOfRange(usize),

    #[error("invalid tree decomposition: {0}")]
    InvalidDecomposition(String),

    #[error("layout is not a permutation of the vertex set: {0}")]
    NotAPermutation(String),

    #[error("graph is not connected")]
    Disconnected,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("field too small: {0}")]
    FieldTooSmall(String),

    #[error("matroids are represented over different fields")]
    FieldMismatch,

    #[error("unknown ground element (layer {layer}, element {element})")]
    UnknownElement { layer: usize, element: usize },

    #[error("cap exceeded: {0}")]
    CapExceeded(String),

    #[error("forbidden subgraph present: {0}")]
    ObstructionPresent(String),

    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}
