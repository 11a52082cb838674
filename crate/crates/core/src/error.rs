use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("duplicate arrow name `{0}`")]
    DuplicateArrow(String),

    #[error("vertex index {index} out of range (quiver has {count} vertices)")]
    VertexOutOfRange { index: usize, count: usize },

    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),

    #[error("invalid path: {0}")]
    InvalidPath(String),

    #[error("invalid tree: {0}")]
    InvalidTree(String),

    #[error("invalid path order: {0}")]
    InvalidOrder(String),

    #[error("{0} requires a monomial order (shortlex or weighted shortlex)")]
    NotMonomial(&'static str),

    #[error("representation is not stable: the framing vectors generate a subrepresentation of dimension {reached:?}, expected {expected:?}")]
    NotStable { reached: Vec<u32>, expected: Vec<u32> },

    #[error("multipartition {0} is not in S(d)")]
    NotInS(String),

    #[error("polynomial is not symmetric in the variables of vertex {0}")]
    NotSymmetric(usize),

    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("expression error at offset {pos}: {msg}")]
    Expr { pos: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse { line, msg: msg.into() }
    }

    pub(crate) fn arg(msg: impl Into<String>) -> Self {
        Error::Argument(msg.into())
    }
}
