use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: self-loop on node {node}")]
    SelfLoop { line: usize, node: usize },

    #[error("line {line}: invalid token {token:?}")]
    InvalidToken { line: usize, token: String },

    #[error("line {line}: expected two node ids, found {found}")]
    MalformedLine { line: usize, found: usize },

    #[error("node {node} out of range for graph with {n} nodes")]
    NodeOutOfRange { node: usize, n: usize },

    #[error("graph is disconnected")]
    Disconnected,

    #[error("node {0} has zero degree")]
    IsolatedNode(usize),

    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("distance matrix has unreached entry at ({0}, {1})")]
    Unreached(usize, usize),

    #[error("graph is already complete")]
    AlreadyComplete,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("premise violated: {0}")]
    PremiseViolated(String),

    #[error("malformed snapshot data: {0}")]
    Snapshot(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
