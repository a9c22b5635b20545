use thiserror::Error;

/// Errors raised by the workbench operations.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("vertex {vertex} is outside the vertex set [1, {n}]")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("vertex sets overlap")]
    OverlappingVertexSets,
    #[error("vertex set must be non-empty")]
    EmptyVertexSet,
    #[error("complex has ghost vertices: {0:?}")]
    GhostVertices(Vec<usize>),
    #[error("complex is not neighbourly")]
    NotNeighbourly,
    #[error("coefficient fields differ: {0} vs {1}")]
    FieldMismatch(String, String),
    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },
    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("value out of range: {0}")]
    OutOfRange(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("size guard exceeded: {what} = {value} > {limit}")]
    SizeGuard {
        what: &'static str,
        value: usize,
        limit: usize,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
