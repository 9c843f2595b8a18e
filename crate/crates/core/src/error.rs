use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph has {0} vertices; at most 64 are supported")]
    TooManyVertices(usize),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("adjacency is not symmetric at ({0}, {1})")]
    Asymmetric(usize, usize),
    #[error("{0}-{1} is not an edge")]
    NotAnEdge(usize, usize),
    #[error("operation undefined on the empty graph")]
    EmptyGraph,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("empty input")]
    Empty,
    #[error("graph6 size header byte {0} is not supported (only orders 0..=62)")]
    BadHeader(u8),
    #[error("byte {byte} at offset {offset} outside 63..=126")]
    ByteOutOfRange { byte: u8, offset: usize },
    #[error("graph6 payload has {got} bytes, expected {expected}")]
    Truncated { expected: usize, got: usize },
    #[error("nonzero padding bits in graph6 payload")]
    NonzeroPadding,
    #[error("line {line}: {msg}")]
    EdgeList { line: usize, msg: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WeightingError {
    #[error("weighting has {got} values for {expected} edges")]
    WrongLength { expected: usize, got: usize },
    #[error("weight on edge {0} must be strictly positive")]
    NonPositive(crate::graph::Edge),
    #[error("weighting has no value for edge {0}")]
    MissingEdge(crate::graph::Edge),
}
