use thiserror::Error;

/// Errors raised by graph construction, mutation-by-copy and parsing.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("graph on {0} vertices exceeds the engine limit of {max}", max = crate::graph::MAX_VERTICES)]
    TooManyVertices(usize),
    #[error("self-loop at vertex {0}")]
    Loop(usize),
    #[error("{0}-{1} is not an edge")]
    NotAnEdge(usize, usize),
    #[error("graph6 parse error at byte {offset}: {kind}")]
    Graph6 { offset: usize, kind: Graph6ErrorKind },
    #[error("adjacency list parse error on line {line}: {message}")]
    AdjacencyList { line: usize, message: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum Graph6ErrorKind {
    #[error("empty input")]
    Empty,
    #[error("malformed length prefix")]
    LengthPrefix,
    #[error("byte outside the printable range 63..=126")]
    NonPrintable,
    #[error("input ends before the adjacency data is complete")]
    Truncated,
    #[error("trailing bytes after the adjacency data")]
    TrailingGarbage,
    #[error("nonzero padding bits")]
    Padding,
}

/// Errors from the exhaustive search engines (minor search, exact colouring,
/// contraction gain).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("graph on {n} vertices exceeds the search limit of {limit}")]
    TooLarge { n: usize, limit: usize },
    #[error("vertex count {n} outside the supported range {min}..={max}")]
    OutOfRange { n: usize, min: usize, max: usize },
    #[error("invalid pattern: {0}")]
    InvalidPattern(String),
    #[error("invalid roots: {0}")]
    InvalidRoots(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}
