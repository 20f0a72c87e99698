use thiserror::Error;

/// Errors raised by graph construction and the analysis routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(String, String),
    #[error("self-loop at vertex `{0}`")]
    SelfLoop(String),
    #[error("negative weight {weight} on edge {{{a}, {b}}}")]
    NegativeWeight { a: String, b: String, weight: String },
    #[error("edge {{{a}, {b}}} references undeclared vertex `{missing}`")]
    UnknownEndpoint { a: String, b: String, missing: String },
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("{{{0}, {1}}} is not an edge of the graph")]
    UnknownEdge(String, String),
    #[error("enumeration produced more than {cap} items")]
    CapExceeded { cap: usize },
    #[error("graph is not connected")]
    Disconnected,
    #[error("no path joins `{0}` and `{1}`")]
    NoPath(String, String),
    #[error("expected two distinct vertices, got `{0}` twice")]
    SameVertex(String),
    #[error("matrix dimension {found} does not match {expected} vertices")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrices are indexed by different vertex sets")]
    VertexSetMismatch,
    #[error("weight is not metrizable: {0}")]
    NotMetrizable(String),
    #[error("weight is not pseudometrizable: {0}")]
    NotPseudometrizable(String),
    #[error("`{0}` and `{1}` are adjacent")]
    AdjacentPair(String, String),
    #[error("no slack at {{{0}, {1}}}: the distance there is forced")]
    NoSlack(String, String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
