use crate::graph::{Vertex, VertexPair};

/// Errors raised by graph operations, complex construction and the samplers.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("unknown vertex {0}")]
    UnknownVertex(Vertex),

    #[error("{0} is not an edge")]
    NotAnEdge(VertexPair),

    #[error("cannot identify adjacent vertices {0}")]
    AdjacentPair(VertexPair),

    #[error("identification pair {pair} refers to vertex {vertex}, which was already merged")]
    StaleVertex { pair: VertexPair, vertex: Vertex },

    #[error("a vertex pair needs two distinct vertices, got {0} twice")]
    DegeneratePair(Vertex),

    #[error("invalid specification: {0}")]
    InvalidSpec(String),

    #[error("{what} exceeds capacity ({size} > {limit})")]
    Capacity {
        what: &'static str,
        size: usize,
        limit: usize,
    },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("recipe step {step} ({op}): {source}")]
    Recipe {
        step: usize,
        op: &'static str,
        source: Box<Error>,
    },

    #[error("sampler gave up: {0}")]
    Sampler(String),
}

impl Error {
    pub fn is_capacity(&self) -> bool {
        match self {
            Error::Capacity { .. } => true,
            Error::Recipe { source, .. } => source.is_capacity(),
            _ => false,
        }
    }

    pub(crate) fn spec(msg: impl Into<String>) -> Self {
        Error::InvalidSpec(msg.into())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
