use thiserror::Error;

use crate::graph::Vertex;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("vertex {vertex} out of range for a graph on {vertex_count} vertices")]
    InvalidVertex { vertex: Vertex, vertex_count: usize },

    #[error("loop at vertex {0}")]
    Loop(Vertex),

    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(Vertex, Vertex),

    #[error("distance parameter k must be at least 1")]
    ZeroDistance,

    #[error("invalid ordering: {0}")]
    InvalidOrdering(String),

    #[error("graph has {vertex_count} vertices, exceeding the cap of {cap} for {what}")]
    SizeCap {
        what: &'static str,
        vertex_count: usize,
        cap: usize,
    },

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("graph has treewidth greater than 2 (stuck with {remaining} vertices left)")]
    NotPartialTwoTree { remaining: usize },

    #[error("assignment violates condition ({condition}) at {location}")]
    Assignment {
        condition: &'static str,
        location: String,
    },

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Triangulation(#[from] crate::planar::TriangulationError),

    #[error(transparent)]
    Reduction(#[from] crate::planar::ReductionError),
}
