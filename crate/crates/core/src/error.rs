use thiserror::Error;

use crate::graph::{EdgeId, VertexId};
use crate::minor::Violation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),

    #[error("unknown edge {0}")]
    UnknownEdge(EdgeId),

    #[error("duplicate edge id {0}")]
    DuplicateEdge(EdgeId),

    #[error("edge {0} is a loop and cannot be contracted")]
    LoopContraction(EdgeId),

    #[error("graph must be simple: {0}")]
    NotSimple(String),

    #[error("{what} has size {size}, above the configured cap {cap}")]
    CapExceeded {
        what: &'static str,
        size: usize,
        cap: usize,
    },

    #[error("invalid minor model: {0}")]
    InvalidModel(Violation),

    #[error("invalid witness: {0}")]
    InvalidWitness(String),

    #[error("invalid tree decomposition: {0}")]
    InvalidDecomposition(String),

    #[error("composition rejected: {0}")]
    Composition(String),

    #[error("path threading failed: {0}")]
    Threading(String),

    #[error("grid transfer failed: {0}")]
    Transfer(String),

    #[error("geometry: {0}")]
    Geometry(String),

    #[error("degenerate overlap between polysegments {0} and {1}")]
    Overlap(usize, usize),

    #[error("polysegments {ids:?} meet in a common point {point}")]
    TriplePoint { ids: Vec<usize>, point: String },

    #[error("polysegment {0} crosses itself")]
    SelfCrossing(usize),

    #[error("bodies {0} and {1} touch without an interior overlap")]
    EmptyInteriorContact(usize, usize),

    #[error("modeling failed: {0}")]
    Modeling(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn geometry(msg: impl Into<String>) -> Self {
        Error::Geometry(msg.into())
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }
}
