use thiserror::Error;

use crate::graph::VertexSet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("edge ({0}, {0}) is a loop")]
    LoopRejected(usize),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    BadVertex { vertex: usize, n: usize },
    #[error("graphs are limited to {max} vertices, got {n}")]
    TooManyVertices { n: usize, max: usize },
    #[error("shore {0:?} is not a nonempty proper vertex subset")]
    BadShore(VertexSet),
    #[error("shore {0:?} has even cardinality")]
    EvenShore(VertexSet),
    #[error("graph is not matching covered")]
    NotMatchingCovered,
    #[error("cuts belong to different graphs")]
    GraphMismatch,
    #[error("graph needs at least 4 vertices, got {0}")]
    TooSmall(usize),
    #[error("vertex set is empty")]
    EmptySet,
    #[error("cut is trivial")]
    TrivialCut,
    #[error("cut is not tight")]
    NotTight,
    #[error("certificate rejected: {0}")]
    BadCertificate(String),
    #[error("search budget exceeded: {0}")]
    SearchBudgetExceeded(String),
    #[error("invalid splice: {0}")]
    BadSplice(String),
    #[error("invalid parameter: {0}")]
    BadParameter(String),
    #[error("unknown graph name {0:?}")]
    UnknownGraph(String),
    #[error("built-in enumeration stops at {max} vertices; supply an external graph6 corpus for {requested}")]
    NeedExternalCorpus { requested: usize, max: usize },
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
