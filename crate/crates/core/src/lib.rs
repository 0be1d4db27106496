//! Tight cuts in matching covered graphs.
//!
//! Barrier-cuts and 2-separation cuts with certificates, GS-cuts and
//! essential GS-cuts, classification of non-trivial tight cuts, tight cut
//! decomposition into bricks and braces, and exhaustive property sweeps over
//! small-graph corpora.

pub mod corpus;
pub mod decomp;
pub mod elp;
pub mod error;
pub mod graph;
pub mod gscut;
pub mod matching;
pub mod verify;

pub use error::{Error, Result};
pub use graph::{build_graph, Cut, MultiGraph, VertexSet};
