//! Multigraphs with stable vertex identities, cut algebra and contraction.

mod io;
mod multigraph;
mod vertex_set;

pub use io::{parse_graph6, parse_json, read_graph6, to_graph6, to_json, GraphJson};
pub use multigraph::{
    build_graph, cuts_cross, shores_cross, ComponentReport, Contraction, Cut, Edge, MultiGraph,
    VertexId, VertexInfo,
};
pub use vertex_set::{subsets, VertexSet, MAX_VERTICES};
