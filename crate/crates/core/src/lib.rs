//! Brooks-type coloring engine: for a graph of maximum degree `Δ`, produce either a proper
//! `(Δ-1)`-coloring or a verified clique certificate.

pub mod bitset;
pub mod certificate;
pub mod config;
pub mod constructions;
pub mod dimacs;
pub mod graph;
pub mod engine;
pub mod list;
pub mod oracle;
pub mod par;
pub mod reduction;
pub mod suites;

pub use bitset::VertexSet;
pub use graph::{CliqueCertificate, Coloring, Graph, GraphError, InducedSubgraph};
