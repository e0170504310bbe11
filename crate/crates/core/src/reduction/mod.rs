//! Maximum-clique structure, independent transversals, hitting sets and the top-level
//! `(Δ-1)`-coloring-or-clique pipeline.

mod cliques;
mod hitting;
mod pipeline;
mod transversal;

use thiserror::Error;

use crate::engine::EngineError;
use crate::oracle::OracleError;

pub use cliques::{maximal_independent_extension, maximum_cliques};
pub use hitting::{build_transversal_instance, default_s, di_partition, hitting_set, DiGroup, DiPartition};
pub use pipeline::{clique_bound, color_or_clique, color_or_clique_with, peel_set, PipelineOptions, PipelineResult, Route};
pub use transversal::{find_independent_transversal, transversal_exists_exhaustive, TransversalInstance};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReductionError {
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Engine(#[from] EngineError),
    /// The maximum cliques do not intersect the way the hitting-set argument needs.
    #[error("maximum-clique structure: {detail}")]
    Structure { detail: String, cliques: Vec<Vec<usize>> },
    #[error("internal invariant: {0}")]
    Invariant(String),
    #[error("contract violation: {0}")]
    Contract(String),
    /// The exact path is out of reach; carries what the fast paths achieved.
    #[error("refused: {0}")]
    Refused(String),
    #[error("clique of size {size} is below the bound {bound}")]
    BoundNotMet { size: usize, bound: usize },
}
