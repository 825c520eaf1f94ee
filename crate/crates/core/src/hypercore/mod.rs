//! Hypergraphs over small vertex universes, their set algebra, structural
//! predicates and isomorphism machinery.

mod canon;
mod edgeset;
mod graph;
mod hypergraph;

pub use canon::{
    canonical_form, canonical_labeling, isomorphic, isomorphic_colored, CanonicalForm, ColoredEdge,
    IsoCertificate,
};
pub use edgeset::{EdgeSet, Iter as EdgeSetIter, MAX_VERTICES};
pub use graph::Graph;
pub use hypergraph::{
    is_cross_intersecting, is_orthogonal, join, orthogonality_violation, Component, Hypergraph,
    Restriction,
};
pub(crate) use hypergraph::component_masks;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HyperError {
    #[error("vertex {vertex} is out of range for a universe of {n} vertices")]
    IndexOutOfRange { vertex: usize, n: usize },
    #[error("edges must be nonempty")]
    EmptyEdge,
    #[error("hypergraph has no edges")]
    EmptyHypergraph,
    #[error("universe sizes differ ({0} vs {1})")]
    UniverseMismatch(usize, usize),
    #[error("supports overlap on {0}")]
    UniverseOverlap(EdgeSet),
    #[error("hypergraph is not uniform")]
    NotUniform,
    #[error("{0} vertices exceed the {MAX_VERTICES}-vertex limit")]
    TooManyVertices(usize),
    #[error("not a simple graph: {0}")]
    NotAGraph(String),
}
