pub mod atlas;
pub mod covers;
pub mod fraclp;
pub mod hypercore;
pub mod loom;
pub mod weave;

pub use hypercore::{EdgeSet, Graph, HyperError, Hypergraph};

/// Exact arbitrary-precision rational; every fractional quantity uses it.
pub type Rational = num_rational::BigRational;
