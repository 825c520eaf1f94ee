//! Loom constructions: the canonical small looms, compositions and their
//! inverse, blow-ups, and looms built from perfect matchings and stars of
//! regular graphs.

mod blowup;
mod canonical;
mod compose;
mod graphs;

pub use blowup::{
    blow_up, blow_up_loom, blowup_matching_audit, BlowupMatchingAudit, BlowupOutcome, BlowupReport,
    BlowupSpec, ConditionViolation, SideAudit,
};
pub use canonical::{
    fano_plane, grid_loom, loom_u, loom_v, matching_transversal_loom, r2_loom, vane_33,
};
pub use compose::{
    compose1, compose1_with, compose2, compose2_with, decompose, decompose_with, Decomposition,
    Provenance,
};
pub use graphs::{
    complete_bipartite, complete_graph, graph_loom, graph_loom_with, graph_pair, petersen,
    pm_hypergraph, star_hypergraph, triangle_blowup, PM_MAX_VERTICES,
};

use thiserror::Error;

use crate::covers::CoverError;
use crate::hypercore::HyperError;
use crate::loom::{ClosureFailure, VerificationReport, VerifyOptions};

/// How a construction establishes that its output is a loom.
#[derive(Clone, Debug, Default)]
pub enum Verify {
    /// Run the full axiom check on the result.
    #[default]
    Full,
    /// Full check with a node budget per covering search.
    Budgeted(VerifyOptions),
    /// Accept the construction theorem's conclusion: orthogonality and
    /// uniformity are still checked directly, the cover axioms are inherited.
    Inherit,
}

impl Verify {
    pub(crate) fn options(&self) -> VerifyOptions {
        match self {
            Verify::Budgeted(o) => o.clone(),
            _ => VerifyOptions::default(),
        }
    }
}

#[derive(Debug, Error)]
pub enum WeaveError {
    #[error("uniformity mismatch: {0}")]
    UniformityMismatch(String),
    #[error("graph is not regular")]
    NotRegular,
    #[error("graph has odd order {0}")]
    OddOrder(usize),
    #[error("{0} vertices exceed the construction limit of {1}")]
    TooLarge(usize, usize),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("result failed verification:\n{0}")]
    Verification(Box<VerificationReport>),
    #[error("loom closure failed:\n{}", .0.report)]
    Closure(Box<ClosureFailure>),
    #[error("blow-up condition failed: {0}")]
    ConditionFailed(Box<BlowupReport>),
    #[error("hypothesis unmet: {0}")]
    HypothesisUnmet(String),
    #[error(transparent)]
    Hyper(#[from] HyperError),
    #[error(transparent)]
    Cover(#[from] CoverError),
}

impl std::fmt::Display for BlowupReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if !self.p_orthogonal {
            return write!(f, "the outer pair is not orthogonal");
        }
        match self.violations.first() {
            Some(v) => write!(
                f,
                "minimal cover {} of {} is missing from the other side and has part weight {}, needs more than {}",
                v.cover, v.side, v.weight, v.bound
            ),
            None if !self.uniform => write!(f, "the blown-up hypergraphs are not uniform"),
            None => write!(f, "all conditions hold"),
        }
    }
}
