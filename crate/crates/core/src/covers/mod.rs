//! Exact integral solvers: covering and matching numbers, k-covers,
//! orthogonal complements, pinnability and rainbow matchings.

mod enumerate;
mod search;

pub use enumerate::{covers_of_size, is_pinnable, minimal_covers, perp, perp_limited};
pub use search::{has_perfect_matching, nu, rainbow_matching_number, tau};
pub(crate) use enumerate::for_each_subset;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::hypercore::{EdgeSet, HyperError, Hypergraph};

/// Default search-node budget for the exact solvers.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Quantity {
    #[serde(rename = "tau")]
    Tau,
    #[serde(rename = "nu")]
    Nu,
    #[serde(rename = "nuR")]
    NuR,
}

/// An exact integral optimum with a feasible witness of that size.
///
/// For `tau` the witness is a single cover; for `nu` and `nuR` it is the
/// list of matching edges. Optimality is attested by the exhaustive search
/// (`nodes`, `depth`), not by the witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntCertificate {
    pub quantity: Quantity,
    pub value: usize,
    #[serde(with = "edge_lists")]
    pub witness: Vec<EdgeSet>,
    /// Family member supplying each witness edge (`nuR` only).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub members: Option<Vec<usize>>,
    pub nodes: u64,
    #[serde(skip)]
    pub depth: usize,
}

impl IntCertificate {
    /// Re-check the witness against `h` by direct feasibility tests.
    pub fn validate(&self, h: &Hypergraph) -> bool {
        match self.quantity {
            Quantity::Tau => {
                self.witness.len() == 1
                    && self.witness[0].len() == self.value
                    && h.is_cover(self.witness[0])
            }
            Quantity::Nu => {
                self.witness.len() == self.value
                    && self.witness.iter().all(|&e| h.contains_edge(e))
                    && pairwise_disjoint(&self.witness)
            }
            Quantity::NuR => false,
        }
    }

    /// Re-check a rainbow-matching witness against its family.
    pub fn validate_rainbow(&self, family: &[Hypergraph]) -> bool {
        let Some(members) = &self.members else {
            return false;
        };
        let mut seen = members.clone();
        seen.sort_unstable();
        seen.dedup();
        self.quantity == Quantity::NuR
            && self.witness.len() == self.value
            && members.len() == self.value
            && seen.len() == members.len()
            && members
                .iter()
                .zip(&self.witness)
                .all(|(&i, &e)| family.get(i).is_some_and(|h| h.contains_edge(e)))
            && pairwise_disjoint(&self.witness)
    }
}

pub(crate) fn pairwise_disjoint(edges: &[EdgeSet]) -> bool {
    let mut used = EdgeSet::EMPTY;
    for &e in edges {
        if used.meets(e) {
            return false;
        }
        used = used.union(e);
    }
    true
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CoverError {
    /// The search ran out of nodes. The true value lies in `lower..=upper`
    /// and `best` is the best feasible witness found.
    #[error("search budget of {budget} nodes exceeded for {quantity:?}; value lies in [{lower}, {upper}]")]
    BudgetExceeded {
        quantity: Quantity,
        budget: u64,
        lower: usize,
        upper: usize,
        best: Vec<EdgeSet>,
    },
    #[error(transparent)]
    Hyper(#[from] HyperError),
}

pub(crate) mod edge_lists {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use crate::hypercore::EdgeSet;

    pub fn serialize<S: Serializer>(edges: &[EdgeSet], s: S) -> Result<S::Ok, S::Error> {
        let raw: Vec<Vec<usize>> = edges.iter().map(|e| e.to_vec()).collect();
        raw.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<EdgeSet>, D::Error> {
        let raw: Vec<Vec<usize>> = Vec::deserialize(d)?;
        if raw.iter().flatten().any(|&v| v >= crate::hypercore::MAX_VERTICES) {
            return Err(serde::de::Error::custom("vertex index out of range"));
        }
        Ok(raw.into_iter().map(|e| e.into_iter().collect()).collect())
    }
}

pub(crate) mod edge_set {
    use serde::{Serialize, Serializer};

    use crate::hypercore::EdgeSet;

    pub fn serialize<S: Serializer>(e: &EdgeSet, s: S) -> Result<S::Ok, S::Error> {
        e.to_vec().serialize(s)
    }
}

pub(crate) mod opt_edge_set {
    use serde::{Serialize, Serializer};

    use crate::hypercore::EdgeSet;

    pub fn serialize<S: Serializer>(e: &Option<EdgeSet>, s: S) -> Result<S::Ok, S::Error> {
        e.map(|e| e.to_vec()).serialize(s)
    }
}
