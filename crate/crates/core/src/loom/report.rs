use std::fmt;

use serde::{Deserialize, Serialize};

use crate::covers::{edge_lists, IntCertificate};
use crate::hypercore::EdgeSet;

/// What a loom's verification rests on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Basis {
    /// Every axiom was checked directly on this pair.
    Full,
    /// Inherited from verified factors through the composition rule.
    Composition,
    /// Inherited from a blow-up whose sufficient conditions were checked.
    Blowup,
    /// A factor split off a verified loom along a disconnected component.
    Decomposition,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Axiom {
    SameUniverse,
    Nonempty,
    UniformA,
    UniformB,
    Orthogonal,
    TauA,
    TauB,
    ACoversB,
    BCoversA,
}

impl Axiom {
    pub fn describe(self) -> &'static str {
        match self {
            Axiom::SameUniverse => "A and B share a vertex universe",
            Axiom::Nonempty => "A and B are nonempty",
            Axiom::UniformA => "A is uniform",
            Axiom::UniformB => "B is uniform",
            Axiom::Orthogonal => "every a in A meets every b in B in exactly one vertex",
            Axiom::TauA => "tau(A) = s",
            Axiom::TauB => "tau(B) = r",
            Axiom::ACoversB => "A = C_r(B)",
            Axiom::BCoversA => "B = C_s(A)",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    /// The search budget ran out before the check was decided.
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomCheck {
    pub axiom: Axiom,
    pub status: Status,
    pub detail: String,
    /// Counter-witness sets on failure (a violating edge pair, a small cover, ...).
    #[serde(with = "edge_lists", default, skip_serializing_if = "Vec::is_empty")]
    pub witness: Vec<EdgeSet>,
    /// Cover-equality failures: sets required by the axiom but absent.
    #[serde(with = "edge_lists", default, skip_serializing_if = "Vec::is_empty")]
    pub missing: Vec<EdgeSet>,
    /// Cover-equality failures: sets present but not allowed.
    #[serde(with = "edge_lists", default, skip_serializing_if = "Vec::is_empty")]
    pub unexpected: Vec<EdgeSet>,
}

impl AxiomCheck {
    pub(crate) fn new(axiom: Axiom, status: Status, detail: impl Into<String>) -> Self {
        AxiomCheck {
            axiom,
            status,
            detail: detail.into(),
            witness: Vec::new(),
            missing: Vec::new(),
            unexpected: Vec::new(),
        }
    }

    pub(crate) fn with_witness(mut self, witness: Vec<EdgeSet>) -> Self {
        self.witness = witness;
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub basis: Basis,
    pub checks: Vec<AxiomCheck>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tau_a: Option<IntCertificate>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tau_b: Option<IntCertificate>,
}

impl VerificationReport {
    pub(crate) fn new(basis: Basis) -> Self {
        VerificationReport { basis, checks: Vec::new(), tau_a: None, tau_b: None }
    }

    pub fn passed(&self) -> bool {
        !self.checks.is_empty() && self.checks.iter().all(AxiomCheck::passed)
    }

    /// True when some check could not be decided within the budget.
    pub fn undecided(&self) -> bool {
        self.checks.iter().any(|c| c.status == Status::Unknown)
    }

    pub fn check(&self, axiom: Axiom) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| c.axiom == axiom)
    }

    pub fn failures(&self) -> impl Iterator<Item = &AxiomCheck> {
        self.checks.iter().filter(|c| c.status != Status::Pass)
    }

    /// The same report for the swapped pair `(B, A)`.
    pub(crate) fn swapped(&self) -> Self {
        let flip = |a: Axiom| match a {
            Axiom::UniformA => Axiom::UniformB,
            Axiom::UniformB => Axiom::UniformA,
            Axiom::TauA => Axiom::TauB,
            Axiom::TauB => Axiom::TauA,
            Axiom::ACoversB => Axiom::BCoversA,
            Axiom::BCoversA => Axiom::ACoversB,
            other => other,
        };
        let mut checks: Vec<AxiomCheck> = self
            .checks
            .iter()
            .map(|c| AxiomCheck { axiom: flip(c.axiom), ..c.clone() })
            .collect();
        checks.sort_by_key(|c| c.axiom as u8);
        VerificationReport {
            basis: self.basis,
            checks,
            tau_a: self.tau_b.clone(),
            tau_b: self.tau_a.clone(),
        }
    }
}

/// Human-readable report with 1-based vertex labels.
impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let mark = match c.status {
                Status::Pass => "pass",
                Status::Fail => "FAIL",
                Status::Unknown => "????",
            };
            writeln!(f, "[{mark}] {}: {}", c.axiom.describe(), c.detail)?;
            let show = |f: &mut fmt::Formatter<'_>, label: &str, sets: &[EdgeSet]| {
                if sets.is_empty() {
                    return Ok(());
                }
                let parts: Vec<String> = sets.iter().map(|e| e.to_string()).collect();
                writeln!(f, "       {label}: {}", parts.join(" "))
            };
            show(f, "witness", &c.witness)?;
            show(f, "missing", &c.missing)?;
            show(f, "unexpected", &c.unexpected)?;
        }
        Ok(())
    }
}
