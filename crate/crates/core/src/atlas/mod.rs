//! Exhaustive classification of small looms, the mutually cross-intersecting
//! family harness, and a seeded battery of fractional-cover properties.

mod battery;
mod classify;
mod families;
mod galois;

pub use battery::{
    battery_sample, check_statement, property_battery, random_cross_intersecting, BatteryReport, CheckTally, SampleRecord,
    Violation,
};
pub use classify::{classify_33_looms, enumerate_r2_looms, ClassifyOptions};
pub use families::{family_check, mols_family, ExtensionSample, ExtensionTrials, FamilyReport};

use std::time::Duration;

use serde::Serialize;
use thiserror::Error;

use crate::covers::CoverError;
use crate::fraclp::FracError;
use crate::hypercore::{HyperError, Hypergraph};
use crate::loom::{Loom, VerificationReport};
use crate::weave::WeaveError;

#[derive(Debug, Error)]
pub enum AtlasError {
    #[error("search budget exceeded after {nodes} closed sets")]
    BudgetExceeded { nodes: u64 },
    #[error("too large: {0}")]
    TooLarge(String),
    #[error("more than the allowed number of classes ({0} found)")]
    TooManyClasses(usize),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("members {} and {} are not cross-intersecting", .0 + 1, .1 + 1)]
    NotCrossIntersecting(usize, usize),
    #[error("member {} is not {1}-uniform", .0 + 1)]
    NotUniform(usize, usize),
    #[error("class representative failed verification:\n{0}")]
    Verification(Box<VerificationReport>),
    #[error("internal inconsistency: {0}")]
    Internal(String),
    #[error(transparent)]
    Weave(#[from] WeaveError),
    #[error(transparent)]
    Hyper(#[from] HyperError),
    #[error(transparent)]
    Cover(#[from] CoverError),
    #[error(transparent)]
    Frac(#[from] FracError),
}

/// One isomorphism class, represented by its canonically labeled loom.
#[derive(Clone, Debug)]
pub struct ClassEntry {
    /// SHA-256 of the canonical form's byte encoding.
    pub key: String,
    pub loom: Loom,
    pub decomposable: bool,
    /// Factors at the first level of the decomposition.
    pub top_factors: usize,
    /// Search hits that landed in this class.
    pub hits: u64,
    /// `(r,2)` block sizes, largest first.
    pub blocks: Option<Vec<usize>>,
}

#[derive(Serialize)]
struct ClassJson<'a> {
    key: &'a str,
    #[serde(rename = "A")]
    a: &'a Hypergraph,
    #[serde(rename = "B")]
    b: &'a Hypergraph,
    r: usize,
    s: usize,
    decomposable: bool,
    top_factors: usize,
    hits: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    blocks: Option<&'a [usize]>,
}

impl Serialize for ClassEntry {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        ClassJson {
            key: &self.key,
            a: self.loom.a(),
            b: self.loom.b(),
            r: self.loom.r(),
            s: self.loom.s(),
            decomposable: self.decomposable,
            top_factors: self.top_factors,
            hits: self.hits,
            blocks: self.blocks.as_deref(),
        }
        .serialize(s)
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct SearchStats {
    pub closed_sets: u64,
    /// Closed sets passing the cheap orthogonality filter.
    pub candidates: u64,
    pub looms: u64,
    /// Candidates that failed full verification.
    pub rejected: u64,
    #[serde(skip)]
    pub wall: Duration,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassificationResult {
    pub kind: String,
    pub r: usize,
    pub s: usize,
    pub indecomposable_count: usize,
    pub decomposable_count: usize,
    pub classes: Vec<ClassEntry>,
    pub stats: SearchStats,
    /// Structural properties a class representative was expected to have but lacks.
    pub property_failures: Vec<String>,
}
