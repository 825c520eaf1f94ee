use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::covers::{covers_of_size, for_each_subset, nu, tau, IntCertificate};
use crate::fraclp::{nu_star, FracCertificate};
use crate::hypercore::{EdgeSet, Hypergraph};
use crate::Rational;

use super::AtlasError;

fn r_sets(n: usize, k: usize) -> Vec<EdgeSet> {
    let mut out = Vec::new();
    for_each_subset(EdgeSet::full(n), k, &mut |s| out.push(s));
    out.sort();
    out
}

fn pick_some(rng: &mut ChaCha8Rng, pool: &[EdgeSet], max: usize) -> Vec<EdgeSet> {
    let k = rng.gen_range(1..=max.min(pool.len()));
    rand::seq::index::sample(rng, pool.len(), k).into_iter().map(|i| pool[i]).collect()
}

/// `A` random and `r`-uniform; `B` drawn from the `s`-sets meeting every edge
/// of `A`, so no edge of `A` is disjoint from an edge of `B`.
fn cross_pair(rng: &mut ChaCha8Rng, r: usize, s: usize) -> Result<(Hypergraph, Hypergraph), AtlasError> {
    loop {
        let n = rng.gen_range(r.max(s) + 1..=2 * r.max(s) + 2).min(10);
        let a = pick_some(rng, &r_sets(n, r), 5);
        let forced: Vec<EdgeSet> = r_sets(n, s).into_iter().filter(|t| a.iter().all(|e| e.meets(*t))).collect();
        if forced.is_empty() {
            continue;
        }
        let b = pick_some(rng, &forced, 5);
        let support = a.iter().chain(&b).fold(EdgeSet::EMPTY, |u, &e| u.union(e));
        let a = Hypergraph::from_sets(n, a)?.compact(support)?.0;
        let b = Hypergraph::from_sets(n, b)?.compact(support)?.0;
        return Ok((a, b));
    }
}

/// A seeded random pair of cross-intersecting `r`-uniform hypergraphs.
pub fn random_cross_intersecting(r: usize, seed: u64) -> Result<(Hypergraph, Hypergraph), AtlasError> {
    cross_pair(&mut ChaCha8Rng::seed_from_u64(seed), r, r)
}

/// One battery sample with every certificate it produced.
#[derive(Clone, Debug, Serialize)]
pub struct SampleRecord {
    pub index: usize,
    pub r: usize,
    #[serde(rename = "A")]
    pub a: Hypergraph,
    #[serde(rename = "B")]
    pub b: Hypergraph,
    pub union_cover: FracCertificate,
    pub nu_star_a: FracCertificate,
    pub nu_star_b: FracCertificate,
    pub union_nu: IntCertificate,
    pub union_tau: IntCertificate,
    /// A second pair with `B'` of a different uniformity `s`.
    pub s: usize,
    pub mixed_a: Hypergraph,
    pub mixed_b: Hypergraph,
    pub mixed_cover: FracCertificate,
    /// Cover size used for the closure identities on `A`.
    pub closure_k: usize,
    pub closure_contains: bool,
    pub closure_stable: bool,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct CheckTally {
    pub name: &'static str,
    pub checked: usize,
    pub violations: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Violation {
    pub r: usize,
    pub sample: usize,
    pub check: &'static str,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct BatteryReport {
    pub seed: u64,
    pub count: usize,
    pub uniformities: Vec<usize>,
    pub tallies: Vec<CheckTally>,
    pub violations: Vec<Violation>,
    /// SHA-256 over every sample's JSON, in order.
    pub digest: String,
    #[serde(skip)]
    pub samples: Vec<SampleRecord>,
}

impl BatteryReport {
    pub fn total_violations(&self) -> usize {
        self.tallies.iter().map(|t| t.violations).sum()
    }
}

fn edge_set_of(h: &Hypergraph) -> BTreeSet<EdgeSet> {
    h.edges().iter().copied().collect()
}

fn union(a: &Hypergraph, b: &Hypergraph) -> Result<Hypergraph, AtlasError> {
    Ok(a.union(b)?)
}

/// Sample `index` of the uniformity-`r` stream for `seed`; independent of
/// how samples are scheduled.
pub fn battery_sample(r: usize, seed: u64, index: usize) -> Result<SampleRecord, AtlasError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((r as u64) << 32) | index as u64);
    let (a, b) = cross_pair(&mut rng, r, r)?;
    let ab = union(&a, &b)?;
    let s = if rng.gen_bool(0.5) { r + 1 } else { r - 1 }.max(1);
    let (mixed_a, mixed_b) = cross_pair(&mut rng, r, s)?;
    let k = rng.gen_range(1..=r + 1);
    let ck = covers_of_size(&a, k, false)?;
    let back = covers_of_size(&ck, r, false)?;
    let again = covers_of_size(&back, k, false)?;
    Ok(SampleRecord {
        index,
        r,
        union_cover: nu_star(&ab)?,
        nu_star_a: nu_star(&a)?,
        nu_star_b: nu_star(&b)?,
        union_nu: nu(&ab, None)?,
        union_tau: tau(&ab, None)?,
        mixed_cover: nu_star(&union(&mixed_a, &mixed_b)?)?,
        closure_contains: edge_set_of(&a).is_subset(&edge_set_of(&back)),
        closure_stable: edge_set_of(&again) == edge_set_of(&ck),
        closure_k: k,
        s,
        mixed_a,
        mixed_b,
        a,
        b,
    })
}

const CHECKS: [(&str, &str); 6] = [
    ("union_cover_at_most_r", "tau*(A u B) <= r for cross-intersecting r-uniform A, B"),
    ("mixed_cover_at_most_max", "tau*(A u B') <= max(r, s) for r-uniform A and s-uniform B'"),
    ("equality_forces_component", "tau*(A u B) = r implies max(nu*(A), nu*(B)) = r"),
    ("cover_closure_contains", "C_r(C_k(A)) contains A"),
    ("cover_closure_stable", "C_k(C_r(C_k(A))) = C_k(A)"),
    ("sandwich", "nu <= nu* = tau* <= tau on A u B"),
];

fn evaluate(s: &SampleRecord) -> [Option<Result<(), String>>; 6] {
    let r = Rational::from_integer(s.r.into());
    let v = &s.union_cover.value;
    let ok = |c: bool, d: String| Some(if c { Ok(()) } else { Err(d) });
    let max_rs = Rational::from_integer(s.r.max(s.s).into());
    let eq = (*v == r).then(|| {
        let m = s.nu_star_a.value.clone().max(s.nu_star_b.value.clone());
        if m == r { Ok(()) } else { Err(format!("tau* = r but max nu* = {m}")) }
    });
    let nu_i = Rational::from_integer(s.union_nu.value.into());
    let tau_i = Rational::from_integer(s.union_tau.value.into());
    [
        ok(*v <= r, format!("tau* = {v}")),
        ok(s.mixed_cover.value <= max_rs, format!("tau* = {}, s = {}", s.mixed_cover.value, s.s)),
        eq,
        ok(s.closure_contains, format!("k = {}", s.closure_k)),
        ok(s.closure_stable, format!("k = {}", s.closure_k)),
        ok(nu_i <= *v && *v <= tau_i, format!("nu = {}, tau* = {v}, tau = {}", s.union_nu.value, s.union_tau.value)),
    ]
}

/// `count` seeded samples per uniformity, every check tallied. The report
/// bytes depend only on `(count, seed, uniformities)`.
pub fn property_battery(count: usize, seed: u64, uniformities: &[usize]) -> Result<BatteryReport, AtlasError> {
    if uniformities.iter().any(|&r| r == 0 || r > 5) {
        return Err(AtlasError::Unsupported("battery uniformities must lie in 1..=5".into()));
    }
    let mut samples = Vec::with_capacity(count * uniformities.len());
    for &r in uniformities {
        let batch: Vec<SampleRecord> = (0..count)
            .into_par_iter()
            .map(|i| battery_sample(r, seed, i))
            .collect::<Result<_, _>>()?;
        samples.extend(batch);
    }
    let mut tallies: Vec<CheckTally> =
        CHECKS.iter().map(|(name, _)| CheckTally { name, ..Default::default() }).collect();
    let mut violations = Vec::new();
    let mut hasher = Sha256::new();
    for s in &samples {
        hasher.update(serde_json::to_vec(s).expect("sample serializes"));
        for (k, outcome) in evaluate(s).into_iter().enumerate() {
            let Some(outcome) = outcome else { continue };
            tallies[k].checked += 1;
            if let Err(detail) = outcome {
                tallies[k].violations += 1;
                violations.push(Violation { r: s.r, sample: s.index, check: CHECKS[k].0, detail });
            }
        }
    }
    Ok(BatteryReport {
        seed,
        count,
        uniformities: uniformities.to_vec(),
        tallies,
        violations,
        digest: hex::encode(hasher.finalize()),
        samples,
    })
}

/// Statement text for a tally name.
pub fn check_statement(name: &str) -> Option<&'static str> {
    CHECKS.iter().find(|(n, _)| *n == name).map(|(_, s)| *s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypercore::is_cross_intersecting;

    #[test]
    fn generator_is_cross_intersecting_and_seeded() {
        for seed in 0..20 {
            let (a, b) = random_cross_intersecting(3, seed).unwrap();
            assert!(is_cross_intersecting(&a, &b));
            assert_eq!(a.uniformity().unwrap(), Some(3));
            assert_eq!((a.clone(), b.clone()), random_cross_intersecting(3, seed).unwrap());
        }
    }

    #[test]
    fn small_battery_is_clean_and_deterministic() {
        let x = property_battery(20, 11, &[2, 3]).unwrap();
        assert_eq!(x.total_violations(), 0, "{:?}", x.violations);
        let y = property_battery(20, 11, &[2, 3]).unwrap();
        assert_eq!(serde_json::to_string(&x).unwrap(), serde_json::to_string(&y).unwrap());
        assert!(check_statement("sandwich").is_some());
    }
}
