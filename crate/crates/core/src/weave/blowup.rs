use std::collections::BTreeMap;

use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::covers::{edge_set, minimal_covers, nu};
use crate::fraclp::{has_perfect_fractional_matching, is_perfect_fractional_matching, nu_star};
use crate::hypercore::{is_orthogonal, EdgeSet, Hypergraph, MAX_VERTICES};
use crate::loom::{verify_loom, Basis, Loom, LoomRecord, Outcome};
use crate::Rational;

use super::compose::finish;
use super::{Verify, WeaveError};

/// `ℙ[𝕃₁, …, 𝕃ₙ]`: a pair `(A, B)` on `0..n` and one loom per vertex.
///
/// Part `i` is placed on the vertices `placement[i]` of the blown-up
/// universe (local vertex `k` goes to `placement[i][k]`). Without an
/// explicit placement the parts are laid out consecutively in index order.
#[derive(Clone, Debug)]
pub struct BlowupSpec {
    a: Hypergraph,
    b: Hypergraph,
    parts: Vec<Loom>,
    placement: Vec<Vec<usize>>,
    explicit: bool,
}

#[derive(Serialize, Deserialize)]
struct PairJson {
    #[serde(rename = "A")]
    a: Hypergraph,
    #[serde(rename = "B")]
    b: Hypergraph,
}

#[derive(Serialize)]
struct PartJson<'a> {
    #[serde(rename = "A")]
    a: &'a Hypergraph,
    #[serde(rename = "B")]
    b: &'a Hypergraph,
    r: usize,
    s: usize,
}

#[derive(Serialize)]
struct SpecOut<'a> {
    #[serde(rename = "P")]
    p: PairJson,
    parts: Vec<PartJson<'a>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    placement: Option<&'a [Vec<usize>]>,
}

#[derive(Deserialize)]
struct SpecIn {
    #[serde(rename = "P")]
    p: PairJson,
    parts: Vec<LoomRecord>,
    #[serde(default)]
    placement: Option<Vec<Vec<usize>>>,
}

impl Serialize for BlowupSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        SpecOut {
            p: PairJson { a: self.a.clone(), b: self.b.clone() },
            parts: self
                .parts
                .iter()
                .map(|l| PartJson { a: l.a(), b: l.b(), r: l.r(), s: l.s() })
                .collect(),
            placement: self.explicit.then_some(&self.placement[..]),
        }
        .serialize(s)
    }
}

impl BlowupSpec {
    pub fn new(
        a: Hypergraph,
        b: Hypergraph,
        parts: Vec<Loom>,
        placement: Option<Vec<Vec<usize>>>,
    ) -> Result<BlowupSpec, WeaveError> {
        let n = a.n();
        if b.n() != n || parts.len() != n {
            return Err(WeaveError::InvalidParameter(format!(
                "P has universes {} and {} but {} parts are given",
                n,
                b.n(),
                parts.len()
            )));
        }
        let full = EdgeSet::full(n);
        if a.support() != full || b.support() != full {
            return Err(WeaveError::InvalidParameter(
                "both hypergraphs of P must cover every vertex".into(),
            ));
        }
        let total: usize = parts.iter().map(Loom::n).sum();
        if total > MAX_VERTICES {
            return Err(WeaveError::TooLarge(total, MAX_VERTICES));
        }
        let explicit = placement.is_some();
        let placement = match placement {
            Some(p) => {
                let mut seen = vec![false; total];
                let fits = p.len() == n
                    && p.iter().zip(&parts).all(|(m, l)| m.len() == l.n())
                    && p.iter().flatten().all(|&v| v < total && !std::mem::replace(&mut seen[v], true));
                if !fits {
                    return Err(WeaveError::InvalidParameter(format!(
                        "placement must map the parts bijectively onto 0..{total}"
                    )));
                }
                p
            }
            None => {
                let mut next = 0;
                parts
                    .iter()
                    .map(|l| {
                        next += l.n();
                        (next - l.n()..next).collect()
                    })
                    .collect()
            }
        };
        Ok(BlowupSpec { a, b, parts, placement, explicit })
    }

    /// Parse the `{"P": {"A", "B"}, "parts": [...]}` format, verifying every part.
    pub fn from_json(text: &str) -> Result<BlowupSpec, WeaveError> {
        let raw: SpecIn = serde_json::from_str(text)
            .map_err(|e| WeaveError::InvalidParameter(format!("blow-up spec: {e}")))?;
        let parts = raw
            .parts
            .iter()
            .map(|p| verify_loom(&p.a, &p.b).map_err(|r| WeaveError::Verification(Box::new(r))))
            .collect::<Result<Vec<_>, _>>()?;
        BlowupSpec::new(raw.p.a, raw.p.b, parts, raw.placement)
    }

    pub fn a(&self) -> &Hypergraph {
        &self.a
    }

    pub fn b(&self) -> &Hypergraph {
        &self.b
    }

    pub fn parts(&self) -> &[Loom] {
        &self.parts
    }

    pub fn placement(&self) -> &[Vec<usize>] {
        &self.placement
    }

    pub fn total_vertices(&self) -> usize {
        self.parts.iter().map(Loom::n).sum()
    }

    /// Part components moved into the blown-up universe.
    fn placed(&self) -> Result<Vec<(Hypergraph, Hypergraph)>, WeaveError> {
        let n = self.total_vertices();
        self.parts
            .iter()
            .zip(&self.placement)
            .map(|(l, m)| Ok((l.a().relabel(m, n)?, l.b().relabel(m, n)?)))
            .collect()
    }

    /// The swapped spec `(B, A)[𝕃₁ᵀ, …]`, whose blow-up is `(D, C)`.
    pub fn swap(&self) -> BlowupSpec {
        BlowupSpec {
            a: self.b.clone(),
            b: self.a.clone(),
            parts: self.parts.iter().map(Loom::swap).collect(),
            placement: self.placement.clone(),
            explicit: self.explicit,
        }
    }
}

/// A minimal cover of one side of `ℙ`, absent from the other side, whose
/// part weight does not exceed the opposite uniformity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConditionViolation {
    /// `"A"` when the cover is of `A` and weighted by the `s_j`; `"B"` otherwise.
    pub side: &'static str,
    #[serde(with = "edge_set")]
    pub cover: EdgeSet,
    pub weight: usize,
    pub bound: usize,
}

/// Exact evaluation of the blow-up sufficient conditions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlowupReport {
    pub p_orthogonal: bool,
    /// Checked on the output directly, whatever the other conditions say.
    pub cd_orthogonal: bool,
    pub uniform: bool,
    pub c: Option<usize>,
    pub d: Option<usize>,
    pub minimal_covers_a: usize,
    pub minimal_covers_b: usize,
    pub violations: Vec<ConditionViolation>,
}

impl BlowupReport {
    pub fn holds(&self) -> bool {
        self.p_orthogonal && self.uniform && self.violations.is_empty()
    }
}

#[derive(Clone, Debug)]
pub struct BlowupOutcome {
    pub c: Hypergraph,
    pub d: Hypergraph,
    pub report: BlowupReport,
}

fn blown(side: &Hypergraph, placed: &[Hypergraph], n: usize) -> Result<Hypergraph, WeaveError> {
    let per_edge: Vec<Vec<EdgeSet>> = side
        .edges()
        .par_iter()
        .map(|e| {
            let mut acc = vec![EdgeSet::EMPTY];
            for i in e.iter() {
                acc = acc
                    .iter()
                    .flat_map(|&x| placed[i].edges().iter().map(move |&y| x.union(y)))
                    .collect();
            }
            acc
        })
        .collect();
    Ok(Hypergraph::from_sets(n, per_edge.into_iter().flatten())?)
}

fn violations(
    side: &'static str,
    covers: &[EdgeSet],
    other: &Hypergraph,
    weight: impl Fn(usize) -> usize,
    bound: usize,
) -> Vec<ConditionViolation> {
    covers
        .iter()
        .filter(|&&f| !other.contains_edge(f))
        .filter_map(|&f| {
            let w: usize = f.iter().map(&weight).sum();
            (w <= bound).then_some(ConditionViolation { side, cover: f, weight: w, bound })
        })
        .collect()
}

/// Build `(C, D)` and evaluate the sufficient conditions exactly, using
/// all inclusion-minimal covers of both sides of `ℙ`.
pub fn blow_up(spec: &BlowupSpec) -> Result<BlowupOutcome, WeaveError> {
    let n = spec.total_vertices();
    let (pa, pb): (Vec<_>, Vec<_>) = spec.placed()?.into_iter().unzip();
    let (c, d) = rayon::join(|| blown(&spec.a, &pa, n), || blown(&spec.b, &pb, n));
    let (c, d) = (c?, d?);
    let cu = c.uniformity()?;
    let du = d.uniformity()?;
    let mins_a = minimal_covers(&spec.a)?;
    let mins_b = minimal_covers(&spec.b)?;
    let mut report = BlowupReport {
        p_orthogonal: is_orthogonal(&spec.a, &spec.b)?,
        cd_orthogonal: is_orthogonal(&c, &d)?,
        uniform: cu.is_some() && du.is_some(),
        c: cu,
        d: du,
        minimal_covers_a: mins_a.len(),
        minimal_covers_b: mins_b.len(),
        violations: Vec::new(),
    };
    if let (Some(cu), Some(du)) = (cu, du) {
        report.violations = violations("A", &mins_a, &spec.b, |j| spec.parts[j].s(), du);
        report
            .violations
            .extend(violations("B", &mins_b, &spec.a, |i| spec.parts[i].r(), cu));
    }
    Ok(BlowupOutcome { c, d, report })
}

/// The blow-up as a loom, provided the sufficient conditions hold.
pub fn blow_up_loom(spec: &BlowupSpec, mode: &Verify) -> Result<Loom, WeaveError> {
    let out = blow_up(spec)?;
    if !out.report.holds() {
        return Err(WeaveError::ConditionFailed(Box::new(out.report)));
    }
    finish(out.c, out.d, mode, Basis::Blowup)
}

/// One side of the matching-transfer audit: `ℙ`'s first side against the
/// first components of the parts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SideAudit {
    /// `q`, the uniformity of `ℙ`'s other side.
    pub q: usize,
    pub outer_nu: usize,
    /// `(ν(A_i), s_i)` per part.
    pub parts_nu: Vec<(usize, usize)>,
    /// Target `d` and the matching number of the blown-up side.
    pub d: usize,
    pub result_nu: Option<usize>,
    /// Perfect matching transfer in both directions.
    pub matching_transfer: Outcome,
    #[serde(with = "crate::fraclp::ratio_str")]
    pub outer_nu_star: Rational,
    #[serde(with = "ratio_vec")]
    pub parts_nu_star: Vec<Rational>,
    #[serde(with = "crate::fraclp::ratio_str")]
    pub result_nu_star: Rational,
    /// The product weighting of the fractional transfer, when its hypotheses hold.
    #[serde(skip)]
    pub weighting: Option<Vec<(EdgeSet, Rational)>>,
    pub fractional_transfer: Outcome,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlowupMatchingAudit {
    /// `None` when the equal-`s` hypothesis fails on some edge of `A`.
    pub a_side: Option<SideAudit>,
    pub b_side: Option<SideAudit>,
    pub skipped: Vec<String>,
}

mod ratio_vec {
    use serde::Serializer;

    use crate::Rational;

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|r| r.to_string()))
    }
}

fn equal_s(spec: &BlowupSpec) -> Result<(), String> {
    for &e in spec.a.edges() {
        let mut s = e.iter().map(|i| spec.parts[i].s());
        let first = s.next();
        if s.any(|x| Some(x) != first) {
            return Err(format!("second uniformities differ on edge {e}"));
        }
    }
    Ok(())
}

/// Check the perfect-matching and perfect-fractional-matching transfers
/// on both sides of a blow-up of a loom.
pub fn blowup_matching_audit(spec: &BlowupSpec, result: &Loom) -> Result<BlowupMatchingAudit, WeaveError> {
    let outer = verify_loom(&spec.a, &spec.b)
        .map_err(|_| WeaveError::HypothesisUnmet("the outer pair is not a loom".into()))?;
    let out = blow_up(spec)?;
    if &out.c != result.a() || &out.d != result.b() {
        return Err(WeaveError::InvalidParameter("the loom is not this spec's blow-up".into()));
    }
    let swapped = spec.swap();
    let mut audit = BlowupMatchingAudit { a_side: None, b_side: None, skipped: Vec::new() };
    match equal_s(spec) {
        Ok(()) => audit.a_side = Some(side_audit(spec, outer.s(), result.a(), result.s())?),
        Err(e) => audit.skipped.push(format!("A side: {e}")),
    }
    match equal_s(&swapped) {
        Ok(()) => audit.b_side = Some(side_audit(&swapped, outer.r(), result.b(), result.r())?),
        Err(e) => audit.skipped.push(format!("B side: {e}")),
    }
    if audit.a_side.is_none() && audit.b_side.is_none() {
        return Err(WeaveError::HypothesisUnmet(audit.skipped.join("; ")));
    }
    Ok(audit)
}

fn side_audit(spec: &BlowupSpec, q: usize, c: &Hypergraph, d: usize) -> Result<SideAudit, WeaveError> {
    let outer_nu = nu(&spec.a, None)?.value;
    let parts_nu = spec
        .parts
        .iter()
        .map(|l| Ok((nu(l.a(), None)?.value, l.s())))
        .collect::<Result<Vec<_>, WeaveError>>()?;
    let result_nu = match nu(c, None) {
        Ok(cert) => Some(cert.value),
        Err(crate::covers::CoverError::BudgetExceeded { .. }) => None,
        Err(e) => return Err(e.into()),
    };
    let all_parts = parts_nu.iter().all(|&(v, s)| v == s);
    let matching_transfer = match result_nu {
        _ if outer_nu != q => Outcome::OutOfDomain,
        None => Outcome::Undetermined,
        Some(v) if (v == d) == all_parts => Outcome::Holds,
        Some(_) => Outcome::Fails,
    };

    let frac = |h: &Hypergraph| nu_star(h).map(|cert| cert.value);
    let lp = |e| WeaveError::InvalidParameter(format!("fractional matching: {e}"));
    let outer_nu_star = frac(&spec.a).map_err(lp)?;
    let parts_nu_star = spec.parts.iter().map(|l| frac(l.a())).collect::<Result<Vec<_>, _>>().map_err(lp)?;
    let result_nu_star = frac(c).map_err(lp)?;
    let q_r = Rational::from_integer(q.into());
    let d_r = Rational::from_integer(d.into());
    let fractional_in_domain = outer_nu_star == q_r
        && parts_nu_star
            .iter()
            .zip(&spec.parts)
            .all(|(v, l)| *v == Rational::from_integer(l.s().into()));
    let mut detail = format!(
        "nu(A)={outer_nu} (q={q}), nu(C)={}, nu*(C)={result_nu_star} (d={d})",
        result_nu.map_or("?".into(), |v| v.to_string())
    );
    let (weighting, fractional_transfer) = if fractional_in_domain {
        let g = product_weighting(spec, c.n())?;
        let ok = is_perfect_fractional_matching(c, &g) && result_nu_star == d_r;
        if !ok {
            detail.push_str("; product weighting is not a perfect fractional matching");
        }
        (Some(g), if ok { Outcome::Holds } else { Outcome::Fails })
    } else {
        (None, Outcome::OutOfDomain)
    };
    Ok(SideAudit {
        q,
        outer_nu,
        parts_nu,
        d,
        result_nu,
        matching_transfer,
        outer_nu_star,
        parts_nu_star,
        result_nu_star,
        weighting,
        fractional_transfer,
        detail,
    })
}

/// `g(e) = f(a) · ∏ w(e_ℓ) / s(a)^(p-1)` for `e = ⋃ e_ℓ` built over `a ∈ A`.
fn product_weighting(spec: &BlowupSpec, n: usize) -> Result<Vec<(EdgeSet, Rational)>, WeaveError> {
    let lp = |e| WeaveError::InvalidParameter(format!("fractional matching: {e}"));
    let weights = |h: &Hypergraph| -> Result<BTreeMap<EdgeSet, Rational>, WeaveError> {
        let w = has_perfect_fractional_matching(h)
            .map_err(lp)?
            .ok_or_else(|| WeaveError::HypothesisUnmet("no perfect fractional matching".into()))?;
        Ok(w.into_iter().collect())
    };
    let f = weights(&spec.a)?;
    // part weights are found on the part's own universe, then moved
    let w: Vec<BTreeMap<EdgeSet, Rational>> = spec
        .parts
        .iter()
        .zip(&spec.placement)
        .map(|(l, m)| Ok(weights(l.a())?.into_iter().map(|(e, x)| (e.map(m), x)).collect()))
        .collect::<Result<_, WeaveError>>()?;
    let w = &w;
    let mut g: BTreeMap<EdgeSet, Rational> = BTreeMap::new();
    for &a in spec.a.edges() {
        let fa = f.get(&a).cloned().unwrap_or_else(Rational::zero);
        if fa.is_zero() {
            continue;
        }
        let p = a.len();
        let s = Rational::from_integer(spec.parts[a.first().unwrap()].s().into());
        let scale = fa / num_traits::pow(s, p - 1);
        let mut acc = vec![(EdgeSet::EMPTY, scale)];
        for i in a.iter() {
            acc = acc
                .iter()
                .flat_map(|(x, wx)| {
                    w[i].iter().map(move |(y, wy)| (x.union(*y), wx * wy))
                })
                .collect();
        }
        for (e, v) in acc {
            if !v.is_zero() {
                *g.entry(e).or_insert_with(Rational::zero) += v;
            }
        }
    }
    debug_assert!(g.keys().all(|e| e.iter().all(|v| v < n)));
    Ok(g.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::super::{compose1, grid_loom, loom_u, loom_v, matching_transversal_loom, vane_33};
    use super::*;

    fn lit(n: usize, words: &[&[usize]]) -> Hypergraph {
        Hypergraph::new(n, words.iter().map(|w| w.to_vec())).unwrap()
    }

    /// The five-part spec that rebuilds the vane loom on the grid numbering.
    pub(crate) fn vane_spec() -> BlowupSpec {
        let a = lit(5, &[&[0, 3], &[1, 4], &[0, 2, 4]]);
        let b = lit(5, &[&[0, 1], &[3, 4], &[1, 2, 3]]);
        let v2 = loom_v(2).unwrap();
        let parts = vec![v2.swap(), v2.clone(), loom_u(), v2.clone(), v2.swap()];
        // grid labels 1..9 shifted to 0-based: {1,2}, {3,6}, {5}, {4,7}, {8,9}
        let placement = vec![vec![0, 1], vec![2, 5], vec![4], vec![3, 6], vec![7, 8]];
        BlowupSpec::new(a, b, parts, Some(placement)).unwrap()
    }

    #[test]
    fn vane_is_a_blow_up() {
        let spec = vane_spec();
        let out = blow_up(&spec).unwrap();
        assert!(out.report.holds(), "{}", out.report);
        let vane = vane_33();
        assert_eq!(&out.c, vane.a());
        assert_eq!(&out.d, vane.b());
        let l = blow_up_loom(&spec, &Verify::Inherit).unwrap();
        assert_eq!((l.r(), l.s()), (3, 3));
        let json = serde_json::to_string(&spec).unwrap();
        let back = BlowupSpec::from_json(&json).unwrap();
        assert_eq!(blow_up(&back).unwrap().c, out.c);
    }

    #[test]
    fn v2_blow_up_is_composition() {
        let v2 = loom_v(2).unwrap();
        let x = grid_loom(2).unwrap();
        let y = matching_transversal_loom(1, 2).unwrap();
        let spec = BlowupSpec::new(v2.a().clone(), v2.b().clone(), vec![x.clone(), y.clone()], None).unwrap();
        let l = blow_up_loom(&spec, &Verify::Full).unwrap();
        let c = compose1(&x, &y).unwrap();
        assert_eq!((l.a(), l.b()), (c.a(), c.b()));
    }

    #[test]
    fn violated_condition_names_the_cover() {
        // orthogonal, but {0,3} is a minimal 2-cover of A outside B
        let units = vec![loom_u(); 4];
        let spec = BlowupSpec::new(lit(4, &[&[0, 1], &[2, 3]]), lit(4, &[&[0, 2], &[1, 3]]), units, None).unwrap();
        let r = blow_up(&spec).unwrap().report;
        assert!(r.p_orthogonal && r.cd_orthogonal && r.uniform);
        let found: Vec<_> = r.violations.iter().map(|v| (v.side, v.cover.to_vec(), v.weight, v.bound)).collect();
        assert_eq!(found, vec![("A", vec![1, 2], 2, 2), ("A", vec![0, 3], 2, 2), ("B", vec![1, 2], 2, 2), ("B", vec![0, 3], 2, 2)]);
        assert!(matches!(blow_up_loom(&spec, &Verify::Full), Err(WeaveError::ConditionFailed(_))));

        let spec = BlowupSpec::new(lit(2, &[&[0, 1]]), lit(2, &[&[0, 1]]), vec![loom_u(), loom_u()], None).unwrap();
        let r = blow_up(&spec).unwrap().report;
        assert!(!r.p_orthogonal && !r.cd_orthogonal && !r.holds());
    }

    #[test]
    fn matching_audit_on_vane_blow_up() {
        let vane = vane_33();
        let part = loom_v(2).unwrap().swap();
        let spec = BlowupSpec::new(vane.a().clone(), vane.b().clone(), vec![part; 9], None).unwrap();
        let l = blow_up_loom(&spec, &Verify::Full).unwrap();
        assert_eq!((l.r(), l.s(), l.n()), (3, 6, 18));
        let audit = blowup_matching_audit(&spec, &l).unwrap();
        let a = audit.a_side.unwrap();
        assert_eq!(a.matching_transfer, Outcome::Holds);
        assert_eq!(a.fractional_transfer, Outcome::Holds);
        assert_eq!(a.result_nu, Some(6));
    }
}
