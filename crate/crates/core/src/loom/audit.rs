use num_bigint::BigInt;
use serde::Serialize;

use crate::covers::{edge_lists, has_perfect_matching, nu, perp, tau, CoverError, IntCertificate};
use crate::fraclp::{has_perfect_fractional_matching, nu_star, FracCertificate};
use crate::hypercore::{EdgeSet, Hypergraph};
use crate::Rational;

use super::{Loom, VerifyOptions};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Holds,
    Fails,
    /// The statement's hypothesis does not apply to this loom.
    OutOfDomain,
    /// The search budget ran out before the statement was decided.
    Undetermined,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Finding {
    pub name: &'static str,
    pub statement: &'static str,
    pub outcome: Outcome,
    pub detail: String,
    #[serde(with = "edge_lists", skip_serializing_if = "Vec::is_empty")]
    pub witness: Vec<EdgeSet>,
}

impl Finding {
    fn new(name: &'static str, statement: &'static str, outcome: Outcome, detail: impl Into<String>) -> Self {
        Finding { name, statement, outcome, detail: detail.into(), witness: Vec::new() }
    }

    fn holds_if(name: &'static str, statement: &'static str, ok: bool, detail: impl Into<String>) -> Self {
        Self::new(name, statement, if ok { Outcome::Holds } else { Outcome::Fails }, detail)
    }

    fn with_witness(mut self, witness: Vec<EdgeSet>) -> Self {
        self.witness = witness;
        self
    }
}

fn rat(k: usize) -> Rational {
    Rational::from_integer(BigInt::from(k))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LemmaAudit {
    pub findings: Vec<Finding>,
    pub nu_star_a: FracCertificate,
    pub nu_star_b: FracCertificate,
}

impl LemmaAudit {
    /// No statement failed (undetermined and out-of-domain entries are allowed).
    pub fn no_failures(&self) -> bool {
        self.findings.iter().all(|f| f.outcome != Outcome::Fails)
    }

    pub fn finding(&self, name: &str) -> impl Iterator<Item = &Finding> {
        let name = name.to_owned();
        self.findings.iter().filter(move |f| f.name == name)
    }
}

/// Edge-index bitmaps of every vertex star.
fn star_bitmaps(h: &Hypergraph) -> Vec<Vec<u64>> {
    let words = h.len().div_ceil(64);
    let mut stars = vec![vec![0u64; words]; h.n()];
    for (i, e) in h.edges().iter().enumerate() {
        for v in e.iter() {
            stars[v][i / 64] |= 1 << (i % 64);
        }
    }
    stars
}

fn star_containment(side: &'static str, h: &Hypergraph, support: EdgeSet) -> Finding {
    let stars = star_bitmaps(h);
    for x in support.iter() {
        for y in support.iter() {
            if x == y {
                continue;
            }
            let subset = stars[x].iter().zip(&stars[y]).all(|(a, b)| a & !b == 0);
            if subset && stars[x] != stars[y] {
                return Finding::new(
                    "star_containment",
                    "a star contained in another star equals it",
                    Outcome::Fails,
                    format!("on {side}: star({}) is a proper subset of star({})", x + 1, y + 1),
                )
                .with_witness(vec![EdgeSet::singleton(x), EdgeSet::singleton(y)]);
            }
        }
    }
    Finding::new(
        "star_containment",
        "a star contained in another star equals it",
        Outcome::Holds,
        format!("on {side}: no proper star containment"),
    )
}

fn disjoint_partner(side: &'static str, h: &Hypergraph) -> Finding {
    const STATEMENT: &str = "for r = s > 1 every edge has a disjoint edge on its side";
    match h.edges().iter().find(|&&e| h.edges().iter().all(|&f| f.meets(e))) {
        None => Finding::new("disjoint_partner", STATEMENT, Outcome::Holds, format!("on {side}")),
        Some(&e) => Finding::new(
            "disjoint_partner",
            STATEMENT,
            Outcome::Fails,
            format!("on {side}: {e} meets every edge"),
        )
        .with_witness(vec![e]),
    }
}

/// Perfect matchings are exactly the matchings with `size` edges.
fn matching_size_law(side: &'static str, h: &Hypergraph, size: usize, budget: Option<u64>) -> Finding {
    const STATEMENT: &str = "a matching is perfect iff it has as many edges as the other uniformity";
    let support = h.support();
    let pm = {
        let (compact, back) = h.compact(support).expect("support fits");
        has_perfect_matching(&compact).map(|m| {
            m.into_iter().map(|e| e.map(&back)).collect::<Vec<_>>()
        })
    };
    let nu = match nu(h, budget) {
        Ok(c) => c,
        Err(_) => {
            return Finding::new(
                "matching_size_law",
                STATEMENT,
                Outcome::Undetermined,
                format!("on {side}: matching search exceeded its budget"),
            )
        }
    };
    let union = nu.witness.iter().fold(EdgeSet::EMPTY, |a, &e| a.union(e));
    let ok = nu.value <= size
        && (pm.is_some() == (nu.value == size))
        && (nu.value != size || union == support)
        && pm.as_ref().is_none_or(|m| m.len() == size);
    Finding::holds_if(
        "matching_size_law",
        STATEMENT,
        ok,
        format!(
            "on {side}: nu = {}, perfect matching {}",
            nu.value,
            if pm.is_some() { "exists" } else { "absent" }
        ),
    )
    .with_witness(pm.unwrap_or(nu.witness))
}

fn fractional_law(side: &'static str, h: &Hypergraph, size: usize, nu_star: &FracCertificate) -> Finding {
    const STATEMENT: &str = "a perfect fractional matching exists iff the fractional matching number equals the other uniformity";
    let (compact, _) = h.compact(h.support()).expect("support fits");
    let pfm = has_perfect_fractional_matching(&compact).expect("compacted hypergraph is grounded");
    let ok = pfm.is_some() == (nu_star.value == rat(size));
    Finding::holds_if(
        "fractional_matching_law",
        STATEMENT,
        ok,
        format!(
            "on {side}: nu* = {}, perfect fractional matching {}",
            nu_star.value,
            if pfm.is_some() { "exists" } else { "absent" }
        ),
    )
}

fn perp_law(
    side: &'static str,
    h: &Hypergraph,
    other: &Hypergraph,
    size: usize,
    nu_star: &FracCertificate,
) -> Finding {
    const STATEMENT: &str = "if the fractional cover number equals the other uniformity, the other component is the orthogonal complement";
    if nu_star.value != rat(size) {
        return Finding::new("complement_law", STATEMENT, Outcome::OutOfDomain, format!("on {side}: nu* = {}", nu_star.value));
    }
    let comp = perp(h, h.n());
    let extra: Vec<EdgeSet> = comp.iter().copied().filter(|&p| !other.contains_edge(p)).collect();
    let ok = extra.is_empty() && comp.len() == other.len();
    Finding::holds_if(
        "complement_law",
        STATEMENT,
        ok,
        format!("on {side}: complement has {} sets, other component {}", comp.len(), other.len()),
    )
    .with_witness(extra)
}

/// Structural statements every loom satisfies, each checked with witnesses.
pub fn audit_lemmas(l: &Loom) -> LemmaAudit {
    audit_lemmas_with(l, &VerifyOptions::default())
}

pub fn audit_lemmas_with(l: &Loom, opts: &VerifyOptions) -> LemmaAudit {
    let (a, b, r, s) = (l.a(), l.b(), l.r(), l.s());
    let mut findings = Vec::new();
    let (va, vb) = (a.support(), b.support());
    findings.push(
        Finding::holds_if(
            "equal_supports",
            "both components span the same vertices",
            va == vb,
            format!("|V(A)| = {}, |V(B)| = {}", va.len(), vb.len()),
        )
        .with_witness(
            va.union(vb).difference(va.intersection(vb)).iter().map(EdgeSet::singleton).collect(),
        ),
    );
    if r == s && r > 1 {
        findings.push(disjoint_partner("A", a));
        findings.push(disjoint_partner("B", b));
    } else {
        findings.push(Finding::new(
            "disjoint_partner",
            "for r = s > 1 every edge has a disjoint edge on its side",
            Outcome::OutOfDomain,
            format!("r = {r}, s = {s}"),
        ));
    }
    findings.push(star_containment("A", a, va));
    findings.push(star_containment("B", b, vb));
    findings.push(matching_size_law("A", a, s, opts.budget));
    findings.push(matching_size_law("B", b, r, opts.budget));
    let (nu_star_a, nu_star_b) = rayon::join(
        || nu_star(a).expect("loom components are nonempty"),
        || nu_star(b).expect("loom components are nonempty"),
    );
    findings.push(fractional_law("A", a, s, &nu_star_a));
    findings.push(fractional_law("B", b, r, &nu_star_b));
    findings.push(perp_law("A", a, b, s, &nu_star_a));
    findings.push(perp_law("B", b, a, r, &nu_star_b));
    const PIN: &str = "for r = s with fractional cover number r, every pinning set of A and B together has r vertices";
    if r == s && nu_star_a.value == rat(r) {
        let pins = perp(&l.union(), l.n());
        let bad: Vec<EdgeSet> = pins.iter().copied().filter(|p| p.len() != r).collect();
        findings.push(
            Finding::holds_if("pinning_size", PIN, bad.is_empty(), format!("{} pinning sets", pins.len()))
                .with_witness(bad),
        );
    } else {
        findings.push(Finding::new("pinning_size", PIN, Outcome::OutOfDomain, format!("r = {r}, s = {s}")));
    }
    LemmaAudit { findings, nu_star_a, nu_star_b }
}

/// Exact covering number, or the bracket left by an exhausted budget.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TauBound {
    pub lower: usize,
    pub upper: usize,
    /// A cover with `upper` vertices.
    #[serde(with = "crate::covers::edge_set")]
    pub witness: EdgeSet,
    pub exact: bool,
    pub nodes: Option<u64>,
}

impl TauBound {
    pub fn value(&self) -> Option<usize> {
        self.exact.then_some(self.upper)
    }

    fn compute(h: &Hypergraph, budget: Option<u64>) -> TauBound {
        match tau(h, budget) {
            Ok(c) => TauBound {
                lower: c.value,
                upper: c.value,
                witness: c.witness[0],
                exact: true,
                nodes: Some(c.nodes),
            },
            Err(CoverError::BudgetExceeded { lower, upper, best, .. }) => TauBound {
                lower,
                upper,
                witness: best[0],
                exact: false,
                nodes: None,
            },
            Err(e) => panic!("covering number of a loom union: {e}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LoomQuantities {
    pub r: usize,
    pub s: usize,
    pub vertices: usize,
    pub tau: TauBound,
    /// `ν(A ∪ B)`; absent when the search budget ran out.
    pub nu: Option<IntCertificate>,
    pub nu_a: Option<IntCertificate>,
    pub nu_b: Option<IntCertificate>,
    pub tau_star: FracCertificate,
    pub tau_star_a: FracCertificate,
    pub tau_star_b: FracCertificate,
}

pub fn loom_quantities(l: &Loom) -> LoomQuantities {
    loom_quantities_with(l, &VerifyOptions::default())
}

pub fn loom_quantities_with(l: &Loom, opts: &VerifyOptions) -> LoomQuantities {
    let union = l.union();
    let budget = opts.budget;
    let ((tau_bound, nus), (tau_star, (tau_star_a, tau_star_b))) = rayon::join(
        || {
            rayon::join(
                || TauBound::compute(&union, budget),
                || (nu(&union, budget).ok(), nu(l.a(), budget).ok(), nu(l.b(), budget).ok()),
            )
        },
        || {
            rayon::join(
                || nu_star(&union).expect("nonempty"),
                || rayon::join(|| nu_star(l.a()).expect("nonempty"), || nu_star(l.b()).expect("nonempty")),
            )
        },
    );
    LoomQuantities {
        r: l.r(),
        s: l.s(),
        vertices: l.vertices().len(),
        tau: tau_bound,
        nu: nus.0,
        nu_a: nus.1,
        nu_b: nus.2,
        tau_star,
        tau_star_a,
        tau_star_b,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConjectureReport {
    pub findings: Vec<Finding>,
    /// Whether `A ∪ B` has a pinning set, with one if so.
    #[serde(with = "crate::covers::opt_edge_set")]
    pub pinning_set: Option<EdgeSet>,
    /// `tau <= r + s - 2` checked without the pinnability hypothesis. This is
    /// not a conjecture: non-pinnable looms can exceed it.
    pub unconditional_cover_bound: Outcome,
}

impl ConjectureReport {
    pub fn finding(&self, name: &str) -> Option<&Finding> {
        self.findings.iter().find(|f| f.name == name)
    }

    /// Research-grade findings: any statement observed to fail.
    pub fn counterexamples(&self) -> impl Iterator<Item = &Finding> {
        self.findings.iter().filter(|f| f.outcome == Outcome::Fails)
    }
}

/// Instance-check the open statements about looms against exact quantities.
pub fn conjecture_report(l: &Loom, q: &LoomQuantities) -> ConjectureReport {
    let (r, s) = (l.r(), l.s());
    let mut findings = Vec::new();
    let max_rs = rat(r.max(s));
    findings.push(Finding::holds_if(
        "tau_star_is_max",
        "the fractional cover number of A and B together is max(r, s)",
        q.tau_star.value == max_rs,
        format!("tau* = {}, max(r, s) = {max_rs}", q.tau_star.value),
    ));
    findings.push(Finding::holds_if(
        "component_tau_stars",
        "tau*(A) = s and tau*(B) = r",
        q.tau_star_a.value == rat(s) && q.tau_star_b.value == rat(r),
        format!("tau*(A) = {}, tau*(B) = {}", q.tau_star_a.value, q.tau_star_b.value),
    ));
    findings.push(Finding::holds_if(
        "vertex_count",
        "the loom has rs vertices",
        q.vertices == r * s,
        format!("|V| = {}, rs = {}", q.vertices, r * s),
    ));
    let pin = crate::covers::is_pinnable(&l.union());
    let t = &q.tau;
    let bound = (r + s).saturating_sub(2);
    let tau_text = if t.exact {
        format!("tau = {}", t.upper)
    } else {
        format!("tau in [{}, {}]", t.lower, t.upper)
    };
    let unconditional = if r < 2 || s < 2 {
        Outcome::OutOfDomain
    } else if t.upper <= bound {
        Outcome::Holds
    } else if t.lower > bound {
        Outcome::Fails
    } else {
        Outcome::Undetermined
    };
    const BOUND: &str = "if A and B together are pinnable and r, s >= 2 then tau <= r + s - 2";
    let bound_finding = if r < 2 || s < 2 {
        Finding::new("cover_bound", BOUND, Outcome::OutOfDomain, format!("r = {r}, s = {s}; {tau_text}"))
    } else if pin.is_none() {
        Finding::new(
            "cover_bound",
            BOUND,
            Outcome::OutOfDomain,
            format!("not pinnable; {tau_text}, r + s - 2 = {bound}"),
        )
    } else {
        Finding::new("cover_bound", BOUND, unconditional, format!("pinnable; {tau_text}, r + s - 2 = {bound}"))
    };
    findings.push(bound_finding.with_witness(vec![t.witness]));
    let components = [("A", l.a()), ("B", l.b())];
    let mut all_pfm = true;
    let mut detail = Vec::new();
    for (side, h) in components {
        for comp in h.connected_components() {
            let (compact, _) = comp.hypergraph.compact(comp.vertices).expect("fits");
            let has = has_perfect_fractional_matching(&compact).expect("grounded").is_some();
            all_pfm &= has;
            if !has {
                detail.push(format!("{side} component on {}", comp.vertices));
            }
        }
    }
    findings.push(Finding::holds_if(
        "component_fractional_matchings",
        "every connected component of each side has a perfect fractional matching",
        all_pfm,
        if all_pfm { "all components".to_string() } else { detail.join("; ") },
    ));
    ConjectureReport { findings, pinning_set: pin, unconditional_cover_bound: unconditional }
}

#[cfg(test)]
mod tests {
    use super::super::verify_loom;
    use super::*;

    fn h(n: usize, edges: &[&[usize]]) -> Hypergraph {
        Hypergraph::new(n, edges.iter().map(|e| e.iter().copied())).unwrap()
    }

    #[test]
    fn grid_passes_everything() {
        let a = h(9, &[&[0, 1, 2], &[3, 4, 5], &[6, 7, 8], &[0, 3, 6], &[1, 4, 7], &[2, 5, 8]]);
        let b = h(9, &[&[0, 4, 8], &[0, 5, 7], &[1, 3, 8], &[1, 5, 6], &[2, 3, 7], &[2, 4, 6]]);
        let l = verify_loom(&a, &b).unwrap();
        let audit = audit_lemmas(&l);
        assert!(audit.findings.iter().all(|f| f.outcome == Outcome::Holds), "{audit:#?}");
        let q = loom_quantities(&l);
        assert_eq!(q.vertices, 9);
        assert_eq!(q.tau_star.value, rat(3));
        assert_eq!(q.nu.as_ref().unwrap().value, 3);
        let rep = conjecture_report(&l, &q);
        assert_eq!(rep.counterexamples().count(), 0, "{rep:#?}");
        // tau(A ∪ B) = 5 > 4 and no set meets every row, column and
        // permutation triple exactly once (brute force over all 2^9 sets)
        assert_eq!(q.tau.value(), Some(5));
        assert!(rep.pinning_set.is_none());
        assert_eq!(rep.finding("cover_bound").unwrap().outcome, Outcome::OutOfDomain);
        assert_eq!(rep.unconditional_cover_bound, Outcome::Fails);
    }

    #[test]
    fn unit_loom_is_out_of_domain_for_the_bound() {
        let u = h(1, &[&[0]]);
        let l = verify_loom(&u, &u).unwrap();
        let q = loom_quantities(&l);
        assert_eq!(q.tau.value(), Some(1));
        let rep = conjecture_report(&l, &q);
        assert_eq!(rep.finding("cover_bound").unwrap().outcome, Outcome::OutOfDomain);
        assert!(audit_lemmas(&l).no_failures());
    }
}
