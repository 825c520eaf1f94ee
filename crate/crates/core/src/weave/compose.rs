use crate::hypercore::{join, Hypergraph, MAX_VERTICES};
use crate::loom::{verify_loom_with, Axiom, AxiomCheck, Basis, Loom, Status, VerificationReport};

use super::{Verify, WeaveError};

/// For each vertex of a combined universe, the factor it came from and its
/// index there. Factors are laid out one after another in argument order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Provenance {
    pub origin: Vec<(usize, usize)>,
}

impl Provenance {
    pub fn of(factors: &[&Loom]) -> Provenance {
        let origin = factors
            .iter()
            .enumerate()
            .flat_map(|(i, l)| (0..l.n()).map(move |v| (i, v)))
            .collect();
        Provenance { origin }
    }
}

fn placed(l1: &Loom, l2: &Loom) -> Result<(usize, [Hypergraph; 4]), WeaveError> {
    let n = l1.n() + l2.n();
    if n > MAX_VERTICES {
        return Err(WeaveError::TooLarge(n, MAX_VERTICES));
    }
    Ok((
        n,
        [
            l1.a().shifted(0, n)?,
            l1.b().shifted(0, n)?,
            l2.a().shifted(l1.n(), n)?,
            l2.b().shifted(l1.n(), n)?,
        ],
    ))
}

/// A loom whose cover axioms follow from a construction theorem. Uniformity
/// and orthogonality are still checked directly.
pub(crate) fn inherited(
    a: Hypergraph,
    b: Hypergraph,
    basis: Basis,
) -> Result<Loom, WeaveError> {
    let mut report = VerificationReport {
        basis,
        checks: Vec::new(),
        tau_a: None,
        tau_b: None,
    };
    let r = a.uniformity().ok().flatten();
    let s = b.uniformity().ok().flatten();
    let uni = |axiom, u: Option<usize>| match u {
        Some(k) => AxiomCheck::new(axiom, Status::Pass, format!("{k}-uniform")),
        None => AxiomCheck::new(axiom, Status::Fail, "not uniform"),
    };
    report.checks.push(uni(Axiom::UniformA, r));
    report.checks.push(uni(Axiom::UniformB, s));
    report.checks.push(match crate::hypercore::orthogonality_violation(&a, &b)? {
        None => AxiomCheck::new(Axiom::Orthogonal, Status::Pass, format!("{} x {} pairs", a.len(), b.len())),
        Some((x, y)) => AxiomCheck::new(Axiom::Orthogonal, Status::Fail, format!("{x} and {y}"))
            .with_witness(vec![x, y]),
    });
    let why = match basis {
        Basis::Composition => "inherited from verified factors (composition)",
        Basis::Blowup => "inherited from verified parts (blow-up sufficient conditions)",
        Basis::Decomposition => "inherited from the verified whole (decomposition)",
        Basis::Full => "checked directly",
    };
    for axiom in [Axiom::TauA, Axiom::TauB, Axiom::ACoversB, Axiom::BCoversA] {
        report.checks.push(AxiomCheck::new(axiom, Status::Pass, why));
    }
    match (r, s, report.passed()) {
        (Some(r), Some(s), true) => Ok(Loom::from_construction(a, b, r, s, report)),
        _ => Err(WeaveError::Verification(Box::new(report))),
    }
}

pub(crate) fn finish(a: Hypergraph, b: Hypergraph, mode: &Verify, basis: Basis) -> Result<Loom, WeaveError> {
    match mode {
        Verify::Inherit => inherited(a, b, basis),
        _ => verify_loom_with(&a, &b, &mode.options())
            .map_err(|r| WeaveError::Verification(Box::new(r))),
    }
}

/// `𝕃₁ ⊠₁ 𝕃₂ = (A₁ * A₂, B₁ ∪ B₂)` for an `(a, b)`- and a `(c, b)`-loom,
/// fully verified. `𝕃₂`'s vertices follow `𝕃₁`'s.
pub fn compose1(l1: &Loom, l2: &Loom) -> Result<Loom, WeaveError> {
    compose1_with(l1, l2, &Verify::Full)
}

pub fn compose1_with(l1: &Loom, l2: &Loom, mode: &Verify) -> Result<Loom, WeaveError> {
    if l1.s() != l2.s() {
        return Err(WeaveError::UniformityMismatch(format!(
            "1-composition needs equal second uniformities, got {} and {}",
            l1.s(),
            l2.s()
        )));
    }
    let (_, [a1, b1, a2, b2]) = placed(l1, l2)?;
    finish(join(&a1, &a2)?, b1.union(&b2)?, mode, Basis::Composition)
}

/// `𝕃₁ ⊠₂ 𝕃₂ = (A₁ ∪ A₂, B₁ * B₂)` for an `(a, b)`- and an `(a, d)`-loom.
pub fn compose2(l1: &Loom, l2: &Loom) -> Result<Loom, WeaveError> {
    compose2_with(l1, l2, &Verify::Full)
}

pub fn compose2_with(l1: &Loom, l2: &Loom, mode: &Verify) -> Result<Loom, WeaveError> {
    if l1.r() != l2.r() {
        return Err(WeaveError::UniformityMismatch(format!(
            "2-composition needs equal first uniformities, got {} and {}",
            l1.r(),
            l2.r()
        )));
    }
    let (_, [a1, b1, a2, b2]) = placed(l1, l2)?;
    finish(a1.union(&a2)?, join(&b1, &b2)?, mode, Basis::Composition)
}

/// A loom split along disconnected components into indecomposable factors.
#[derive(Clone, Debug)]
pub enum Decomposition {
    /// An indecomposable factor on the listed vertices of the original loom.
    Leaf { loom: Loom, vertices: Vec<usize> },
    /// The factors of a disconnected `B`, joined on the `A` side.
    Compose1(Vec<Decomposition>),
    /// The factors of a disconnected `A`, joined on the `B` side.
    Compose2(Vec<Decomposition>),
}

impl Decomposition {
    pub fn leaves(&self) -> Vec<&Loom> {
        let mut out = Vec::new();
        self.collect(&mut out);
        out
    }

    fn collect<'a>(&'a self, out: &mut Vec<&'a Loom>) {
        match self {
            Decomposition::Leaf { loom, .. } => out.push(loom),
            Decomposition::Compose1(c) | Decomposition::Compose2(c) => {
                c.iter().for_each(|d| d.collect(out))
            }
        }
    }

    pub fn is_indecomposable(&self) -> bool {
        matches!(self, Decomposition::Leaf { .. })
    }
}

/// Split a loom into indecomposable factors, verifying each factor fully.
pub fn decompose(l: &Loom) -> Result<Decomposition, WeaveError> {
    decompose_with(l, &Verify::Full)
}

pub fn decompose_with(l: &Loom, mode: &Verify) -> Result<Decomposition, WeaveError> {
    if l.a().is_connected() && l.b().is_connected() {
        return Ok(Decomposition::Leaf { loom: l.clone(), vertices: (0..l.n()).collect() });
    }
    let support = l.vertices();
    let (a, back) = l.a().compact(support)?;
    let (b, _) = l.b().compact(support)?;
    split(&a, &b, &back, mode)
}

fn split(a: &Hypergraph, b: &Hypergraph, global: &[usize], mode: &Verify) -> Result<Decomposition, WeaveError> {
    let (by_b, comps) = if !b.is_connected() {
        (true, b.connected_components())
    } else if !a.is_connected() {
        (false, a.connected_components())
    } else {
        let loom = finish(a.clone(), b.clone(), mode, Basis::Decomposition)?;
        return Ok(Decomposition::Leaf { loom, vertices: global.to_vec() });
    };
    let mut children = Vec::with_capacity(comps.len());
    for comp in comps {
        let keep = comp.vertices;
        let other = if by_b { a } else { b }.restrict(keep).hypergraph;
        let (part, back) = comp.hypergraph.compact(keep)?;
        let (other, _) = other.compact(keep)?;
        let (pa, pb) = if by_b { (other, part) } else { (part, other) };
        let vertices: Vec<usize> = back.iter().map(|&v| global[v]).collect();
        children.push(split(&pa, &pb, &vertices, mode)?);
    }
    Ok(if by_b { Decomposition::Compose1(children) } else { Decomposition::Compose2(children) })
}

#[cfg(test)]
mod tests {
    use super::super::{grid_loom, loom_u, loom_v, matching_transversal_loom, vane_33};
    use super::*;
    use crate::hypercore::isomorphic;

    #[test]
    fn unit_powers_give_v_looms() {
        let mut l = loom_u();
        for _ in 1..4 {
            l = compose1(&l, &loom_u()).unwrap();
        }
        let v4 = loom_v(4).unwrap();
        assert_eq!(l.a(), v4.a());
        assert_eq!(l.b(), v4.b());
    }

    #[test]
    fn v_powers_give_matching_transversal_looms() {
        let v3 = loom_v(3).unwrap();
        let l = compose2(&compose2(&v3, &v3).unwrap(), &v3).unwrap();
        let mt = matching_transversal_loom(3, 3).unwrap();
        assert_eq!(l.a(), mt.a());
        assert_eq!(l.b(), mt.b());
    }

    #[test]
    fn mismatched_uniformities_are_rejected() {
        let g = grid_loom(3).unwrap();
        assert!(matches!(compose1(&g, &loom_v(2).unwrap()), Err(WeaveError::UniformityMismatch(_))));
    }

    #[test]
    fn decompose_round_trip() {
        let g = grid_loom(3).unwrap();
        let vane = vane_33();
        let l = compose1_with(&g, &vane, &Verify::Inherit).unwrap();
        assert_eq!(l.report().basis, Basis::Composition);
        let d = decompose(&l).unwrap();
        let leaves = d.leaves();
        assert_eq!(leaves.len(), 2);
        assert!(isomorphic(&leaves[0].union(), &g.union()).is_some());
        assert!(isomorphic(&leaves[1].union(), &vane.union()).is_some());
        assert!(decompose(&g).unwrap().is_indecomposable());
        // three V_2 factors, each splitting further into two unit looms
        let mt = matching_transversal_loom(2, 3).unwrap();
        let d = decompose(&mt).unwrap();
        assert!(matches!(&d, Decomposition::Compose2(c) if c.len() == 3));
        assert_eq!(d.leaves().len(), 6);
    }
}
