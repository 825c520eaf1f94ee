use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::covers::for_each_subset;
use crate::fraclp::{nu_star, ratio_str, FracCertificate};
use crate::hypercore::{is_cross_intersecting, EdgeSet, Hypergraph};
use crate::Rational;

use super::AtlasError;

/// `r + 1` mutually orthogonal `r`-uniform matchings of size `r`: the
/// parallel classes of the affine plane of order `r`, for `r ∈ {2, 3}`.
/// Cell `(i, j)` of the `r × r` grid is vertex `i*r + j`.
pub fn mols_family(r: usize) -> Result<Vec<Hypergraph>, AtlasError> {
    if !(2..=3).contains(&r) {
        return Err(AtlasError::Unsupported(format!("built-in orthogonal matchings exist for r = 2, 3 only, not {r}")));
    }
    let n = r * r;
    let class = |line: &dyn Fn(usize, usize) -> usize| {
        let mut lines = vec![EdgeSet::EMPTY; r];
        for i in 0..r {
            for j in 0..r {
                lines[line(i, j)].insert(i * r + j);
            }
        }
        Hypergraph::from_sets(n, lines)
    };
    let mut out = vec![class(&|i, _| i)?, class(&|_, j| j)?];
    for slope in 1..r {
        out.push(class(&|i, j| (j + r * r - slope * i) % r)?);
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct FamilyReport {
    pub r: usize,
    pub members: usize,
    pub tau_stars: Vec<FracCertificate>,
    #[serde(with = "ratio_str")]
    pub min_tau_star: Rational,
    /// Every member has `τ* = r`.
    pub all_equal_r: bool,
    pub extension: Option<ExtensionTrials>,
}

/// Random attempts to extend the family by one more member.
#[derive(Clone, Debug, Serialize)]
pub struct ExtensionTrials {
    pub trials: usize,
    pub seed: u64,
    /// Trials where some extra member existed and was added.
    pub extended: usize,
    /// Trials where no `r`-set met every edge of every member.
    pub vacuous: usize,
    /// Trials in which all `m + 1` members had `τ* = r`.
    pub all_equal_r: Vec<usize>,
    #[serde(skip)]
    pub samples: Vec<ExtensionSample>,
}

#[derive(Clone, Debug)]
pub struct ExtensionSample {
    pub trial: usize,
    pub members: Vec<Hypergraph>,
    pub certificates: Vec<FracCertificate>,
}

/// Check pairwise cross-intersection and every `τ*`, then run `trials`
/// seeded attempts to add a further cross-intersecting member.
pub fn family_check(family: &[Hypergraph], r: usize, trials: usize, seed: u64) -> Result<FamilyReport, AtlasError> {
    let n = family.first().map_or(0, Hypergraph::n);
    if family.iter().any(|h| h.n() != n) {
        return Err(AtlasError::Unsupported("members must share one universe".into()));
    }
    for (i, h) in family.iter().enumerate() {
        if h.is_empty() || h.uniformity()? != Some(r) {
            return Err(AtlasError::NotUniform(i, r));
        }
    }
    for i in 0..family.len() {
        for j in i + 1..family.len() {
            if !is_cross_intersecting(&family[i], &family[j]) {
                return Err(AtlasError::NotCrossIntersecting(i, j));
            }
        }
    }
    let tau_stars = family.iter().map(nu_star).collect::<Result<Vec<_>, _>>()?;
    let target = Rational::from_integer(r.into());
    let min_tau_star = tau_stars.iter().map(|c| c.value.clone()).min().unwrap_or_else(Rational::zero);
    let all_equal_r = tau_stars.iter().all(|c| c.value == target);
    let extension = if trials > 0 { Some(extension_trials(family, r, trials, seed)?) } else { None };
    Ok(FamilyReport { r, members: family.len(), tau_stars, min_tau_star, all_equal_r, extension })
}

fn r_sets(n: usize, r: usize) -> Vec<EdgeSet> {
    let mut out = Vec::new();
    for_each_subset(EdgeSet::full(n), r, &mut |s| out.push(s));
    out.sort();
    out
}

/// `r`-sets meeting every edge of every listed member.
fn compatible(pool: &[EdgeSet], others: &[&Hypergraph]) -> Vec<EdgeSet> {
    pool.iter()
        .copied()
        .filter(|&t| others.iter().all(|h| h.edges().iter().all(|&e| e.meets(t))))
        .collect()
}

/// A random nonempty selection of at most `cap` candidates.
fn choose(rng: &mut ChaCha8Rng, cands: &[EdgeSet], cap: usize) -> Vec<EdgeSet> {
    let mut picked: Vec<EdgeSet> = cands.iter().copied().filter(|_| rng.gen_bool(0.5)).collect();
    while picked.len() > cap {
        picked.swap_remove(rng.gen_range(0..picked.len()));
    }
    if picked.is_empty() {
        picked.push(cands[rng.gen_range(0..cands.len())]);
    }
    picked
}

/// Even trials perturb the given family by resampling random members
/// against the rest; odd trials grow a fresh random family of the same size.
/// Either way one more member is then drawn among the `r`-sets meeting
/// everything.
fn extension_trials(family: &[Hypergraph], r: usize, trials: usize, seed: u64) -> Result<ExtensionTrials, AtlasError> {
    let n = family[0].n();
    let pool = r_sets(n, r);
    let target = Rational::from_integer(r.into());
    let mut out = ExtensionTrials { trials, seed, extended: 0, vacuous: 0, all_equal_r: Vec::new(), samples: Vec::new() };
    for t in 0..trials {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (t as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
        let mut members: Vec<Hypergraph> = family.to_vec();
        if t % 2 == 0 {
            for i in 0..members.len() {
                if rng.gen_bool(0.5) {
                    let others: Vec<&Hypergraph> = members.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, h)| h).collect();
                    let cands = compatible(&pool, &others);
                    if !cands.is_empty() {
                        members[i] = Hypergraph::from_sets(n, choose(&mut rng, &cands, 6))?;
                    }
                }
            }
        } else {
            let mut grown: Vec<Hypergraph> = Vec::new();
            for i in 0..members.len() {
                let cands = compatible(&pool, &grown.iter().collect::<Vec<_>>());
                grown.push(if cands.is_empty() {
                    members[i].clone()
                } else {
                    Hypergraph::from_sets(n, choose(&mut rng, &cands, 6))?
                });
            }
            if grown.iter().enumerate().all(|(i, h)| grown[i + 1..].iter().all(|g| is_cross_intersecting(h, g))) {
                members = grown;
            }
        }
        let cands = compatible(&pool, &members.iter().collect::<Vec<_>>());
        if cands.is_empty() {
            out.vacuous += 1;
            continue;
        }
        members.push(Hypergraph::from_sets(n, choose(&mut rng, &cands, 8))?);
        out.extended += 1;
        for i in 0..members.len() {
            for j in i + 1..members.len() {
                if !is_cross_intersecting(&members[i], &members[j]) {
                    return Err(AtlasError::Internal(format!("trial {t}: generated members are not cross-intersecting")));
                }
            }
        }
        let certificates = members.iter().map(nu_star).collect::<Result<Vec<_>, _>>()?;
        if certificates.iter().all(|c| c.value == target) {
            out.all_equal_r.push(t);
        }
        out.samples.push(ExtensionSample { trial: t, members, certificates });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypercore::is_orthogonal;
    use crate::weave::fano_plane;

    #[test]
    fn mols_families_are_orthogonal_matchings() {
        for r in [2, 3] {
            let f = mols_family(r).unwrap();
            assert_eq!(f.len(), r + 1);
            for i in 0..f.len() {
                assert_eq!(f[i].len(), r);
                for j in i + 1..f.len() {
                    assert!(is_orthogonal(&f[i], &f[j]).unwrap());
                }
            }
        }
        assert!(mols_family(4).is_err());
    }

    #[test]
    fn family_checks() {
        let rep = family_check(&mols_family(2).unwrap(), 2, 20, 7).unwrap();
        assert!(rep.all_equal_r);
        assert!(rep.extension.unwrap().all_equal_r.is_empty());
        let fano = vec![fano_plane(); 5];
        let rep = family_check(&fano, 3, 0, 0).unwrap();
        assert_eq!(rep.min_tau_star, Rational::new(7.into(), 3.into()));
        let disjoint = [Hypergraph::new(4, [[0, 1]]).unwrap(), Hypergraph::new(4, [[2, 3]]).unwrap()];
        assert!(matches!(family_check(&disjoint, 2, 0, 0), Err(AtlasError::NotCrossIntersecting(0, 1))));
    }
}
