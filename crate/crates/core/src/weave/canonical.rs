use crate::hypercore::{EdgeSet, Hypergraph};
use crate::loom::{verify_loom, Loom};

use super::WeaveError;

fn verified(a: Hypergraph, b: Hypergraph) -> Result<Loom, WeaveError> {
    verify_loom(&a, &b).map_err(|r| WeaveError::Verification(Box::new(r)))
}

fn positive(name: &str, v: usize) -> Result<(), WeaveError> {
    if v == 0 {
        Err(WeaveError::InvalidParameter(format!("{name} must be at least 1")))
    } else {
        Ok(())
    }
}

/// `𝕌`: both components are the single edge `{0}`.
pub fn loom_u() -> Loom {
    let h = Hypergraph::from_valid(1, vec![EdgeSet::singleton(0)]);
    verified(h.clone(), h).expect("unit loom")
}

/// `𝕍_r`: one edge of size `r` against its `r` singletons; the `(r, 1)`-loom.
pub fn loom_v(r: usize) -> Result<Loom, WeaveError> {
    positive("r", r)?;
    let a = Hypergraph::from_sets(r, [EdgeSet::full(r)])?;
    let b = Hypergraph::from_sets(r, (0..r).map(EdgeSet::singleton))?;
    verified(a, b)
}

/// An `r`-uniform matching with `s` edges against all its transversals.
/// Block `i` occupies vertices `i*r .. i*r + r`.
pub fn matching_transversal_loom(r: usize, s: usize) -> Result<Loom, WeaveError> {
    positive("r", r)?;
    positive("s", s)?;
    let n = r * s;
    let a = Hypergraph::from_sets(n, (0..s).map(|i| EdgeSet::range(i * r, i * r + r)))?;
    let mut transversals = vec![EdgeSet::EMPTY];
    for i in 0..s {
        transversals = transversals
            .iter()
            .flat_map(|&t| (0..r).map(move |j| t.with(i * r + j)))
            .collect();
    }
    let b = Hypergraph::from_sets(n, transversals)?;
    verified(a, b)
}

/// `𝕃_{r,r}`: rows and columns of the `r × r` grid against its `r!`
/// permutation subgrids. Cell `(i, j)` is vertex `i*r + j`.
pub fn grid_loom(r: usize) -> Result<Loom, WeaveError> {
    positive("r", r)?;
    let n = r * r;
    let rows = (0..r).map(|i| (0..r).map(|j| i * r + j).collect::<EdgeSet>());
    let cols = (0..r).map(|j| (0..r).map(|i| i * r + j).collect::<EdgeSet>());
    let a = Hypergraph::from_sets(n, rows.chain(cols))?;
    let mut perms = Vec::new();
    permutation_sets(r, 0, EdgeSet::EMPTY, 0, &mut perms);
    let b = Hypergraph::from_sets(n, perms)?;
    verified(a, b)
}

fn permutation_sets(r: usize, row: usize, acc: EdgeSet, used: u32, out: &mut Vec<EdgeSet>) {
    if row == r {
        out.push(acc);
        return;
    }
    for col in 0..r {
        if used >> col & 1 == 0 {
            permutation_sets(r, row + 1, acc.with(row * r + col), used | 1 << col, out);
        }
    }
}

fn from_digits(n: usize, words: &[&str]) -> Hypergraph {
    let sets = words
        .iter()
        .map(|w| w.bytes().map(|c| (c - b'1') as usize).collect::<EdgeSet>());
    Hypergraph::from_sets(n, sets).expect("literal edges are in range")
}

/// `𝕍_{3,3}` on the grid numbered with columns `147, 258, 369` (0-based here).
pub fn vane_33() -> Loom {
    let c = from_digits(9, &["147", "258", "369", "159", "158", "247", "259", "368"]);
    let d = from_digits(9, &["123", "456", "789", "357", "126", "345", "489", "567"]);
    verified(c, d).expect("vane loom")
}

/// The `(Σq, 2)`-loom built from blocks `X_{i,1}, X_{i,2}` of sizes `q_i`:
/// `A` takes one side of every block, `B` is the complete bipartite graph
/// within each block. Block `i` occupies `2q_i` consecutive vertices, first side first.
pub fn r2_loom(q: &[usize]) -> Result<Loom, WeaveError> {
    if q.is_empty() || q.contains(&0) {
        return Err(WeaveError::InvalidParameter("block sizes must be positive and nonempty".into()));
    }
    let mut sides = Vec::new();
    let mut offset = 0;
    for &qi in q {
        sides.push((EdgeSet::range(offset, offset + qi), EdgeSet::range(offset + qi, offset + 2 * qi)));
        offset += 2 * qi;
    }
    let n = offset;
    let mut a_edges = vec![EdgeSet::EMPTY];
    for &(x1, x2) in &sides {
        a_edges = a_edges.iter().flat_map(|&e| [e.union(x1), e.union(x2)]).collect();
    }
    let b_edges = sides.iter().flat_map(|&(x1, x2)| {
        x1.iter()
            .flat_map(move |u| x2.iter().map(move |v| EdgeSet::singleton(u).with(v)))
    });
    let a = Hypergraph::from_sets(n, a_edges)?;
    let b = Hypergraph::from_sets(n, b_edges)?;
    verified(a, b)
}

/// The projective plane of order 2: 7 points, 7 lines of size 3.
pub fn fano_plane() -> Hypergraph {
    from_digits(7, &["123", "145", "167", "246", "257", "347", "356"])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_canonical_looms() {
        assert_eq!((loom_u().r(), loom_u().s()), (1, 1));
        let v3 = loom_v(3).unwrap();
        assert_eq!(v3.a().len(), 1);
        assert_eq!(v3.b().len(), 3);
        let mt = matching_transversal_loom(2, 3).unwrap();
        assert_eq!((mt.r(), mt.s(), mt.b().len()), (2, 3, 8));
        let g = grid_loom(3).unwrap();
        assert_eq!((g.a().len(), g.b().len()), (6, 6));
        let vane = vane_33();
        assert_eq!(vane.b().edges()[0].to_vec(), vec![0, 1, 2]);
        assert!(loom_v(0).is_err());
    }

    #[test]
    fn r2_looms() {
        let l = r2_loom(&[1, 1]).unwrap();
        assert_eq!((l.a().len(), l.b().len()), (4, 2));
        assert_eq!((l.r(), l.s()), (2, 2));
        let l = r2_loom(&[2, 1]).unwrap();
        assert_eq!((l.r(), l.s(), l.n()), (3, 2, 6));
    }

    #[test]
    fn fano_lines_pairwise_meet_once() {
        let f = fano_plane();
        for &x in f.edges() {
            for &y in f.edges() {
                assert_eq!(x.intersection_len(y), if x == y { 3 } else { 1 });
            }
        }
    }
}
