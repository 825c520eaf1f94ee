use num_bigint::BigInt;

use crate::hypercore::{EdgeSet, Graph};
use crate::Rational;

use super::FracError;

/// Largest graph `t_max` will scan.
pub const T_MAX_VERTICES: usize = 24;

/// `t(U) = 2|E(G[U])| / (|U| - 1)` for odd `|U| >= 3`.
pub fn t_value(g: &Graph, u: EdgeSet) -> Result<Rational, FracError> {
    let k = u.len();
    if k < 3 || k.is_multiple_of(2) {
        return Err(FracError::EvenSubset(k));
    }
    Ok(Rational::new(
        BigInt::from(2 * g.induced_edge_count(u)),
        BigInt::from(k - 1),
    ))
}

/// Maximum of `t(U)` over odd `U` with `|U| >= 3`, with the least maximizer in
/// edge-set order. `None` when the graph has fewer than three vertices.
pub fn t_max(g: &Graph) -> Result<Option<(Rational, EdgeSet)>, FracError> {
    let n = g.n();
    if n > T_MAX_VERTICES {
        return Err(FracError::TooLarge(n));
    }
    let adj: Vec<u32> = (0..n).map(|v| g.neighbors(v).bits() as u32).collect();
    // best = (2|E|, |U|-1, mask)
    let mut best: Option<(u64, u64, u32)> = None;
    for mask in 1u32..(1u32 << n) {
        let k = mask.count_ones();
        if k < 3 || k % 2 == 0 {
            continue;
        }
        let mut twice = 0u64;
        let mut rest = mask;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            twice += (adj[v] & mask).count_ones() as u64;
            rest &= rest - 1;
        }
        let cand = (twice, (k - 1) as u64, mask);
        best = match best {
            None => Some(cand),
            Some(b) => {
                let (lhs, rhs) = (cand.0 * b.1, b.0 * cand.1);
                let cand_set = EdgeSet::from_bits(mask as u128);
                let best_set = EdgeSet::from_bits(b.2 as u128);
                if lhs > rhs || (lhs == rhs && cand_set < best_set) {
                    Some(cand)
                } else {
                    Some(b)
                }
            }
        };
    }
    Ok(best.map(|(twice, den, mask)| {
        (Rational::new(BigInt::from(twice), BigInt::from(den)), EdgeSet::from_bits(mask as u128))
    }))
}

/// `χ*_e(G) = max(Δ(G), t(G))`.
pub fn fractional_edge_chromatic(g: &Graph) -> Result<Rational, FracError> {
    let delta = Rational::from_integer(BigInt::from(g.max_degree()));
    Ok(match t_max(g)? {
        Some((t, _)) if t > delta => t,
        _ => delta,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete(n: usize) -> Graph {
        Graph::new(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).unwrap()
    }

    #[test]
    fn complete_graphs() {
        let k6 = complete(6);
        let u = EdgeSet::range(0, 5);
        assert_eq!(t_value(&k6, u).unwrap(), Rational::from_integer(5.into()));
        assert_eq!(fractional_edge_chromatic(&k6).unwrap(), Rational::from_integer(5.into()));
        let k2 = complete(2);
        assert_eq!(fractional_edge_chromatic(&k2).unwrap(), Rational::from_integer(1.into()));
        let tri = complete(3);
        assert_eq!(t_value(&tri, EdgeSet::range(0, 3)).unwrap(), Rational::from_integer(3.into()));
        assert_eq!(t_value(&k6, EdgeSet::range(0, 4)), Err(FracError::EvenSubset(4)));
        // odd complete graphs need Δ+1 colors fractionally: K5 gives 5
        assert_eq!(fractional_edge_chromatic(&complete(5)).unwrap(), Rational::from_integer(5.into()));
    }

    #[test]
    fn too_large() {
        assert_eq!(t_max(&complete(25)), Err(FracError::TooLarge(25)));
    }
}
