//! Close-by-One enumeration of the closed sets of the Galois connection
//! "meets every member" between two lists of vertex sets.

use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;

use crate::hypercore::EdgeSet;

const WORDS: usize = 4;

/// Up to 256 item indices.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub(crate) struct Bits([u64; WORDS]);

impl Bits {
    pub const CAPACITY: usize = 64 * WORDS;

    pub fn full(n: usize) -> Bits {
        let mut b = Bits::default();
        for i in 0..n {
            b.insert(i);
        }
        b
    }

    pub fn insert(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    pub fn with(mut self, i: usize) -> Bits {
        self.insert(i);
        self
    }

    pub fn has(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn and(&self, o: &Bits) -> Bits {
        let mut b = *self;
        for (x, y) in b.0.iter_mut().zip(o.0) {
            *x &= y;
        }
        b
    }

    /// The members below `i`.
    pub fn below(&self, i: usize) -> Bits {
        let mut b = *self;
        for (w, x) in b.0.iter_mut().enumerate() {
            let lo = w * 64;
            if i <= lo {
                *x = 0;
            } else if i < lo + 64 {
                *x &= (1u64 << (i - lo)) - 1;
            }
        }
        b
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(w, &word)| {
            let mut x = word;
            std::iter::from_fn(move || {
                (x != 0).then(|| {
                    let t = x.trailing_zeros() as usize;
                    x &= x - 1;
                    w * 64 + t
                })
            })
        })
    }
}

pub(crate) struct Galois {
    pub left: Vec<EdgeSet>,
    pub right: Vec<EdgeSet>,
    meets_l: Vec<Bits>,
    meets_r: Vec<Bits>,
}

impl Galois {
    pub fn new(left: Vec<EdgeSet>, right: Vec<EdgeSet>) -> Galois {
        assert!(left.len() <= Bits::CAPACITY && right.len() <= Bits::CAPACITY);
        let meets = |x: EdgeSet, ys: &[EdgeSet]| {
            ys.iter()
                .enumerate()
                .filter(|(_, &y)| x.meets(y))
                .fold(Bits::default(), |b, (j, _)| b.with(j))
        };
        let meets_l = left.iter().map(|&x| meets(x, &right)).collect();
        let meets_r = right.iter().map(|&y| meets(y, &left)).collect();
        Galois { left, right, meets_l, meets_r }
    }

    /// Right items meeting every left item in `x`.
    pub fn up(&self, x: &Bits) -> Bits {
        x.iter().fold(Bits::full(self.right.len()), |acc, i| acc.and(&self.meets_l[i]))
    }

    /// Left items meeting every right item in `y`.
    pub fn down(&self, y: &Bits) -> Bits {
        y.iter().fold(Bits::full(self.left.len()), |acc, j| acc.and(&self.meets_r[j]))
    }

    pub fn close(&self, x: &Bits) -> Bits {
        self.down(&self.up(x))
    }

    /// Every closed set containing `seed`, each exactly once. Top-level
    /// branches run in parallel; results come back in canonical (branch) order.
    /// `keep` filters what is returned; `limit` caps the closed sets visited.
    pub fn closed_sets<F>(&self, seed: &Bits, limit: Option<u64>, keep: F) -> Result<(Vec<Bits>, u64), u64>
    where
        F: Fn(&Bits) -> bool + Sync,
    {
        let counter = AtomicU64::new(0);
        let root = self.close(seed);
        let tick = || {
            let c = counter.fetch_add(1, Ordering::Relaxed) + 1;
            limit.is_none_or(|l| c <= l)
        };
        if !tick() {
            return Err(counter.into_inner());
        }
        let branches: Vec<Result<Vec<Bits>, ()>> = (0..self.left.len())
            .into_par_iter()
            .map(|i| {
                let mut out = Vec::new();
                self.branch(&root, i, &tick, &keep, &mut out).map(|_| out)
            })
            .collect();
        let mut all = Vec::new();
        if keep(&root) {
            all.push(root);
        }
        for b in branches {
            match b {
                Ok(v) => all.extend(v),
                Err(()) => return Err(counter.into_inner()),
            }
        }
        Ok((all, counter.into_inner()))
    }

    fn branch<T, F>(&self, x: &Bits, i: usize, tick: &T, keep: &F, out: &mut Vec<Bits>) -> Result<(), ()>
    where
        T: Fn() -> bool,
        F: Fn(&Bits) -> bool,
    {
        if x.has(i) {
            return Ok(());
        }
        let z = self.close(&x.with(i));
        if z.below(i) != x.below(i) {
            return Ok(());
        }
        if !tick() {
            return Err(());
        }
        if keep(&z) {
            out.push(z);
        }
        for j in i + 1..self.left.len() {
            self.branch(&z, j, tick, keep, out)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn subsets(n: usize, k: usize) -> Vec<EdgeSet> {
        (0u128..1 << n).filter(|b| b.count_ones() as usize == k).map(EdgeSet::from_bits).collect()
    }

    #[test]
    fn closed_sets_match_brute_force() {
        let g = Galois::new(subsets(5, 2), subsets(5, 3));
        let (found, _) = g.closed_sets(&Bits::default(), None, |_| true).unwrap();
        let mut brute: Vec<Bits> = (0u64..1 << g.left.len())
            .map(|m| (0..g.left.len()).filter(|i| m >> i & 1 == 1).fold(Bits::default(), |b, i| b.with(i)))
            .filter(|x| g.close(x) == *x)
            .collect();
        let mut found_sorted = found.clone();
        found_sorted.sort();
        brute.sort();
        assert_eq!(found_sorted, brute);
        assert!(g.closed_sets(&Bits::default(), Some(3), |_| true).is_err());
    }
}
