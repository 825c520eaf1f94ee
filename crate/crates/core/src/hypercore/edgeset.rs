use std::cmp::Ordering;
use std::fmt;

/// Largest vertex universe an [`EdgeSet`] can address.
pub const MAX_VERTICES: usize = 128;

/// A set of vertex indices stored as a 128-bit mask.
///
/// Ordered by cardinality first and then by the numeric value of the mask,
/// which is the tie-break used by every search and every serialized output.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct EdgeSet(u128);

impl EdgeSet {
    pub const EMPTY: EdgeSet = EdgeSet(0);

    #[inline]
    pub const fn from_bits(bits: u128) -> Self {
        EdgeSet(bits)
    }

    #[inline]
    pub const fn bits(self) -> u128 {
        self.0
    }

    #[inline]
    pub fn singleton(v: usize) -> Self {
        debug_assert!(v < MAX_VERTICES);
        EdgeSet(1u128 << v)
    }

    /// `{0, 1, .., n-1}`.
    #[inline]
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_VERTICES);
        if n == MAX_VERTICES {
            EdgeSet(u128::MAX)
        } else {
            EdgeSet((1u128 << n) - 1)
        }
    }

    /// `{lo, .., hi-1}`.
    pub fn range(lo: usize, hi: usize) -> Self {
        Self::full(hi).difference(Self::full(lo))
    }

    #[inline]
    pub const fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn contains(self, v: usize) -> bool {
        v < MAX_VERTICES && self.0 >> v & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, v: usize) {
        self.0 |= 1u128 << v;
    }

    #[inline]
    pub fn remove(&mut self, v: usize) {
        self.0 &= !(1u128 << v);
    }

    #[inline]
    pub fn with(self, v: usize) -> Self {
        EdgeSet(self.0 | 1u128 << v)
    }

    #[inline]
    pub fn without(self, v: usize) -> Self {
        EdgeSet(self.0 & !(1u128 << v))
    }

    #[inline]
    pub const fn union(self, other: Self) -> Self {
        EdgeSet(self.0 | other.0)
    }

    #[inline]
    pub const fn intersection(self, other: Self) -> Self {
        EdgeSet(self.0 & other.0)
    }

    #[inline]
    pub const fn difference(self, other: Self) -> Self {
        EdgeSet(self.0 & !other.0)
    }

    #[inline]
    pub const fn meets(self, other: Self) -> bool {
        self.0 & other.0 != 0
    }

    #[inline]
    pub const fn is_disjoint(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    #[inline]
    pub const fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub const fn intersection_len(self, other: Self) -> usize {
        (self.0 & other.0).count_ones() as usize
    }

    /// Smallest vertex in the set.
    #[inline]
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    /// Largest vertex in the set.
    #[inline]
    pub fn last(self) -> Option<usize> {
        (self.0 != 0).then(|| 127 - self.0.leading_zeros() as usize)
    }

    /// Shift every vertex up by `offset`.
    pub fn shifted(self, offset: usize) -> Self {
        debug_assert!(self.last().is_none_or(|m| m + offset < MAX_VERTICES));
        if offset >= MAX_VERTICES {
            EdgeSet(0)
        } else {
            EdgeSet(self.0 << offset)
        }
    }

    /// Image of the set under a vertex map `old -> new`.
    pub fn map(self, perm: &[usize]) -> Self {
        let mut out = EdgeSet::EMPTY;
        for v in self.iter() {
            out.insert(perm[v]);
        }
        out
    }

    pub fn iter(self) -> Iter {
        Iter(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl Ord for EdgeSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for EdgeSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl FromIterator<usize> for EdgeSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = EdgeSet::EMPTY;
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl IntoIterator for EdgeSet {
    type Item = usize;
    type IntoIter = Iter;
    fn into_iter(self) -> Iter {
        self.iter()
    }
}

/// Ascending iterator over the members of an [`EdgeSet`].
#[derive(Clone)]
pub struct Iter(u128);

impl Iterator for Iter {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Iter {}

impl fmt::Debug for EdgeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// 1-based rendering: `147` when every member is a single digit, `{1,12}` otherwise.
impl fmt::Display for EdgeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.last().is_none_or(|m| m < 9) && !self.is_empty() {
            for v in self.iter() {
                write!(f, "{}", v + 1)?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.iter().map(|v| (v + 1).to_string()).collect();
            write!(f, "{{{}}}", parts.join(","))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_is_size_then_value() {
        let a: EdgeSet = [5].into_iter().collect();
        let b: EdgeSet = [0, 1].into_iter().collect();
        let c: EdgeSet = [0, 2].into_iter().collect();
        assert!(a < b);
        assert!(b < c);
    }

    #[test]
    fn display_is_one_based() {
        let e: EdgeSet = [0, 3, 6].into_iter().collect();
        assert_eq!(e.to_string(), "147");
        let big: EdgeSet = [0, 11].into_iter().collect();
        assert_eq!(big.to_string(), "{1,12}");
    }

    #[test]
    fn full_range_and_shift() {
        assert_eq!(EdgeSet::full(128).len(), 128);
        assert_eq!(EdgeSet::range(3, 6).to_vec(), vec![3, 4, 5]);
        assert_eq!(EdgeSet::range(0, 2).shifted(10).to_vec(), vec![10, 11]);
        assert_eq!(EdgeSet::singleton(127).last(), Some(127));
    }
}
