use serde::{Deserialize, Serialize};

use super::{EdgeSet, HyperError, MAX_VERTICES};

/// A finite hypergraph over the vertex universe `0..n`.
///
/// Edges are nonempty, deduplicated and kept sorted by [`EdgeSet`]'s order.
/// Vertices of the universe need not be covered by an edge; see
/// [`Hypergraph::is_grounded`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "HypergraphJson", into = "HypergraphJson")]
pub struct Hypergraph {
    n: usize,
    edges: Vec<EdgeSet>,
    labels: Option<Vec<String>>,
}

/// Wire format: 0-based vertex lists.
#[derive(Serialize, Deserialize)]
struct HypergraphJson {
    n: usize,
    edges: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
}

impl TryFrom<HypergraphJson> for Hypergraph {
    type Error = HyperError;
    fn try_from(raw: HypergraphJson) -> Result<Self, HyperError> {
        let h = Hypergraph::new(raw.n, raw.edges)?;
        match raw.labels {
            Some(labels) => h.with_labels(labels),
            None => Ok(h),
        }
    }
}

impl From<Hypergraph> for HypergraphJson {
    fn from(h: Hypergraph) -> Self {
        HypergraphJson {
            n: h.n,
            edges: h.edges.iter().map(|e| e.to_vec()).collect(),
            labels: h.labels,
        }
    }
}

/// Outcome of [`Hypergraph::restrict`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Restriction {
    pub hypergraph: Hypergraph,
    /// Number of edges whose trace on the target set was empty.
    pub dropped: usize,
}

/// One connected component of a hypergraph's 1-skeleton.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub vertices: EdgeSet,
    /// Edges of the component, over the original universe.
    pub hypergraph: Hypergraph,
}

fn check_universe(n: usize) -> Result<(), HyperError> {
    if n > MAX_VERTICES {
        Err(HyperError::TooManyVertices(n))
    } else {
        Ok(())
    }
}

impl Hypergraph {
    /// Build from vertex-index lists, deduplicating and sorting the edges.
    pub fn new<I, E>(n: usize, edges: I) -> Result<Self, HyperError>
    where
        I: IntoIterator<Item = E>,
        E: IntoIterator<Item = usize>,
    {
        check_universe(n)?;
        let mut sets = Vec::new();
        for edge in edges {
            let mut s = EdgeSet::EMPTY;
            for v in edge {
                if v >= n {
                    return Err(HyperError::IndexOutOfRange { vertex: v, n });
                }
                s.insert(v);
            }
            sets.push(s);
        }
        Self::from_sets(n, sets)
    }

    /// Build from bitsets, deduplicating and sorting the edges.
    pub fn from_sets<I: IntoIterator<Item = EdgeSet>>(n: usize, edges: I) -> Result<Self, HyperError> {
        check_universe(n)?;
        let universe = EdgeSet::full(n);
        let mut edges: Vec<EdgeSet> = edges.into_iter().collect();
        for e in &edges {
            if e.is_empty() {
                return Err(HyperError::EmptyEdge);
            }
            if !e.is_subset(universe) {
                let vertex = e.difference(universe).first().unwrap_or(n);
                return Err(HyperError::IndexOutOfRange { vertex, n });
            }
        }
        edges.sort_unstable();
        edges.dedup();
        Ok(Hypergraph { n, edges, labels: None })
    }

    /// Internal constructor for edge lists already known to be valid; sorts and dedups.
    pub(crate) fn from_valid(n: usize, mut edges: Vec<EdgeSet>) -> Self {
        debug_assert!(n <= MAX_VERTICES);
        debug_assert!(edges.iter().all(|e| !e.is_empty() && e.is_subset(EdgeSet::full(n))));
        edges.sort_unstable();
        edges.dedup();
        Hypergraph { n, edges, labels: None }
    }

    pub fn empty(n: usize) -> Result<Self, HyperError> {
        check_universe(n)?;
        Ok(Hypergraph { n, edges: Vec::new(), labels: None })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self, HyperError> {
        if labels.len() != self.n {
            return Err(HyperError::UniverseMismatch(labels.len(), self.n));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn edges(&self) -> &[EdgeSet] {
        &self.edges
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn universe(&self) -> EdgeSet {
        EdgeSet::full(self.n)
    }

    pub fn contains_edge(&self, e: EdgeSet) -> bool {
        self.edges.binary_search(&e).is_ok()
    }

    /// Union of all edges, `V(H)` in the set-theoretic sense.
    pub fn support(&self) -> EdgeSet {
        self.edges.iter().fold(EdgeSet::EMPTY, |acc, &e| acc.union(e))
    }

    /// Every vertex of the universe lies in some edge.
    pub fn is_grounded(&self) -> bool {
        self.support() == self.universe()
    }

    pub fn max_edge_size(&self) -> usize {
        self.edges.iter().map(|e| e.len()).max().unwrap_or(0)
    }

    pub fn min_edge_size(&self) -> usize {
        self.edges.iter().map(|e| e.len()).min().unwrap_or(0)
    }

    /// `Some(r)` when every edge has exactly `r` vertices.
    pub fn uniformity(&self) -> Result<Option<usize>, HyperError> {
        let first = self.edges.first().ok_or(HyperError::EmptyHypergraph)?.len();
        Ok(self.edges.iter().all(|e| e.len() == first).then_some(first))
    }

    /// Whether `cover` meets every edge.
    pub fn is_cover(&self, cover: EdgeSet) -> bool {
        self.edges.iter().all(|e| e.meets(cover))
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e.contains(v)).count()
    }

    /// Edges containing `v`.
    pub fn star(&self, v: usize) -> Result<Hypergraph, HyperError> {
        if v >= self.n {
            return Err(HyperError::IndexOutOfRange { vertex: v, n: self.n });
        }
        Ok(Hypergraph {
            n: self.n,
            edges: self.edges.iter().copied().filter(|e| e.contains(v)).collect(),
            labels: self.labels.clone(),
        })
    }

    /// Edge family union over a shared universe.
    pub fn union(&self, other: &Hypergraph) -> Result<Hypergraph, HyperError> {
        if self.n != other.n {
            return Err(HyperError::UniverseMismatch(self.n, other.n));
        }
        let mut edges = self.edges.clone();
        edges.extend_from_slice(&other.edges);
        Ok(Hypergraph::from_valid(self.n, edges))
    }

    /// Traces `{e ∩ t}` of all edges on `t`; empty traces are dropped and counted.
    pub fn restrict(&self, t: EdgeSet) -> Restriction {
        let mut dropped = 0;
        let mut edges = Vec::with_capacity(self.edges.len());
        for &e in &self.edges {
            let trace = e.intersection(t);
            if trace.is_empty() {
                dropped += 1;
            } else {
                edges.push(trace);
            }
        }
        Restriction {
            hypergraph: Hypergraph {
                labels: self.labels.clone(),
                ..Hypergraph::from_valid(self.n, edges)
            },
            dropped,
        }
    }

    /// Keep the edges satisfying `keep`.
    pub fn filter<F: FnMut(EdgeSet) -> bool>(&self, mut keep: F) -> Hypergraph {
        Hypergraph {
            n: self.n,
            edges: self.edges.iter().copied().filter(|&e| keep(e)).collect(),
            labels: self.labels.clone(),
        }
    }

    /// Connected components of the 1-skeleton, ordered by their least vertex.
    pub fn connected_components(&self) -> Vec<Component> {
        component_masks(&self.edges)
            .into_iter()
            .map(|vertices| Component {
                vertices,
                hypergraph: self.filter(|e| e.is_subset(vertices)),
            })
            .collect()
    }

    pub fn is_connected(&self) -> bool {
        component_masks(&self.edges).len() <= 1
    }

    /// Apply a vertex map `old -> new` into a universe of `new_n` vertices.
    pub fn relabel(&self, perm: &[usize], new_n: usize) -> Result<Hypergraph, HyperError> {
        check_universe(new_n)?;
        if perm.len() < self.n {
            return Err(HyperError::UniverseMismatch(perm.len(), self.n));
        }
        if let Some(&bad) = perm[..self.n].iter().find(|&&p| p >= new_n) {
            return Err(HyperError::IndexOutOfRange { vertex: bad, n: new_n });
        }
        Ok(Hypergraph::from_valid(new_n, self.edges.iter().map(|e| e.map(perm)).collect()))
    }

    /// Embed into a universe of `new_n` vertices, shifting every vertex by `offset`.
    pub fn shifted(&self, offset: usize, new_n: usize) -> Result<Hypergraph, HyperError> {
        if offset + self.n > new_n {
            return Err(HyperError::IndexOutOfRange { vertex: offset + self.n - 1, n: new_n });
        }
        check_universe(new_n)?;
        Ok(Hypergraph {
            n: new_n,
            edges: self.edges.iter().map(|e| e.shifted(offset)).collect(),
            labels: None,
        })
    }

    /// Re-index onto `0..|keep|` by rank within `keep`. Edges must lie inside `keep`.
    /// Returns the compacted hypergraph and the map `new -> old`.
    pub fn compact(&self, keep: EdgeSet) -> Result<(Hypergraph, Vec<usize>), HyperError> {
        let old_of_new: Vec<usize> = keep.iter().collect();
        let mut new_of_old = vec![usize::MAX; self.n.max(keep.last().map_or(0, |m| m + 1))];
        for (i, &v) in old_of_new.iter().enumerate() {
            new_of_old[v] = i;
        }
        let mut edges = Vec::with_capacity(self.edges.len());
        for &e in &self.edges {
            if !e.is_subset(keep) {
                let vertex = e.difference(keep).first().unwrap_or(0);
                return Err(HyperError::IndexOutOfRange { vertex, n: old_of_new.len() });
            }
            edges.push(e.map(&new_of_old));
        }
        Ok((Hypergraph::from_valid(old_of_new.len(), edges), old_of_new))
    }

    /// Partition into `r` sides met exactly once by every edge, if one exists.
    ///
    /// Vertices outside the support are placed in the first side.
    pub fn r_partition(&self) -> Result<Option<Vec<EdgeSet>>, HyperError> {
        let r = self.uniformity()?.ok_or(HyperError::NotUniform)?;
        let mut side = vec![usize::MAX; self.n];
        let order: Vec<usize> = self.support().iter().collect();
        // Fix the first edge to sides 0..r to quotient out side permutations.
        for (i, v) in self.edges[0].iter().enumerate() {
            side[v] = i;
        }
        let incident: Vec<Vec<EdgeSet>> = (0..self.n)
            .map(|v| self.edges.iter().copied().filter(|e| e.contains(v)).collect())
            .collect();
        if !color_sides(&order, 0, r, &incident, &mut side) {
            return Ok(None);
        }
        let mut sides = vec![EdgeSet::EMPTY; r];
        for v in 0..self.n {
            let s = if side[v] == usize::MAX { 0 } else { side[v] };
            sides[s].insert(v);
        }
        Ok(Some(sides))
    }
}

fn color_sides(
    order: &[usize],
    idx: usize,
    r: usize,
    incident: &[Vec<EdgeSet>],
    side: &mut [usize],
) -> bool {
    let Some(&v) = order.get(idx) else {
        return true;
    };
    if side[v] != usize::MAX {
        return color_sides(order, idx + 1, r, incident, side);
    }
    for c in 0..r {
        let clash = incident[v]
            .iter()
            .any(|e| e.iter().any(|u| u != v && side[u] == c));
        if clash {
            continue;
        }
        side[v] = c;
        if color_sides(order, idx + 1, r, incident, side) {
            return true;
        }
    }
    side[v] = usize::MAX;
    false
}

/// Vertex masks of the 1-skeleton components spanned by `edges`.
pub(crate) fn component_masks(edges: &[EdgeSet]) -> Vec<EdgeSet> {
    // Components stay pairwise disjoint, so one absorbing pass per edge suffices.
    let mut comps: Vec<EdgeSet> = Vec::new();
    for &e in edges {
        let mut merged = e;
        comps.retain(|&c| {
            if c.meets(merged) {
                merged = merged.union(c);
                false
            } else {
                true
            }
        });
        comps.push(merged);
    }
    comps.sort_by_key(|c| c.first());
    comps
}

/// First pair `(a, b)` with `|a ∩ b| != 1`, if any.
pub fn orthogonality_violation(
    a: &Hypergraph,
    b: &Hypergraph,
) -> Result<Option<(EdgeSet, EdgeSet)>, HyperError> {
    if a.n() != b.n() {
        return Err(HyperError::UniverseMismatch(a.n(), b.n()));
    }
    for &x in a.edges() {
        for &y in b.edges() {
            if x.intersection_len(y) != 1 {
                return Ok(Some((x, y)));
            }
        }
    }
    Ok(None)
}

/// `|a ∩ b| = 1` for all `a ∈ A`, `b ∈ B`.
pub fn is_orthogonal(a: &Hypergraph, b: &Hypergraph) -> Result<bool, HyperError> {
    Ok(orthogonality_violation(a, b)?.is_none())
}

/// Every edge of `a` meets every edge of `b`.
pub fn is_cross_intersecting(a: &Hypergraph, b: &Hypergraph) -> bool {
    a.edges().iter().all(|&x| b.edges().iter().all(|&y| x.meets(y)))
}

/// `{a ∪ c : a ∈ A, c ∈ C}` for hypergraphs with disjoint supports over one universe.
pub fn join(a: &Hypergraph, c: &Hypergraph) -> Result<Hypergraph, HyperError> {
    if a.n() != c.n() {
        return Err(HyperError::UniverseMismatch(a.n(), c.n()));
    }
    let overlap = a.support().intersection(c.support());
    if !overlap.is_empty() {
        return Err(HyperError::UniverseOverlap(overlap));
    }
    let mut edges = Vec::with_capacity(a.len() * c.len());
    for &x in a.edges() {
        for &y in c.edges() {
            edges.push(x.union(y));
        }
    }
    Ok(Hypergraph::from_valid(a.n(), edges))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(n: usize, edges: &[&[usize]]) -> Hypergraph {
        Hypergraph::new(n, edges.iter().map(|e| e.iter().copied())).unwrap()
    }

    #[test]
    fn dedup_and_sort() {
        let g = h(3, &[&[0, 1], &[0, 1], &[1, 2]]);
        assert_eq!(g.len(), 2);
        let vane = h(9, &[&[0, 3, 6], &[1, 4, 7], &[2, 5, 8], &[0, 4, 8], &[0, 4, 7], &[1, 3, 6], &[1, 4, 8], &[2, 5, 7]]);
        assert_eq!(vane.len(), 8);
        assert_eq!(vane.uniformity().unwrap(), Some(3));
    }

    #[test]
    fn construction_errors() {
        assert_eq!(
            Hypergraph::new(2, [vec![0, 2]]).unwrap_err(),
            HyperError::IndexOutOfRange { vertex: 2, n: 2 }
        );
        assert_eq!(Hypergraph::new(2, [Vec::<usize>::new()]).unwrap_err(), HyperError::EmptyEdge);
        assert_eq!(Hypergraph::empty(200).unwrap_err(), HyperError::TooManyVertices(200));
        assert_eq!(Hypergraph::empty(3).unwrap().uniformity(), Err(HyperError::EmptyHypergraph));
    }

    #[test]
    fn mixed_sizes_not_uniform() {
        assert_eq!(h(2, &[&[0], &[0, 1]]).uniformity().unwrap(), None);
    }

    #[test]
    fn orthogonality_witness() {
        let a = h(2, &[&[0, 1]]);
        assert_eq!(
            orthogonality_violation(&a, &a).unwrap(),
            Some((a.edges()[0], a.edges()[0]))
        );
        let b = h(3, &[&[0]]);
        assert!(orthogonality_violation(&a, &b).is_err());
    }

    #[test]
    fn join_and_overlap() {
        let a = h(2, &[&[0]]);
        let c = h(2, &[&[1]]);
        assert_eq!(join(&a, &c).unwrap(), h(2, &[&[0, 1]]));
        assert!(matches!(join(&a, &a), Err(HyperError::UniverseOverlap(_))));
    }

    #[test]
    fn restrict_drops_empty_traces() {
        let g = h(4, &[&[0, 1], &[2, 3]]);
        let r = g.restrict([0, 1].into_iter().collect());
        assert_eq!(r.hypergraph, h(4, &[&[0, 1]]));
        assert_eq!(r.dropped, 1);
        assert_eq!(g.restrict(g.universe()).hypergraph, g);
    }

    #[test]
    fn components_partition_edges() {
        let g = h(7, &[&[0, 1], &[2, 3], &[1, 4], &[3, 5]]);
        let comps = g.connected_components();
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[0].vertices.to_vec(), vec![0, 1, 4]);
        assert_eq!(comps[1].vertices.to_vec(), vec![2, 3, 5]);
        // late merge: the last edge bridges two earlier components
        let g = h(4, &[&[0, 1], &[2, 3], &[1, 2]]);
        assert_eq!(g.connected_components().len(), 1);
        assert!(h(3, &[&[0, 1, 2]]).is_connected());
    }

    #[test]
    fn star_of_triangle_vertex() {
        let tri = h(3, &[&[0, 1], &[1, 2], &[0, 2]]);
        assert_eq!(tri.star(0).unwrap().len(), 2);
        assert!(tri.star(3).is_err());
    }

    #[test]
    fn r_partite_examples() {
        // rows and columns of the 3x3 grid: the three "diagonal" classes are sides
        let grid = h(9, &[&[0, 1, 2], &[3, 4, 5], &[6, 7, 8], &[0, 3, 6], &[1, 4, 7], &[2, 5, 8]]);
        let sides = grid.r_partition().unwrap().expect("grid is 3-partite");
        for e in grid.edges() {
            assert!(sides.iter().all(|s| s.intersection_len(*e) == 1));
        }
        assert!(h(4, &[&[0, 1, 2, 3]]).r_partition().unwrap().is_some());
        let fano = h(7, &[&[0, 1, 2], &[0, 3, 4], &[0, 5, 6], &[1, 3, 5], &[1, 4, 6], &[2, 3, 6], &[2, 4, 5]]);
        assert_eq!(fano.r_partition().unwrap(), None);
        assert_eq!(h(2, &[&[0], &[0, 1]]).r_partition(), Err(HyperError::NotUniform));
    }

    #[test]
    fn json_round_trip() {
        let g = h(3, &[&[0, 1], &[2]]);
        let s = serde_json::to_string(&g).unwrap();
        assert_eq!(s, r#"{"n":3,"edges":[[2],[0,1]]}"#);
        let back: Hypergraph = serde_json::from_str(&s).unwrap();
        assert_eq!(back, g);
        assert!(serde_json::from_str::<Hypergraph>(r#"{"n":1,"edges":[[1]]}"#).is_err());
    }
}
