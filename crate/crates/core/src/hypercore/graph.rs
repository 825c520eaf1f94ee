use super::{EdgeSet, HyperError, Hypergraph};

/// A simple graph: a hypergraph whose edges all have two vertices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    h: Hypergraph,
}

impl Graph {
    pub fn new<I: IntoIterator<Item = (usize, usize)>>(n: usize, edges: I) -> Result<Self, HyperError> {
        let mut pairs = Vec::new();
        for (u, v) in edges {
            if u == v {
                return Err(HyperError::NotAGraph(format!("loop at vertex {u}")));
            }
            pairs.push([u, v]);
        }
        Self::from_hypergraph(Hypergraph::new(n, pairs)?)
    }

    pub fn from_hypergraph(h: Hypergraph) -> Result<Self, HyperError> {
        if let Some(e) = h.edges().iter().find(|e| e.len() != 2) {
            return Err(HyperError::NotAGraph(format!("edge {e} has {} vertices", e.len())));
        }
        Ok(Graph { h })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.h.n()
    }

    /// Edges in canonical order; the position of an edge is its index in
    /// edge-indexed hypergraphs such as perfect matchings and stars.
    #[inline]
    pub fn edges(&self) -> &[EdgeSet] {
        self.h.edges()
    }

    pub fn edge_count(&self) -> usize {
        self.h.len()
    }

    pub fn as_hypergraph(&self) -> &Hypergraph {
        &self.h
    }

    pub fn into_hypergraph(self) -> Hypergraph {
        self.h
    }

    pub fn endpoints(&self, edge: usize) -> (usize, usize) {
        let e = self.h.edges()[edge];
        (e.first().unwrap(), e.last().unwrap())
    }

    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        let e: EdgeSet = [u, v].into_iter().collect();
        self.h.edges().binary_search(&e).ok()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.h.degree(v)
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n()).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// `Some(s)` when every vertex has degree `s`.
    pub fn regularity(&self) -> Option<usize> {
        let d0 = self.degree(0);
        (1..self.n()).all(|v| self.degree(v) == d0).then_some(d0)
    }

    pub fn neighbors(&self, v: usize) -> EdgeSet {
        self.h
            .edges()
            .iter()
            .filter(|e| e.contains(v))
            .fold(EdgeSet::EMPTY, |acc, e| acc.union(e.without(v)))
    }

    /// `|E(G[U])|`.
    pub fn induced_edge_count(&self, u: EdgeSet) -> usize {
        self.h.edges().iter().filter(|e| e.is_subset(u)).count()
    }

    /// Indices of edges incident to `v`.
    pub fn incident_edges(&self, v: usize) -> Vec<usize> {
        self.h
            .edges()
            .iter()
            .enumerate()
            .filter(|(_, e)| e.contains(v))
            .map(|(i, _)| i)
            .collect()
    }
}
