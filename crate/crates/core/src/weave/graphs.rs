use crate::hypercore::{EdgeSet, Graph, Hypergraph, MAX_VERTICES};
use crate::loom::{loom_closure_with, Loom, VerifyOptions};

use super::WeaveError;

/// Largest graph whose perfect matchings are enumerated.
pub const PM_MAX_VERTICES: usize = 32;

pub fn complete_graph(n: usize) -> Graph {
    Graph::new(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).expect("valid pairs")
}

/// `K_{n,n}` with sides `0..n` and `n..2n`.
pub fn complete_bipartite(n: usize) -> Graph {
    Graph::new(2 * n, (0..n).flat_map(|u| (0..n).map(move |v| (u, n + v)))).expect("valid pairs")
}

/// Outer 5-cycle `0..5`, inner pentagram `5..10`, spokes `i - (i+5)`.
pub fn petersen() -> Graph {
    let outer = (0..5).map(|i| (i, (i + 1) % 5));
    let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
    let spokes = (0..5).map(|i| (i, i + 5));
    Graph::new(10, outer.chain(inner).chain(spokes)).expect("valid pairs")
}

/// Replace every vertex `v` of degree `d` by a `d`-clique whose vertices
/// take over `v`'s edges one each (triangles for cubic graphs).
/// The copy of `v` attached to its `k`-th incident edge is `offset(v) + k`.
pub fn triangle_blowup(g: &Graph) -> Result<Graph, WeaveError> {
    let n = g.n();
    let mut offset = vec![0; n + 1];
    for v in 0..n {
        offset[v + 1] = offset[v] + g.degree(v);
    }
    let total = offset[n];
    if total > MAX_VERTICES {
        return Err(WeaveError::TooLarge(total, MAX_VERTICES));
    }
    let mut pairs = Vec::new();
    for v in 0..n {
        for i in offset[v]..offset[v + 1] {
            for j in i + 1..offset[v + 1] {
                pairs.push((i, j));
            }
        }
    }
    let incident: Vec<Vec<usize>> = (0..n).map(|v| g.incident_edges(v)).collect();
    for (idx, _) in g.edges().iter().enumerate() {
        let (u, v) = g.endpoints(idx);
        let ku = incident[u].iter().position(|&e| e == idx).unwrap();
        let kv = incident[v].iter().position(|&e| e == idx).unwrap();
        pairs.push((offset[u] + ku, offset[v] + kv));
    }
    Ok(Graph::new(total, pairs)?)
}

/// `PM(G)`: perfect matchings of `G` as sets of edge indices.
pub fn pm_hypergraph(g: &Graph) -> Result<Hypergraph, WeaveError> {
    if g.n() > PM_MAX_VERTICES {
        return Err(WeaveError::TooLarge(g.n(), PM_MAX_VERTICES));
    }
    if g.edge_count() > MAX_VERTICES {
        return Err(WeaveError::TooLarge(g.edge_count(), MAX_VERTICES));
    }
    let incident: Vec<Vec<usize>> = (0..g.n()).map(|v| g.incident_edges(v)).collect();
    let mut out = Vec::new();
    match_least(g, &incident, EdgeSet::full(g.n()), EdgeSet::EMPTY, &mut out);
    Ok(Hypergraph::from_sets(g.edge_count(), out)?)
}

/// Match the least unmatched vertex in every possible way.
fn match_least(g: &Graph, incident: &[Vec<usize>], open: EdgeSet, acc: EdgeSet, out: &mut Vec<EdgeSet>) {
    let Some(v) = open.first() else {
        out.push(acc);
        return;
    };
    for &e in &incident[v] {
        let pair = g.edges()[e];
        if pair.is_subset(open) {
            match_least(g, incident, open.difference(pair), acc.with(e), out);
        }
    }
}

/// `ST(G)`: the edge-index set of every vertex star.
pub fn star_hypergraph(g: &Graph) -> Result<Hypergraph, WeaveError> {
    if g.edge_count() > MAX_VERTICES {
        return Err(WeaveError::TooLarge(g.edge_count(), MAX_VERTICES));
    }
    let stars = (0..g.n()).map(|v| g.incident_edges(v).into_iter().collect::<EdgeSet>());
    Ok(Hypergraph::from_sets(g.edge_count(), stars)?)
}

/// `(PM(G), ST(G))` for a regular graph of even order.
pub fn graph_pair(g: &Graph) -> Result<(Hypergraph, Hypergraph), WeaveError> {
    if g.n() % 2 == 1 {
        return Err(WeaveError::OddOrder(g.n()));
    }
    if g.n() == 0 || g.regularity().is_none() {
        return Err(WeaveError::NotRegular);
    }
    Ok((pm_hypergraph(g)?, star_hypergraph(g)?))
}

/// `𝕃(G)`: the closure of `(PM(G), ST(G))`, an `(n/2, s)`-loom when it verifies.
pub fn graph_loom(g: &Graph) -> Result<Loom, WeaveError> {
    graph_loom_with(g, &VerifyOptions::default())
}

pub fn graph_loom_with(g: &Graph, opts: &VerifyOptions) -> Result<Loom, WeaveError> {
    let (pm, st) = graph_pair(g)?;
    loom_closure_with(&pm, &st, opts).map_err(|f| WeaveError::Closure(Box::new(f)))
}
