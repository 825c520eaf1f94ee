use std::collections::HashMap;

use crate::hypercore::{EdgeSet, HyperError, Hypergraph};

use super::search::cover_lower_bound;
use super::{tau, CoverError};

/// Call `f` on every `k`-subset of `set`, in increasing bit order.
pub(crate) fn for_each_subset<F: FnMut(EdgeSet)>(set: EdgeSet, k: usize, f: &mut F) {
    fn rec<F: FnMut(EdgeSet)>(pool: &[usize], k: usize, acc: EdgeSet, f: &mut F) {
        if k == 0 {
            f(acc);
            return;
        }
        for i in 0..=pool.len().saturating_sub(k) {
            if pool.len() < k {
                break;
            }
            rec(&pool[i + 1..], k - 1, acc.with(pool[i]), f);
        }
    }
    if k <= set.len() {
        rec(&set.to_vec(), k, EdgeSet::EMPTY, f);
    }
}

/// Shared branching for cover enumeration: pick a smallest open edge and try
/// each of its vertices, excluding the earlier siblings in later branches.
/// Each cover is reached along exactly one path.
struct CoverWalk<'a> {
    original: &'a [EdgeSet],
    universe: EdgeSet,
    /// `Some(k)`: covers of size exactly k; `None`: inclusion-minimal covers.
    size: Option<usize>,
    out: Vec<EdgeSet>,
}

impl CoverWalk<'_> {
    fn has_private_edges(&self, chosen: EdgeSet) -> bool {
        chosen.iter().all(|v| {
            self.original
                .iter()
                .any(|&e| e.contains(v) && e.intersection_len(chosen) == 1)
        })
    }

    fn walk(&mut self, chosen: EdgeSet, excluded: EdgeSet, open: &[EdgeSet]) {
        if self.size.is_none() && !self.has_private_edges(chosen) {
            return;
        }
        if open.is_empty() {
            match self.size {
                None => self.out.push(chosen),
                Some(k) => {
                    let free = self.universe.difference(chosen).difference(excluded);
                    for_each_subset(free, k - chosen.len(), &mut |extra| {
                        self.out.push(chosen.union(extra))
                    });
                }
            }
            return;
        }
        if let Some(k) = self.size {
            if chosen.len() + cover_lower_bound(open) > k {
                return;
            }
        }
        let e = *open.iter().min_by_key(|e| e.len()).unwrap();
        let mut ex = excluded;
        for v in e.iter() {
            let mut child = Vec::with_capacity(open.len());
            let mut feasible = true;
            for &f in open {
                if f.contains(v) {
                    continue;
                }
                let g = f.difference(ex);
                if g.is_empty() {
                    feasible = false;
                    break;
                }
                child.push(g);
            }
            if feasible {
                child.sort_unstable();
                child.dedup();
                self.walk(chosen.with(v), ex, &child);
            }
            ex.insert(v);
        }
    }
}

fn enumerate_component(edges: &[EdgeSet], universe: EdgeSet, size: Option<usize>) -> Vec<EdgeSet> {
    let mut walk = CoverWalk { original: edges, universe, size, out: Vec::new() };
    walk.walk(EdgeSet::EMPTY, EdgeSet::EMPTY, edges);
    walk.out
}

/// All inclusion-minimal covers of `h`.
///
/// Minimal covers never use isolated vertices, so the result is the product
/// of the minimal covers of the connected components.
pub fn minimal_covers(h: &Hypergraph) -> Result<Vec<EdgeSet>, CoverError> {
    if h.is_empty() {
        return Err(HyperError::EmptyHypergraph.into());
    }
    let mut acc = vec![EdgeSet::EMPTY];
    for comp in h.connected_components() {
        let part = enumerate_component(comp.hypergraph.edges(), comp.vertices, None);
        acc = acc
            .iter()
            .flat_map(|&a| part.iter().map(move |&b| a.union(b)))
            .collect();
    }
    acc.sort_unstable();
    Ok(acc)
}

/// `C_k(H)`, or the inclusion-minimal covers when `minimal_only` is set (`k` ignored).
///
/// Covers are found by propagation over edges sorted by size, per connected
/// component, and then combined with every choice of isolated vertices; the
/// k-subsets of the universe are never iterated. An empty `h` yields every
/// k-subset; the empty set is never emitted as an edge.
pub fn covers_of_size(h: &Hypergraph, k: usize, minimal_only: bool) -> Result<Hypergraph, CoverError> {
    let n = h.n();
    if minimal_only {
        let all = minimal_covers(h)?;
        return Ok(Hypergraph::from_valid(n, all.into_iter().filter(|c| !c.is_empty()).collect()));
    }
    if k == 0 || k > n {
        return Ok(Hypergraph::from_valid(n, Vec::new()));
    }
    let comps = h.connected_components();
    let free = h.universe().difference(h.support());
    let mut lower = Vec::with_capacity(comps.len());
    for c in &comps {
        lower.push(tau(&c.hypergraph, None)?.value);
    }
    let mut cache: HashMap<(usize, usize), Vec<EdgeSet>> = HashMap::new();
    let mut out = Vec::new();
    distribute(&comps, &lower, free, 0, k, EdgeSet::EMPTY, &mut cache, &mut out);
    Ok(Hypergraph::from_valid(n, out))
}

#[allow(clippy::too_many_arguments)]
fn distribute(
    comps: &[crate::hypercore::Component],
    lower: &[usize],
    free: EdgeSet,
    i: usize,
    budget: usize,
    acc: EdgeSet,
    cache: &mut HashMap<(usize, usize), Vec<EdgeSet>>,
    out: &mut Vec<EdgeSet>,
) {
    if i == comps.len() {
        if budget <= free.len() {
            for_each_subset(free, budget, &mut |extra| out.push(acc.union(extra)));
        }
        return;
    }
    let rest_min: usize = lower[i + 1..].iter().sum();
    let size = comps[i].vertices.len();
    if budget < lower[i] + rest_min {
        return;
    }
    for ki in lower[i]..=size.min(budget - rest_min) {
        let part = cache
            .entry((i, ki))
            .or_insert_with(|| {
                enumerate_component(comps[i].hypergraph.edges(), comps[i].vertices, Some(ki))
            })
            .clone();
        for c in part {
            distribute(comps, lower, free, i + 1, budget - ki, acc.union(c), cache, out);
        }
    }
}

/// `H^⊥` restricted to sets of at most `max_size` vertices.
///
/// Members are subsets of the support meeting every edge in exactly one
/// vertex; isolated vertices are never added.
pub fn perp(h: &Hypergraph, max_size: usize) -> Vec<EdgeSet> {
    perp_limited(h, max_size, usize::MAX)
}

/// As [`perp`], stopping after `limit` members.
pub fn perp_limited(h: &Hypergraph, max_size: usize, limit: usize) -> Vec<EdgeSet> {
    let mut reach = vec![EdgeSet::EMPTY; h.n()];
    for &e in h.edges() {
        for v in e.iter() {
            reach[v] = reach[v].union(e);
        }
    }
    let mut out = Vec::new();
    if limit > 0 {
        exact_hits(h.edges(), &reach, EdgeSet::EMPTY, EdgeSet::EMPTY, max_size, limit, &mut out);
    }
    out.sort_unstable();
    out
}

fn exact_hits(
    open: &[EdgeSet],
    reach: &[EdgeSet],
    chosen: EdgeSet,
    forbidden: EdgeSet,
    max_size: usize,
    limit: usize,
    out: &mut Vec<EdgeSet>,
) {
    if out.len() >= limit {
        return;
    }
    if open.is_empty() {
        out.push(chosen);
        return;
    }
    if chosen.len() >= max_size {
        return;
    }
    let e = *open
        .iter()
        .min_by_key(|e| e.difference(forbidden).len())
        .unwrap();
    for v in e.difference(forbidden).iter() {
        let child: Vec<EdgeSet> = open.iter().copied().filter(|f| !f.contains(v)).collect();
        // every vertex sharing an edge with v is now off limits
        exact_hits(&child, reach, chosen.with(v), forbidden.union(reach[v]), max_size, limit, out);
    }
}

/// A set meeting every edge in exactly one vertex, if one exists.
pub fn is_pinnable(h: &Hypergraph) -> Option<EdgeSet> {
    perp_limited(h, h.n(), 1).into_iter().next()
}
