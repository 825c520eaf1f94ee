//! Canonical labeling of edge-colored hypergraphs.
//!
//! Colors are refined until stable (a vertex's new color is determined by its
//! old color and the multiset of color profiles of its incident edges), then
//! the first smallest non-singleton cell is individualized, one vertex at a
//! time. Every discrete leaf yields a relabeled edge list; the least one is the
//! canonical form. Two leaves with the same form give an automorphism, and
//! automorphisms fixing the current prefix pointwise prune sibling branches.

use serde::{Deserialize, Serialize};

use super::{EdgeSet, HyperError, Hypergraph};

/// A vertex permutation `old -> new` mapping one edge list onto another.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IsoCertificate {
    pub permutation: Vec<usize>,
}

impl IsoCertificate {
    pub fn identity(n: usize) -> Self {
        IsoCertificate { permutation: (0..n).collect() }
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.permutation.len()];
        for (old, &new) in self.permutation.iter().enumerate() {
            inv[new] = old;
        }
        IsoCertificate { permutation: inv }
    }

    /// `self` followed by `then`.
    pub fn then(&self, then: &IsoCertificate) -> Self {
        IsoCertificate {
            permutation: self.permutation.iter().map(|&v| then.permutation[v]).collect(),
        }
    }

    pub fn apply(&self, h: &Hypergraph) -> Result<Hypergraph, HyperError> {
        h.relabel(&self.permutation, h.n())
    }
}

/// Edges tagged with a small color; lets a pair `(A, B)` be labeled as one object.
pub type ColoredEdge = (u8, EdgeSet);

/// Canonical form of a colored edge multiset-free list over `0..n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    pub n: usize,
    /// Relabeled edges, sorted.
    pub edges: Vec<ColoredEdge>,
}

impl CanonicalForm {
    /// Stable byte encoding, suitable for hashing.
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(8 + self.edges.len() * 17);
        out.extend_from_slice(&(self.n as u64).to_le_bytes());
        for (c, e) in &self.edges {
            out.push(*c);
            out.extend_from_slice(&e.bits().to_le_bytes());
        }
        out
    }

    pub fn colored(&self, color: u8) -> impl Iterator<Item = EdgeSet> + '_ {
        self.edges.iter().filter(move |(c, _)| *c == color).map(|(_, e)| *e)
    }
}

struct Search<'a> {
    n: usize,
    edges: &'a [ColoredEdge],
    incident: Vec<Vec<usize>>,
    best: Option<(Vec<ColoredEdge>, Vec<usize>)>,
    automorphisms: Vec<Vec<usize>>,
}

/// Canonical form and the labeling `old -> new` that produces it.
pub fn canonical_labeling(n: usize, edges: &[ColoredEdge]) -> (CanonicalForm, IsoCertificate) {
    let mut incident = vec![Vec::new(); n];
    for (i, (_, e)) in edges.iter().enumerate() {
        for v in e.iter() {
            incident[v].push(i);
        }
    }
    let mut search = Search { n, edges, incident, best: None, automorphisms: Vec::new() };
    let colors = search.refine(vec![0; n]);
    search.descend(colors, &mut Vec::new());
    let (form, labeling) = search.best.expect("search visits at least one leaf");
    (CanonicalForm { n, edges: form }, IsoCertificate { permutation: labeling })
}

/// Canonical form of a plain hypergraph (all edges one color).
pub fn canonical_form(h: &Hypergraph) -> (Hypergraph, IsoCertificate) {
    let edges: Vec<ColoredEdge> = h.edges().iter().map(|&e| (0, e)).collect();
    let (form, cert) = canonical_labeling(h.n(), &edges);
    let canon = Hypergraph::from_valid(h.n(), form.edges.into_iter().map(|(_, e)| e).collect());
    (canon, cert)
}

/// A permutation carrying `h1` onto `h2`, if the two are isomorphic.
pub fn isomorphic(h1: &Hypergraph, h2: &Hypergraph) -> Option<IsoCertificate> {
    let e1: Vec<ColoredEdge> = h1.edges().iter().map(|&e| (0, e)).collect();
    let e2: Vec<ColoredEdge> = h2.edges().iter().map(|&e| (0, e)).collect();
    isomorphic_colored(h1.n(), &e1, h2.n(), &e2)
}

pub fn isomorphic_colored(
    n1: usize,
    e1: &[ColoredEdge],
    n2: usize,
    e2: &[ColoredEdge],
) -> Option<IsoCertificate> {
    if n1 != n2 || e1.len() != e2.len() {
        return None;
    }
    let (f1, c1) = canonical_labeling(n1, e1);
    let (f2, c2) = canonical_labeling(n2, e2);
    (f1 == f2).then(|| c1.then(&c2.inverse()))
}

impl Search<'_> {
    /// Refine a coloring to the coarsest stable one below it. Output colors
    /// are ranks `0..k`, ordered consistently with the input colors.
    fn refine(&self, mut colors: Vec<u32>) -> Vec<u32> {
        let mut classes = count_classes(&colors);
        loop {
            let edge_profile: Vec<(u8, Vec<u32>)> = self
                .edges
                .iter()
                .map(|(c, e)| {
                    let mut members: Vec<u32> = e.iter().map(|v| colors[v]).collect();
                    members.sort_unstable();
                    (*c, members)
                })
                .collect();
            let signatures: Vec<(u32, Vec<&(u8, Vec<u32>)>)> = (0..self.n)
                .map(|v| {
                    let mut prof: Vec<&(u8, Vec<u32>)> =
                        self.incident[v].iter().map(|&i| &edge_profile[i]).collect();
                    prof.sort_unstable();
                    (colors[v], prof)
                })
                .collect();
            let mut order: Vec<usize> = (0..self.n).collect();
            order.sort_by(|&a, &b| signatures[a].cmp(&signatures[b]));
            let mut next = vec![0u32; self.n];
            let mut rank = 0u32;
            for w in 0..order.len() {
                if w > 0 && signatures[order[w]] != signatures[order[w - 1]] {
                    rank += 1;
                }
                next[order[w]] = rank;
            }
            let new_classes = if self.n == 0 { 0 } else { rank as usize + 1 };
            colors = next;
            if new_classes == classes {
                return colors;
            }
            classes = new_classes;
        }
    }

    fn descend(&mut self, colors: Vec<u32>, prefix: &mut Vec<usize>) {
        let Some(cell) = target_cell(&colors) else {
            self.leaf(&colors);
            return;
        };
        let c = colors[cell[0]];
        let mut tried: Vec<usize> = Vec::new();
        for &v in &cell {
            if !tried.is_empty() && self.same_orbit(prefix, &tried, v) {
                continue;
            }
            tried.push(v);
            let individualized: Vec<u32> = colors
                .iter()
                .enumerate()
                .map(|(u, &cu)| {
                    if cu > c || (cu == c && u != v) {
                        cu + 1
                    } else {
                        cu
                    }
                })
                .collect();
            let refined = self.refine(individualized);
            prefix.push(v);
            self.descend(refined, prefix);
            prefix.pop();
        }
    }

    fn leaf(&mut self, colors: &[u32]) {
        let labeling: Vec<usize> = colors.iter().map(|&c| c as usize).collect();
        let mut form: Vec<ColoredEdge> =
            self.edges.iter().map(|&(c, e)| (c, e.map(&labeling))).collect();
        form.sort_unstable();
        match &self.best {
            None => self.best = Some((form, labeling)),
            Some((best, best_labeling)) => match form.cmp(best) {
                std::cmp::Ordering::Less => self.best = Some((form, labeling)),
                std::cmp::Ordering::Equal => {
                    // best_labeling^{-1} ∘ labeling is an automorphism
                    let mut inv = vec![0; self.n];
                    for (old, &new) in best_labeling.iter().enumerate() {
                        inv[new] = old;
                    }
                    let auto: Vec<usize> = labeling.iter().map(|&l| inv[l]).collect();
                    if auto.iter().enumerate().any(|(i, &j)| i != j) {
                        self.automorphisms.push(auto);
                    }
                }
                std::cmp::Ordering::Greater => {}
            },
        }
    }

    /// Whether `v` shares an orbit with an already tried vertex under the
    /// group generated by known automorphisms that fix `prefix` pointwise.
    fn same_orbit(&self, prefix: &[usize], tried: &[usize], v: usize) -> bool {
        let gens: Vec<&Vec<usize>> = self
            .automorphisms
            .iter()
            .filter(|a| prefix.iter().all(|&p| a[p] == p))
            .collect();
        if gens.is_empty() {
            return false;
        }
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for g in gens {
            for (i, &j) in g.iter().enumerate() {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[a] = b;
                }
            }
        }
        let root = find(&mut parent, v);
        tried.iter().any(|&t| find(&mut parent, t) == root)
    }
}

fn count_classes(colors: &[u32]) -> usize {
    let mut seen: Vec<u32> = colors.to_vec();
    seen.sort_unstable();
    seen.dedup();
    seen.len()
}

/// First smallest non-singleton cell, vertices ascending.
fn target_cell(colors: &[u32]) -> Option<Vec<usize>> {
    let k = colors.iter().copied().max().map_or(0, |m| m as usize + 1);
    let mut sizes = vec![0usize; k];
    for &c in colors {
        sizes[c as usize] += 1;
    }
    let (best, _) = sizes
        .iter()
        .enumerate()
        .filter(|(_, &s)| s > 1)
        .min_by_key(|&(c, &s)| (s, c))?;
    Some(
        colors
            .iter()
            .enumerate()
            .filter(|(_, &c)| c as usize == best)
            .map(|(v, _)| v)
            .collect(),
    )
}
