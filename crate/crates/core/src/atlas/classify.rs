use std::collections::BTreeMap;
use std::time::Instant;

use sha2::{Digest, Sha256};

use crate::covers::nu;
use crate::hypercore::{canonical_labeling, isomorphic_colored, EdgeSet, Hypergraph};
use crate::loom::{verify_loom, Loom};
use crate::weave::{decompose, r2_loom, Decomposition};

use super::galois::{Bits, Galois};
use super::{AtlasError, ClassEntry, ClassificationResult, SearchStats};

fn k_subsets(n: usize, k: usize) -> Vec<EdgeSet> {
    let mut out = Vec::new();
    crate::covers::for_each_subset(EdgeSet::full(n), k, &mut |s| out.push(s));
    out.sort();
    out
}

fn colored(a: &Hypergraph, b: &Hypergraph) -> Vec<(u8, EdgeSet)> {
    a.edges().iter().map(|&e| (0, e)).chain(b.edges().iter().map(|&e| (1, e))).collect()
}

fn pick(items: &[EdgeSet], x: &Bits) -> Vec<EdgeSet> {
    x.iter().map(|i| items[i]).collect()
}

fn orthogonal(a: &[EdgeSet], b: &[EdgeSet]) -> bool {
    a.iter().all(|&x| b.iter().all(|&y| x.intersection_len(y) == 1))
}

struct Collector {
    n: usize,
    classes: BTreeMap<Vec<u8>, (Loom, u64)>,
    looms: u64,
    rejected: u64,
}

impl Collector {
    fn new(n: usize) -> Self {
        Collector { n, classes: BTreeMap::new(), looms: 0, rejected: 0 }
    }

    /// Verify a candidate pair and file it under its canonical form.
    fn offer(&mut self, a: Vec<EdgeSet>, b: Vec<EdgeSet>) -> Result<(), AtlasError> {
        let a = Hypergraph::from_sets(self.n, a)?;
        let b = Hypergraph::from_sets(self.n, b)?;
        if verify_loom(&a, &b).is_err() {
            self.rejected += 1;
            return Ok(());
        }
        self.looms += 1;
        let (form, _) = canonical_labeling(self.n, &colored(&a, &b));
        let key = form.to_bytes();
        if let Some((_, hits)) = self.classes.get_mut(&key) {
            *hits += 1;
            return Ok(());
        }
        let ca = Hypergraph::from_sets(self.n, form.colored(0))?;
        let cb = Hypergraph::from_sets(self.n, form.colored(1))?;
        let loom = verify_loom(&ca, &cb).map_err(|r| AtlasError::Verification(Box::new(r)))?;
        self.classes.insert(key, (loom, 1));
        Ok(())
    }

    fn finish(self, kind: &str, r: usize, s: usize, stats: SearchStats) -> Result<ClassificationResult, AtlasError> {
        let mut classes = Vec::with_capacity(self.classes.len());
        for (key, (loom, hits)) in self.classes {
            let d = decompose(&loom)?;
            let factors = match &d {
                Decomposition::Compose1(c) | Decomposition::Compose2(c) => c.len(),
                Decomposition::Leaf { .. } => 1,
            };
            classes.push(ClassEntry {
                key: hex::encode(Sha256::digest(&key)),
                decomposable: !d.is_indecomposable(),
                top_factors: factors,
                hits,
                loom,
                blocks: None,
            });
        }
        for (i, x) in classes.iter().enumerate() {
            for y in &classes[i + 1..] {
                let (ex, ey) = (colored(x.loom.a(), x.loom.b()), colored(y.loom.a(), y.loom.b()));
                if isomorphic_colored(x.loom.n(), &ex, y.loom.n(), &ey).is_some() {
                    return Err(AtlasError::Internal(format!("classes {} and {} are isomorphic", x.key, y.key)));
                }
            }
        }
        let decomposable_count = classes.iter().filter(|c| c.decomposable).count();
        Ok(ClassificationResult {
            kind: kind.to_string(),
            r,
            s,
            indecomposable_count: classes.len() - decomposable_count,
            decomposable_count,
            classes,
            stats: SearchStats { looms: self.looms, rejected: self.rejected, ..stats },
            property_failures: Vec::new(),
        })
    }
}

#[derive(Clone, Debug, Default)]
pub struct ClassifyOptions {
    /// Cap on closed sets visited.
    pub budget: Option<u64>,
}

/// All `(3,3)`-looms up to isomorphism.
///
/// Every `(3,3)`-loom lives on 9 vertices with perfect matchings in both
/// components, so after relabeling `A` contains the columns `M` and `B` the
/// rows `N` of the 3×3 grid. Then `A ⊆ C₃(N)`, the 27 row transversals, and
/// `A = C₃(C₃(A))`: the search runs over closed sets of the triple-meets-triple
/// connection restricted to row transversals, seeded with `M`.
pub fn classify_33_looms(opts: &ClassifyOptions) -> Result<ClassificationResult, AtlasError> {
    let start = Instant::now();
    let rows: Vec<EdgeSet> = (0..3).map(|i| EdgeSet::range(3 * i, 3 * i + 3)).collect();
    let cols: Vec<EdgeSet> = (0..3).map(|j| [j, j + 3, j + 6].into_iter().collect()).collect();
    let transversals: Vec<EdgeSet> = k_subsets(9, 3)
        .into_iter()
        .filter(|t| rows.iter().all(|&r| t.intersection_len(r) == 1))
        .collect();
    let g = Galois::new(transversals, k_subsets(9, 3));
    let seed = cols
        .iter()
        .map(|c| g.left.iter().position(|t| t == c).expect("columns are transversals"))
        .fold(Bits::default(), |b, i| b.with(i));
    let keep = |x: &Bits| orthogonal(&pick(&g.left, x), &pick(&g.right, &g.up(x)));
    let (found, closed) = g
        .closed_sets(&seed, opts.budget, keep)
        .map_err(|nodes| AtlasError::BudgetExceeded { nodes })?;
    let mut col = Collector::new(9);
    for x in &found {
        col.offer(pick(&g.left, x), pick(&g.right, &g.up(x)))?;
    }
    let stats = SearchStats { closed_sets: closed, candidates: found.len() as u64, wall: start.elapsed(), ..Default::default() };
    let mut res = col.finish("33", 3, 3, stats)?;
    for c in &res.classes {
        res.property_failures.extend(check_33(&c.loom).into_iter().map(|m| format!("{}: {m}", c.key)));
    }
    Ok(res)
}

/// The three equivalent structural conditions of a `(3,3)`-loom.
fn check_33(l: &Loom) -> Vec<String> {
    let mut bad = Vec::new();
    if l.vertices().len() != 9 {
        bad.push(format!("|V| = {}", l.vertices().len()));
    }
    for (name, h) in [("A", l.a()), ("B", l.b())] {
        match nu(h, None) {
            Ok(c) if c.value == 3 => {}
            Ok(c) => bad.push(format!("nu({name}) = {}", c.value)),
            Err(e) => bad.push(format!("nu({name}): {e}")),
        }
        let v = l.vertices();
        for (i, &e) in h.edges().iter().enumerate() {
            for &f in &h.edges()[i + 1..] {
                if e.is_disjoint(f) && !h.contains_edge(v.difference(e.union(f))) {
                    bad.push(format!("{name}: complement of {e} and {f} is missing"));
                }
            }
        }
    }
    bad
}

/// All `(r,2)`-looms on `2r` vertices up to isomorphism, by exhaustive search
/// over closed graphs `B = C₂(C_r(B))` on `0..2r`.
///
/// Any edge `a` of `A` meets every edge of `B` once, so `B` is bipartite with
/// sides `a` and `V∖a` of size `r` each; `τ(B) = r` and König give a perfect
/// matching. Up to relabeling `B` contains `{0,1},{2,3},…`, which seeds the search.
pub fn enumerate_r2_looms(r: usize, max_classes: Option<usize>) -> Result<ClassificationResult, AtlasError> {
    if r == 0 || r > 5 {
        return Err(AtlasError::TooLarge(format!("(r,2)-loom enumeration needs 1 <= r <= 5, got {r}")));
    }
    let start = Instant::now();
    let n = 2 * r;
    let g = Galois::new(k_subsets(n, 2), k_subsets(n, r));
    let full = EdgeSet::full(n);
    let keep = |x: &Bits| {
        let b = pick(&g.left, x);
        let a = pick(&g.right, &g.up(x));
        let support = b.iter().fold(EdgeSet::EMPTY, |s, &e| s.union(e));
        support == full && !a.is_empty() && orthogonal(&a, &b)
    };
    let seed = (0..r)
        .map(|i| g.left.iter().position(|&e| e == EdgeSet::from_iter([2 * i, 2 * i + 1])).expect("pair"))
        .fold(Bits::default(), |b, i| b.with(i));
    let (found, closed) = g
        .closed_sets(&seed, None, keep)
        .map_err(|nodes| AtlasError::BudgetExceeded { nodes })?;
    let mut col = Collector::new(n);
    for x in &found {
        col.offer(pick(&g.right, &g.up(x)), pick(&g.left, x))?;
        if max_classes.is_some_and(|m| col.classes.len() > m) {
            return Err(AtlasError::TooManyClasses(col.classes.len()));
        }
    }
    let stats = SearchStats { closed_sets: closed, candidates: found.len() as u64, wall: start.elapsed(), ..Default::default() };
    let mut res = col.finish("r2", r, 2, stats)?;
    for c in &mut res.classes {
        match r2_blocks(&c.loom) {
            Ok(q) => c.blocks = Some(q),
            Err(m) => res.property_failures.push(format!("{}: {m}", c.key)),
        }
    }
    Ok(res)
}

/// Block sizes `q_i` when the loom is `(𝕍_{q₁}⊠₂𝕍_{q₁}) ⊠₁ … ⊠₁ (𝕍_{q_t}⊠₂𝕍_{q_t})`.
fn r2_blocks(l: &Loom) -> Result<Vec<usize>, String> {
    let mut q = Vec::new();
    for comp in l.b().connected_components() {
        let w = comp.vertices;
        let (b, _) = comp.hypergraph.compact(w).map_err(|e| e.to_string())?;
        let (a, _) = l.a().restrict(w).hypergraph.compact(w).map_err(|e| e.to_string())?;
        if w.len() % 2 == 1 {
            return Err(format!("component {w} has odd order"));
        }
        let block = r2_loom(&[w.len() / 2]).map_err(|e| e.to_string())?;
        if isomorphic_colored(w.len(), &colored(&a, &b), block.n(), &colored(block.a(), block.b())).is_none() {
            return Err(format!("component {w} is not V_q 2-composed with V_q"));
        }
        q.push(w.len() / 2);
    }
    if q.iter().sum::<usize>() != l.r() {
        return Err("block sizes do not sum to r".into());
    }
    q.sort_unstable_by(|x, y| y.cmp(x));
    Ok(q)
}
