use crate::hypercore::{component_masks, EdgeSet, HyperError, Hypergraph};

use super::{CoverError, IntCertificate, Quantity, DEFAULT_BUDGET};

struct Exhausted;

struct Counter {
    nodes: u64,
    budget: u64,
    depth: usize,
}

impl Counter {
    fn new(budget: Option<u64>) -> Self {
        Counter { nodes: 0, budget: budget.unwrap_or(DEFAULT_BUDGET), depth: 0 }
    }

    #[inline]
    fn tick(&mut self, depth: usize) -> Result<(), Exhausted> {
        self.nodes += 1;
        self.depth = self.depth.max(depth);
        if self.nodes > self.budget {
            Err(Exhausted)
        } else {
            Ok(())
        }
    }
}

/// Lower bound on any cover: a greedy disjoint packing, or the edge count
/// over the largest degree, whichever is larger.
pub(crate) fn cover_lower_bound(edges: &[EdgeSet]) -> usize {
    let mut used = EdgeSet::EMPTY;
    let mut packing = 0;
    let mut degree = [0u32; 128];
    for &e in edges {
        if used.is_disjoint(e) {
            used = used.union(e);
            packing += 1;
        }
        for v in e.iter() {
            degree[v] += 1;
        }
    }
    let max_degree = *degree.iter().max().unwrap() as usize;
    if max_degree == 0 {
        return 0;
    }
    packing.max(edges.len().div_ceil(max_degree))
}

fn greedy_cover(edges: &[EdgeSet]) -> EdgeSet {
    let mut cover = EdgeSet::EMPTY;
    let mut open: Vec<EdgeSet> = edges.to_vec();
    while !open.is_empty() {
        let mut degree = [0u32; 128];
        for e in &open {
            for v in e.iter() {
                degree[v] += 1;
            }
        }
        let v = (0..128).max_by_key(|&v| (degree[v], std::cmp::Reverse(v))).unwrap();
        cover.insert(v);
        open.retain(|e| !e.contains(v));
    }
    cover
}

/// Split edges by 1-skeleton component, smallest groups first.
fn split(edges: &[EdgeSet]) -> Option<Vec<Vec<EdgeSet>>> {
    let masks = component_masks(edges);
    if masks.len() < 2 {
        return None;
    }
    let mut groups: Vec<Vec<EdgeSet>> = masks
        .iter()
        .map(|&m| edges.iter().copied().filter(|e| e.is_subset(m)).collect())
        .collect();
    groups.sort_by_key(|g| g.len());
    Some(groups)
}

/// Minimum cover with fewer than `limit` vertices, if any. `edges` are sorted and nonempty.
fn cover_below(
    ctr: &mut Counter,
    edges: &[EdgeSet],
    limit: usize,
    depth: usize,
) -> Result<Option<EdgeSet>, Exhausted> {
    ctr.tick(depth)?;
    if edges.is_empty() {
        return Ok((limit > 0).then_some(EdgeSet::EMPTY));
    }
    if limit <= 1 || cover_lower_bound(edges) >= limit {
        return Ok(None);
    }
    if let Some(groups) = split(edges) {
        let mut acc = EdgeSet::EMPTY;
        let k = groups.len();
        for (i, g) in groups.iter().enumerate() {
            let reserve = acc.len() + (k - i - 1);
            if reserve >= limit {
                return Ok(None);
            }
            match cover_below(ctr, g, limit - reserve, depth + 1)? {
                Some(c) => acc = acc.union(c),
                None => return Ok(None),
            }
        }
        return Ok(Some(acc));
    }
    let branch_edge = *edges.iter().min_by_key(|e| e.len()).unwrap();
    let mut best = None;
    let mut lim = limit;
    let mut excluded = EdgeSet::EMPTY;
    for v in branch_edge.iter() {
        let mut child = Vec::with_capacity(edges.len());
        let mut feasible = true;
        for &f in edges {
            if f.contains(v) {
                continue;
            }
            let g = f.difference(excluded);
            if g.is_empty() {
                feasible = false;
                break;
            }
            child.push(g);
        }
        if feasible && lim >= 2 {
            child.sort_unstable();
            child.dedup();
            if let Some(c) = cover_below(ctr, &child, lim - 1, depth + 1)? {
                let c = c.with(v);
                lim = c.len();
                best = Some(c);
            }
        }
        excluded.insert(v);
    }
    Ok(best)
}

/// Covering number `τ(H)` by branch-and-bound, with a minimum cover as witness.
///
/// Branches on a smallest uncovered edge; a greedy disjoint packing is the
/// lower bound; independent components are solved separately.
pub fn tau(h: &Hypergraph, budget: Option<u64>) -> Result<IntCertificate, CoverError> {
    if h.is_empty() {
        return Err(HyperError::EmptyHypergraph.into());
    }
    let mut ctr = Counter::new(budget);
    let edges = h.edges();
    let greedy = greedy_cover(edges);
    let cover = match cover_below(&mut ctr, edges, greedy.len(), 0) {
        Ok(Some(c)) => c,
        Ok(None) => greedy,
        Err(Exhausted) => {
            return Err(CoverError::BudgetExceeded {
                quantity: Quantity::Tau,
                budget: ctr.budget,
                lower: cover_lower_bound(edges),
                upper: greedy.len(),
                best: vec![greedy],
            })
        }
    };
    Ok(IntCertificate {
        quantity: Quantity::Tau,
        value: cover.len(),
        witness: vec![cover],
        members: None,
        nodes: ctr.nodes,
        depth: ctr.depth,
    })
}

fn matching_bound(edges: &[EdgeSet]) -> usize {
    let support = edges.iter().fold(EdgeSet::EMPTY, |a, &e| a.union(e));
    let smallest = edges.iter().map(|e| e.len()).min().unwrap_or(1).max(1);
    edges.len().min(support.len() / smallest)
}

/// Maximum matching of size at least `need`, if any.
fn matching_at_least(
    ctr: &mut Counter,
    edges: &[EdgeSet],
    need: usize,
    depth: usize,
) -> Result<Option<Vec<EdgeSet>>, Exhausted> {
    ctr.tick(depth)?;
    if edges.is_empty() {
        return Ok((need == 0).then(Vec::new));
    }
    if matching_bound(edges) < need {
        return Ok(None);
    }
    if let Some(groups) = split(edges) {
        let bounds: Vec<usize> = groups.iter().map(|g| matching_bound(g)).collect();
        let mut acc = Vec::new();
        for (i, g) in groups.iter().enumerate() {
            let rest: usize = bounds[i + 1..].iter().sum();
            let need_here = need.saturating_sub(acc.len() + rest);
            match matching_at_least(ctr, g, need_here.max(1), depth + 1)? {
                Some(m) => acc.extend(m),
                None if need_here == 0 => {}
                None => return Ok(None),
            }
        }
        return Ok((acc.len() >= need).then_some(acc));
    }
    // branch on a vertex of least degree
    let mut degree = [0u32; 128];
    for e in edges {
        for v in e.iter() {
            degree[v] += 1;
        }
    }
    let v = (0..128)
        .filter(|&v| degree[v] > 0)
        .min_by_key(|&v| (degree[v], v))
        .unwrap();
    let mut best: Option<Vec<EdgeSet>> = None;
    let mut need = need;
    for &e in edges.iter().filter(|e| e.contains(v)) {
        let child: Vec<EdgeSet> = edges.iter().copied().filter(|f| f.is_disjoint(e)).collect();
        if let Some(mut m) = matching_at_least(ctr, &child, need.saturating_sub(1), depth + 1)? {
            m.push(e);
            need = m.len() + 1;
            best = Some(m);
        }
    }
    let child: Vec<EdgeSet> = edges.iter().copied().filter(|f| !f.contains(v)).collect();
    if let Some(m) = matching_at_least(ctr, &child, need, depth + 1)? {
        best = Some(m);
    }
    Ok(best)
}

/// Matching number `ν(H)` with a maximum matching as witness.
pub fn nu(h: &Hypergraph, budget: Option<u64>) -> Result<IntCertificate, CoverError> {
    let mut ctr = Counter::new(budget);
    match matching_at_least(&mut ctr, h.edges(), 0, 0) {
        Ok(m) => {
            let mut m = m.unwrap_or_default();
            m.sort_unstable();
            Ok(IntCertificate {
                quantity: Quantity::Nu,
                value: m.len(),
                witness: m,
                members: None,
                nodes: ctr.nodes,
                depth: ctr.depth,
            })
        }
        Err(Exhausted) => Err(CoverError::BudgetExceeded {
            quantity: Quantity::Nu,
            budget: ctr.budget,
            lower: 0,
            upper: matching_bound(h.edges()),
            best: Vec::new(),
        }),
    }
}

/// A matching whose union is the whole universe `0..n`, if one exists.
pub fn has_perfect_matching(h: &Hypergraph) -> Option<Vec<EdgeSet>> {
    if !h.is_grounded() {
        return None;
    }
    let mut by_vertex: Vec<Vec<EdgeSet>> = vec![Vec::new(); h.n()];
    for &e in h.edges() {
        for v in e.iter() {
            by_vertex[v].push(e);
        }
    }
    let mut chosen = Vec::new();
    exact_cover(&by_vertex, h.universe(), &mut chosen).then(|| {
        chosen.sort_unstable();
        chosen
    })
}

fn exact_cover(by_vertex: &[Vec<EdgeSet>], open: EdgeSet, chosen: &mut Vec<EdgeSet>) -> bool {
    if open.is_empty() {
        return true;
    }
    let mut pick = None;
    let mut fewest = usize::MAX;
    for v in open.iter() {
        let count = by_vertex[v].iter().filter(|e| e.is_subset(open)).count();
        if count < fewest {
            fewest = count;
            pick = Some(v);
            if count == 0 {
                return false;
            }
        }
    }
    let v = pick.unwrap();
    for &e in by_vertex[v].iter().filter(|e| e.is_subset(open)) {
        chosen.push(e);
        if exact_cover(by_vertex, open.difference(e), chosen) {
            return true;
        }
        chosen.pop();
    }
    false
}

/// Rainbow matching number `ν_R` of a family over a shared universe.
pub fn rainbow_matching_number(
    family: &[Hypergraph],
    budget: Option<u64>,
) -> Result<IntCertificate, CoverError> {
    if let Some(first) = family.first() {
        if let Some(h) = family.iter().find(|h| h.n() != first.n()) {
            return Err(HyperError::UniverseMismatch(first.n(), h.n()).into());
        }
    }
    let mut ctr = Counter::new(budget);
    let mut best: Vec<(usize, EdgeSet)> = Vec::new();
    let mut chosen = Vec::new();
    if rainbow(&mut ctr, family, 0, EdgeSet::EMPTY, &mut chosen, &mut best).is_err() {
        return Err(CoverError::BudgetExceeded {
            quantity: Quantity::NuR,
            budget: ctr.budget,
            lower: best.len(),
            upper: family.len(),
            best: best.iter().map(|&(_, e)| e).collect(),
        });
    }
    Ok(IntCertificate {
        quantity: Quantity::NuR,
        value: best.len(),
        witness: best.iter().map(|&(_, e)| e).collect(),
        members: Some(best.iter().map(|&(i, _)| i).collect()),
        nodes: ctr.nodes,
        depth: ctr.depth,
    })
}

fn rainbow(
    ctr: &mut Counter,
    family: &[Hypergraph],
    i: usize,
    used: EdgeSet,
    chosen: &mut Vec<(usize, EdgeSet)>,
    best: &mut Vec<(usize, EdgeSet)>,
) -> Result<(), Exhausted> {
    ctr.tick(i)?;
    if chosen.len() + (family.len() - i) <= best.len() {
        return Ok(());
    }
    if i == family.len() {
        *best = chosen.clone();
        return Ok(());
    }
    for &e in family[i].edges() {
        if e.is_disjoint(used) {
            chosen.push((i, e));
            rainbow(ctr, family, i + 1, used.union(e), chosen, best)?;
            chosen.pop();
            if best.len() == family.len() {
                return Ok(());
            }
        }
    }
    rainbow(ctr, family, i + 1, used, chosen, best)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(n: usize, edges: &[&[usize]]) -> Hypergraph {
        Hypergraph::new(n, edges.iter().map(|e| e.iter().copied())).unwrap()
    }

    /// Smallest k such that some k-subset of the universe covers `h`.
    fn brute_tau(h: &Hypergraph) -> usize {
        let n = h.n();
        (0u32..1 << n)
            .filter(|&m| h.is_cover(EdgeSet::from_bits(m as u128)))
            .map(|m| m.count_ones() as usize)
            .min()
            .unwrap()
    }

    fn brute_nu(h: &Hypergraph) -> usize {
        let m = h.len();
        (0u32..1 << m)
            .filter(|&mask| {
                let chosen: Vec<EdgeSet> =
                    (0..m).filter(|i| mask >> i & 1 == 1).map(|i| h.edges()[i]).collect();
                super::super::pairwise_disjoint(&chosen)
            })
            .map(|mask| mask.count_ones() as usize)
            .max()
            .unwrap()
    }

    #[test]
    fn small_cases() {
        let single = h(1, &[&[0]]);
        assert_eq!(tau(&single, None).unwrap().value, 1);
        assert_eq!(nu(&single, None).unwrap().value, 1);
        let edge = h(4, &[&[0, 1, 2, 3]]);
        assert_eq!(nu(&edge, None).unwrap().value, 1);
        assert_eq!(nu(&Hypergraph::empty(3).unwrap(), None).unwrap().value, 0);
        assert!(matches!(
            tau(&Hypergraph::empty(3).unwrap(), None),
            Err(CoverError::Hyper(HyperError::EmptyHypergraph))
        ));
    }

    #[test]
    fn agrees_with_brute_force_on_fano_and_cycles() {
        let fano = h(7, &[&[0, 1, 2], &[0, 3, 4], &[0, 5, 6], &[1, 3, 5], &[1, 4, 6], &[2, 3, 6], &[2, 4, 5]]);
        let c7 = h(7, &[&[0, 1], &[1, 2], &[2, 3], &[3, 4], &[4, 5], &[5, 6], &[6, 0]]);
        let two = h(8, &[&[0, 1], &[1, 2], &[0, 2], &[4, 5, 6], &[5, 7]]);
        for g in [fano, c7, two] {
            let t = tau(&g, None).unwrap();
            assert!(t.validate(&g));
            assert_eq!(t.value, brute_tau(&g));
            let m = nu(&g, None).unwrap();
            assert!(m.validate(&g));
            assert_eq!(m.value, brute_nu(&g));
        }
    }

    #[test]
    fn budget_exceeded_reports_bounds() {
        let c7 = h(7, &[&[0, 1], &[1, 2], &[2, 3], &[3, 4], &[4, 5], &[5, 6], &[6, 0]]);
        match tau(&c7, Some(0)) {
            Err(CoverError::BudgetExceeded { lower, upper, best, .. }) => {
                assert!(lower <= 4 && 4 <= upper);
                assert!(c7.is_cover(best[0]));
            }
            other => panic!("expected budget error, got {other:?}"),
        }
    }

    #[test]
    fn perfect_matchings() {
        let grid = h(9, &[&[0, 1, 2], &[3, 4, 5], &[6, 7, 8], &[0, 3, 6], &[1, 4, 7], &[2, 5, 8]]);
        let pm = has_perfect_matching(&grid).unwrap();
        assert_eq!(pm.len(), 3);
        assert_eq!(has_perfect_matching(&h(3, &[&[0, 1], &[1, 2]])), None);
        // ungrounded universe has no perfect matching
        assert_eq!(has_perfect_matching(&h(3, &[&[0, 1]])), None);
    }

    #[test]
    fn rainbow_matchings() {
        let m = h(4, &[&[0, 1], &[2, 3]]);
        let fam = vec![m.clone(), m.clone()];
        let cert = rainbow_matching_number(&fam, None).unwrap();
        assert_eq!(cert.value, 2);
        assert!(cert.validate_rainbow(&fam));
        // cross-intersecting pair
        let a = h(3, &[&[0, 1], &[1, 2]]);
        let b = h(3, &[&[0, 2]]);
        assert_eq!(rainbow_matching_number(&[a, b], None).unwrap().value, 1);
    }
}
