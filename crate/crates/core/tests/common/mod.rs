//! Independent re-checker. Reads objects through their JSON form only and
//! decides every question by direct set arithmetic or exhaustive search.

#![allow(dead_code)]

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::Value;

pub type Set = BTreeSet<usize>;

#[derive(Clone, Debug)]
pub struct H {
    pub n: usize,
    pub edges: Vec<Set>,
}

impl H {
    pub fn covers(&self, t: &Set) -> bool {
        self.edges.iter().all(|e| !e.is_disjoint(t))
    }

    pub fn union(&self, o: &H) -> H {
        let mut edges: BTreeSet<Set> = self.edges.iter().cloned().collect();
        edges.extend(o.edges.iter().cloned());
        H { n: self.n.max(o.n), edges: edges.into_iter().collect() }
    }

    fn edge_set(&self) -> BTreeSet<Set> {
        self.edges.iter().cloned().collect()
    }
}

fn set(v: &Value) -> Result<Set, String> {
    v.as_array()
        .ok_or("expected a vertex list")?
        .iter()
        .map(|x| x.as_u64().map(|x| x as usize).ok_or_else(|| format!("bad vertex {x}")))
        .collect()
}

pub fn hyper(v: &Value) -> Result<H, String> {
    let n = v["n"].as_u64().ok_or("missing n")? as usize;
    let edges = v["edges"].as_array().ok_or("missing edges")?.iter().map(set).collect::<Result<Vec<_>, _>>()?;
    if edges.iter().flatten().any(|&x| x >= n) {
        return Err("vertex out of range".into());
    }
    Ok(H { n, edges })
}

pub fn rat(v: &Value) -> Result<BigRational, String> {
    let s = match v {
        Value::String(s) => s.clone(),
        Value::Number(n) => n.to_string(),
        _ => return Err(format!("not a rational: {v}")),
    };
    let parse = |t: &str| t.trim().parse::<BigInt>().map_err(|_| format!("bad rational {s:?}"));
    match s.split_once('/') {
        Some((p, q)) => {
            let q = parse(q)?;
            if q == BigInt::from(0) {
                return Err("zero denominator".into());
            }
            Ok(BigRational::new(parse(p)?, q))
        }
        None => Ok(BigRational::from_integer(parse(&s)?)),
    }
}

/// Fractional matching and fractional cover of equal total: returns that total.
pub fn check_frac(h: &H, cert: &Value) -> Result<BigRational, String> {
    let zero = BigRational::from_integer(0.into());
    let one = BigRational::from_integer(1.into());
    let value = rat(&cert["value"])?;
    let edges = h.edge_set();
    let mut load = vec![zero.clone(); h.n];
    let mut primal = zero.clone();
    for w in cert["primal"].as_array().ok_or("missing primal")? {
        let e = set(&w["edge"])?;
        let x = rat(&w["weight"])?;
        if !edges.contains(&e) {
            return Err(format!("primal weight on non-edge {e:?}"));
        }
        if x < zero {
            return Err("negative primal weight".into());
        }
        for &v in &e {
            load[v] += &x;
        }
        primal += x;
    }
    if let Some(v) = load.iter().position(|l| *l > one) {
        return Err(format!("vertex {v} carries {}", load[v]));
    }
    let dual = cert["dual"].as_array().ok_or("missing dual")?.iter().map(rat).collect::<Result<Vec<_>, _>>()?;
    if dual.len() != h.n || dual.iter().any(|y| *y < zero) {
        return Err("dual has the wrong length or a negative entry".into());
    }
    for e in &h.edges {
        let c: BigRational = e.iter().map(|&v| dual[v].clone()).sum();
        if c < one {
            return Err(format!("edge {e:?} covered only {c}"));
        }
    }
    let d: BigRational = dual.iter().cloned().sum();
    if primal != value || d != value {
        return Err(format!("primal {primal}, dual {d}, claimed {value}"));
    }
    Ok(value)
}

/// Integral cover or matching witness of the claimed size: returns the value.
pub fn check_int(h: &H, cert: &Value) -> Result<usize, String> {
    let value = cert["value"].as_u64().ok_or("missing value")? as usize;
    let witness = cert["witness"].as_array().ok_or("missing witness")?.iter().map(set).collect::<Result<Vec<_>, _>>()?;
    match cert["quantity"].as_str() {
        Some("tau") => {
            if witness.len() != 1 || witness[0].len() != value || !h.covers(&witness[0]) {
                return Err("cover witness invalid".into());
            }
        }
        Some("nu") => {
            let edges = h.edge_set();
            if witness.len() != value || witness.iter().any(|e| !edges.contains(e)) {
                return Err("matching witness invalid".into());
            }
            check_disjoint(&witness)?;
        }
        other => return Err(format!("unknown quantity {other:?}")),
    }
    Ok(value)
}

pub fn check_disjoint(edges: &[Set]) -> Result<(), String> {
    let mut seen = Set::new();
    for e in edges {
        if !seen.is_disjoint(e) {
            return Err(format!("{e:?} overlaps an earlier edge"));
        }
        seen.extend(e.iter().copied());
    }
    Ok(())
}

pub fn binom(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Every `k`-subset of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize, f: &mut dyn FnMut(&Set) -> bool) {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&Set) -> bool) -> bool {
        if cur.len() == k {
            return f(&cur.iter().copied().collect());
        }
        for v in start..n {
            if n - v < k - cur.len() {
                break;
            }
            cur.push(v);
            let go_on = go(v + 1, n, k, cur, f);
            cur.pop();
            if !go_on {
                return false;
            }
        }
        true
    }
    go(0, n, k, &mut Vec::new(), f);
}

pub fn k_covers(h: &H, k: usize) -> BTreeSet<Set> {
    let mut out = BTreeSet::new();
    subsets(h.n, k, &mut |t| {
        if h.covers(t) {
            out.insert(t.clone());
        }
        true
    });
    out
}

/// Whether some `k`-set covers `h`.
pub fn has_k_cover(h: &H, k: usize) -> bool {
    let mut found = false;
    subsets(h.n, k, &mut |t| {
        found = h.covers(t);
        !found
    });
    found
}

pub fn tau_brute(h: &H) -> usize {
    (0..=h.n).find(|&k| has_k_cover(h, k)).expect("the full set covers")
}

pub fn nu_brute(h: &H) -> usize {
    fn go(edges: &[Set], used: &Set) -> usize {
        let Some((first, rest)) = edges.split_first() else { return 0 };
        let skip = go(rest, used);
        if first.is_disjoint(used) {
            let mut u = used.clone();
            u.extend(first.iter().copied());
            skip.max(1 + go(rest, &u))
        } else {
            skip
        }
    }
    go(&h.edges, &Set::new())
}

/// Pairs whose brute-force checks stay under this many subsets.
pub const BRUTE_LIMIT: u128 = 3_000_000;

/// What an independent loom check established.
pub struct LoomCheck {
    pub r: usize,
    pub s: usize,
    /// Whether the cover axioms were decided by exhaustion.
    pub exhaustive: bool,
}

/// Uniformity and orthogonality always; the covering axioms by exhaustion
/// when the subset counts are small enough.
pub fn check_loom(a: &H, b: &H) -> Result<LoomCheck, String> {
    if a.n != b.n {
        return Err("different universes".into());
    }
    let uniform = |h: &H| -> Result<usize, String> {
        let k = h.edges.first().ok_or("empty side")?.len();
        if h.edges.iter().any(|e| e.len() != k) {
            return Err("not uniform".into());
        }
        Ok(k)
    };
    let (r, s) = (uniform(a)?, uniform(b)?);
    for x in &a.edges {
        for y in &b.edges {
            if x.intersection(y).count() != 1 {
                return Err(format!("{x:?} and {y:?} do not meet in exactly one vertex"));
            }
        }
    }
    let n = a.n;
    let exhaustive = binom(n, r).max(binom(n, s)) <= BRUTE_LIMIT;
    if exhaustive {
        if has_k_cover(a, s - 1) {
            return Err("tau(A) < s".into());
        }
        if has_k_cover(b, r - 1) {
            return Err("tau(B) < r".into());
        }
        if k_covers(b, r) != a.edge_set() {
            return Err("A differs from the r-covers of B".into());
        }
        if k_covers(a, s) != b.edge_set() {
            return Err("B differs from the s-covers of A".into());
        }
    }
    Ok(LoomCheck { r, s, exhaustive })
}

/// Whether `perm` carries `h1` onto `h2`.
pub fn check_iso(perm: &[usize], h1: &H, h2: &H) -> Result<(), String> {
    let mut seen = vec![false; perm.len()];
    if perm.len() != h1.n || h1.n != h2.n || perm.iter().any(|&p| p >= h1.n || std::mem::replace(&mut seen[p], true)) {
        return Err("not a permutation of the universe".into());
    }
    let moved: BTreeSet<Set> = h1.edges.iter().map(|e| e.iter().map(|&v| perm[v]).collect()).collect();
    if moved != h2.edge_set() {
        return Err("relabeled edges differ".into());
    }
    Ok(())
}

/// Perfect matchings of a graph, as sets of edge indices.
pub fn perfect_matchings(n: usize, edges: &[(usize, usize)]) -> BTreeSet<Set> {
    fn go(n: usize, edges: &[(usize, usize)], free: &mut Vec<bool>, cur: &mut Set, out: &mut BTreeSet<Set>) {
        let Some(u) = free.iter().position(|&f| f) else {
            out.insert(cur.clone());
            return;
        };
        for (i, &(x, y)) in edges.iter().enumerate() {
            let w = if x == u { y } else if y == u { x } else { continue };
            if w < n && free[w] {
                free[u] = false;
                free[w] = false;
                cur.insert(i);
                go(n, edges, free, cur, out);
                cur.remove(&i);
                free[u] = true;
                free[w] = true;
            }
        }
    }
    let mut out = BTreeSet::new();
    go(n, edges, &mut vec![true; n], &mut Set::new(), &mut out);
    out
}

pub fn complete_graph_edges(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect()
}

/// Number of integer partitions of `n`.
pub fn partitions(n: usize) -> u64 {
    let mut p = vec![0u64; n + 1];
    p[0] = 1;
    for part in 1..=n {
        for m in part..=n {
            p[m] += p[m - part];
        }
    }
    p[n]
}

/// max(max degree, max over odd |U| >= 3 of 2 e(U) / (|U| - 1)) by
/// enumerating every vertex subset.
pub fn fractional_chromatic_index(n: usize, edges: &[(usize, usize)]) -> BigRational {
    let mut deg = vec![0i64; n];
    for &(x, y) in edges {
        deg[x] += 1;
        deg[y] += 1;
    }
    let mut best = BigRational::from_integer(deg.iter().copied().max().unwrap_or(0).into());
    for mask in 0u32..(1 << n) {
        let size = mask.count_ones() as i64;
        if size < 3 || size % 2 == 0 {
            continue;
        }
        let inside = edges.iter().filter(|&&(x, y)| mask >> x & 1 == 1 && mask >> y & 1 == 1).count() as i64;
        let t = BigRational::new((2 * inside).into(), (size - 1).into());
        if t > best {
            best = t;
        }
    }
    best
}
