//! Exact rational linear programming: fractional matching and covering
//! numbers with dual certificates, perfect fractional matchings, and the
//! fractional edge-chromatic number of small graphs.

mod edgecolor;
mod simplex;

pub use edgecolor::{fractional_edge_chromatic, t_max, t_value, T_MAX_VERTICES};
pub use simplex::{feasible_point, maximize, LpError, LpOutcome, LpScalar};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::hypercore::{EdgeSet, Hypergraph};
use crate::Rational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FracError {
    #[error("hypergraph has no edges")]
    EmptyHypergraph,
    #[error("hypergraph is not grounded: vertex {0} lies in no edge")]
    NotGrounded(usize),
    #[error("vertex set has even size {0}; t(U) needs odd |U| >= 3")]
    EvenSubset(usize),
    #[error("{0} vertices exceed the {T_MAX_VERTICES}-vertex limit for the odd-set scan")]
    TooLarge(usize),
}

/// Optimal fractional matching and fractional cover of equal value.
///
/// `primal` lists the edges with nonzero weight; `dual` has one entry per
/// vertex. Equality of the two totals certifies optimality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FracCertificate {
    pub value: Rational,
    pub primal: Vec<(EdgeSet, Rational)>,
    pub dual: Vec<Rational>,
    pub pivots: u64,
}

impl FracCertificate {
    pub fn tau_star(&self) -> &Rational {
        &self.value
    }

    /// Feasibility of both sides, equal totals, and complementary slackness.
    pub fn check(&self, h: &Hypergraph) -> Result<(), String> {
        let zero = Rational::zero();
        let one = Rational::one();
        if self.dual.len() != h.n() {
            return Err(format!("dual has {} entries for {} vertices", self.dual.len(), h.n()));
        }
        let mut load = vec![Rational::zero(); h.n()];
        for (e, w) in &self.primal {
            if !h.contains_edge(*e) {
                return Err(format!("primal weight on non-edge {e}"));
            }
            if *w < zero {
                return Err(format!("negative primal weight on {e}"));
            }
            for v in e.iter() {
                load[v] += w;
            }
        }
        if let Some(v) = (0..h.n()).find(|&v| load[v] > one) {
            return Err(format!("vertex {} is overloaded ({})", v + 1, load[v]));
        }
        if let Some(v) = (0..h.n()).find(|&v| self.dual[v] < zero) {
            return Err(format!("negative cover weight at vertex {}", v + 1));
        }
        for &e in h.edges() {
            let cover: Rational = e.iter().map(|v| &self.dual[v]).sum();
            if cover < one {
                return Err(format!("edge {e} is under-covered ({cover})"));
            }
            let weight = self.primal.iter().find(|(f, _)| *f == e).map(|(_, w)| w);
            if weight.is_some_and(|w| *w > zero) && cover != one {
                return Err(format!("slackness fails on edge {e}"));
            }
        }
        for v in 0..h.n() {
            if self.dual[v] > zero && load[v] != one {
                return Err(format!("slackness fails at vertex {}", v + 1));
            }
        }
        let primal_total: Rational = self.primal.iter().map(|(_, w)| w).sum();
        let dual_total: Rational = self.dual.iter().sum();
        if primal_total != self.value || dual_total != self.value {
            return Err(format!(
                "totals differ: primal {primal_total}, dual {dual_total}, claimed {}",
                self.value
            ));
        }
        Ok(())
    }
}

/// Fractional matching LP over any [`LpScalar`]: one row per vertex, one column per edge.
pub fn nu_star_with<T: LpScalar>(h: &Hypergraph) -> LpOutcome<T> {
    let a: Vec<Vec<T>> = (0..h.n())
        .map(|v| {
            h.edges()
                .iter()
                .map(|e| if e.contains(v) { T::one() } else { T::zero() })
                .collect()
        })
        .collect();
    let b = vec![T::one(); h.n()];
    let c = vec![T::one(); h.len()];
    maximize(&a, &b, &c).expect("fractional matching LP is bounded")
}

/// `ν*(H) = τ*(H)` with an optimal fractional matching and fractional cover.
pub fn nu_star(h: &Hypergraph) -> Result<FracCertificate, FracError> {
    if h.is_empty() {
        return Err(FracError::EmptyHypergraph);
    }
    let out = nu_star_with::<Rational>(h);
    let primal = h
        .edges()
        .iter()
        .zip(out.x)
        .filter(|(_, w)| !w.is_zero())
        .map(|(&e, w)| (e, w))
        .collect();
    Ok(FracCertificate { value: out.value, primal, dual: out.y, pivots: out.pivots })
}

/// A fractional matching saturating every vertex exactly, if one exists.
pub fn has_perfect_fractional_matching(
    h: &Hypergraph,
) -> Result<Option<Vec<(EdgeSet, Rational)>>, FracError> {
    if let Some(v) = (0..h.n()).find(|&v| h.degree(v) == 0) {
        return Err(FracError::NotGrounded(v));
    }
    let a: Vec<Vec<Rational>> = (0..h.n())
        .map(|v| {
            h.edges()
                .iter()
                .map(|e| if e.contains(v) { Rational::one() } else { Rational::zero() })
                .collect()
        })
        .collect();
    let b = vec![Rational::one(); h.n()];
    Ok(feasible_point(&a, &b).map(|x| {
        h.edges()
            .iter()
            .zip(x)
            .filter(|(_, w)| !w.is_zero())
            .map(|(&e, w)| (e, w))
            .collect()
    }))
}

/// Check that `weights` saturate every vertex of `h` exactly.
pub fn is_perfect_fractional_matching(h: &Hypergraph, weights: &[(EdgeSet, Rational)]) -> bool {
    let mut load = vec![Rational::zero(); h.n()];
    for (e, w) in weights {
        if !h.contains_edge(*e) || *w < Rational::zero() {
            return false;
        }
        for v in e.iter() {
            load[v] += w;
        }
    }
    load.iter().all(|l| l.is_one())
}

/// Rationals as `"p/q"` strings (integers as `"p"`).
pub mod ratio_str {
    use serde::{Deserialize, Deserializer, Serializer};

    use crate::Rational;

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&r.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let raw = String::deserialize(d)?;
        raw.parse().map_err(|_| serde::de::Error::custom(format!("bad rational {raw:?}")))
    }
}

#[derive(Serialize, Deserialize)]
struct WeightedEdge {
    edge: Vec<usize>,
    #[serde(with = "ratio_str")]
    weight: Rational,
}

#[derive(Serialize, Deserialize)]
struct FracCertificateJson {
    quantity: String,
    #[serde(with = "ratio_str")]
    value: Rational,
    primal: Vec<WeightedEdge>,
    dual: Vec<String>,
    pivots: u64,
}

impl Serialize for FracCertificate {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        FracCertificateJson {
            quantity: "nustar".into(),
            value: self.value.clone(),
            primal: self
                .primal
                .iter()
                .map(|(e, w)| WeightedEdge { edge: e.to_vec(), weight: w.clone() })
                .collect(),
            dual: self.dual.iter().map(|r| r.to_string()).collect(),
            pivots: self.pivots,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for FracCertificate {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let raw = FracCertificateJson::deserialize(d)?;
        let mut primal = Vec::with_capacity(raw.primal.len());
        for w in raw.primal {
            if w.edge.iter().any(|&v| v >= crate::hypercore::MAX_VERTICES) {
                return Err(D::Error::custom("vertex index out of range"));
            }
            primal.push((w.edge.into_iter().collect(), w.weight));
        }
        let dual = raw
            .dual
            .iter()
            .map(|s| s.parse().map_err(|_| D::Error::custom(format!("bad rational {s:?}"))))
            .collect::<Result<_, _>>()?;
        Ok(FracCertificate { value: raw.value, primal, dual, pivots: raw.pivots })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn q(p: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(p), BigInt::from(d))
    }

    fn h(n: usize, edges: &[&[usize]]) -> Hypergraph {
        Hypergraph::new(n, edges.iter().map(|e| e.iter().copied())).unwrap()
    }

    fn fano() -> Hypergraph {
        h(7, &[&[0, 1, 2], &[0, 3, 4], &[0, 5, 6], &[1, 3, 5], &[1, 4, 6], &[2, 3, 6], &[2, 4, 5]])
    }

    #[test]
    fn fano_value_and_certificate() {
        let cert = nu_star(&fano()).unwrap();
        assert_eq!(cert.value, q(7, 3));
        cert.check(&fano()).unwrap();
        let json = serde_json::to_string(&cert).unwrap();
        assert!(json.contains("\"value\":\"7/3\""));
        let back: FracCertificate = serde_json::from_str(&json).unwrap();
        assert_eq!(back, cert);
    }

    #[test]
    fn single_edge_and_float_path() {
        let e = h(3, &[&[0, 1, 2]]);
        assert_eq!(nu_star(&e).unwrap().value, q(1, 1));
        let approx = nu_star_with::<f64>(&fano());
        assert!((approx.value - 7.0 / 3.0).abs() < 1e-9);
        assert_eq!(nu_star(&Hypergraph::empty(2).unwrap()), Err(FracError::EmptyHypergraph));
    }

    #[test]
    fn perfect_fractional_matchings() {
        let path = h(3, &[&[0, 1], &[1, 2]]);
        assert_eq!(has_perfect_fractional_matching(&path).unwrap(), None);
        let triangle = h(3, &[&[0, 1], &[1, 2], &[0, 2]]);
        let w = has_perfect_fractional_matching(&triangle).unwrap().unwrap();
        assert!(is_perfect_fractional_matching(&triangle, &w));
        assert_eq!(
            has_perfect_fractional_matching(&h(3, &[&[0, 1]])),
            Err(FracError::NotGrounded(2))
        );
    }

    #[test]
    fn tampered_certificate_is_rejected() {
        let mut cert = nu_star(&fano()).unwrap();
        cert.dual[0] = q(0, 1);
        assert!(cert.check(&fano()).is_err());
    }
}
