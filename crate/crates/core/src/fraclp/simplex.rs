use std::cmp::Ordering;
use std::fmt::Debug;

use num_rational::BigRational;
use num_traits::{Num, Zero};

/// Scalars the simplex can pivot over. Exact types compare with zero
/// directly; floating types use a tolerance.
pub trait LpScalar: Clone + Num + PartialOrd + Debug {
    fn sign(&self) -> Ordering;

    fn is_positive_lp(&self) -> bool {
        self.sign() == Ordering::Greater
    }
    fn is_negative_lp(&self) -> bool {
        self.sign() == Ordering::Less
    }
    fn is_zero_lp(&self) -> bool {
        self.sign() == Ordering::Equal
    }
}

impl LpScalar for BigRational {
    fn sign(&self) -> Ordering {
        self.cmp(&BigRational::zero())
    }
}

impl LpScalar for f64 {
    fn sign(&self) -> Ordering {
        const EPS: f64 = 1e-9;
        if *self > EPS {
            Ordering::Greater
        } else if *self < -EPS {
            Ordering::Less
        } else {
            Ordering::Equal
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LpOutcome<T> {
    pub value: T,
    /// Primal solution, one entry per structural column.
    pub x: Vec<T>,
    /// Dual solution, one entry per constraint row.
    pub y: Vec<T>,
    pub pivots: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpError {
    Unbounded,
}

/// Dense tableau; the last row is the objective, the last column the right-hand side.
struct Tableau<T> {
    rows: Vec<Vec<T>>,
    basis: Vec<usize>,
    pivots: u64,
}

impl<T: LpScalar> Tableau<T> {
    fn width(&self) -> usize {
        self.rows[0].len()
    }

    fn obj(&self) -> &[T] {
        self.rows.last().unwrap()
    }

    /// Bland's rule: lowest-index improving column, ratio ties to lowest basic index.
    fn run(&mut self) -> Result<(), LpError> {
        let m = self.basis.len();
        let rhs = self.width() - 1;
        loop {
            let Some(col) = (0..rhs).find(|&j| self.obj()[j].is_negative_lp()) else {
                return Ok(());
            };
            let mut leave: Option<usize> = None;
            for i in 0..m {
                let a = &self.rows[i][col];
                if !a.is_positive_lp() {
                    continue;
                }
                match leave {
                    None => leave = Some(i),
                    Some(l) => {
                        let lhs = self.rows[i][rhs].clone() * self.rows[l][col].clone();
                        let rhs_v = self.rows[l][rhs].clone() * a.clone();
                        let ord = (lhs - rhs_v).sign();
                        if ord == Ordering::Less
                            || (ord == Ordering::Equal && self.basis[i] < self.basis[l])
                        {
                            leave = Some(i);
                        }
                    }
                }
            }
            let Some(row) = leave else {
                return Err(LpError::Unbounded);
            };
            self.pivot(row, col);
        }
    }

    fn pivot(&mut self, row: usize, col: usize) {
        self.pivots += 1;
        let p = self.rows[row][col].clone();
        for v in self.rows[row].iter_mut() {
            if !v.is_zero_lp() {
                *v = v.clone() / p.clone();
            }
        }
        let support: Vec<usize> =
            (0..self.width()).filter(|&j| !self.rows[row][j].is_zero_lp()).collect();
        let pivot_row = self.rows[row].clone();
        for (i, r) in self.rows.iter_mut().enumerate() {
            if i == row || r[col].is_zero_lp() {
                continue;
            }
            let f = r[col].clone();
            for &j in &support {
                r[j] = r[j].clone() - f.clone() * pivot_row[j].clone();
            }
        }
        self.basis[row] = col;
    }

    fn primal(&self, n: usize) -> Vec<T> {
        let rhs = self.width() - 1;
        let mut x = vec![T::zero(); n];
        for (i, &b) in self.basis.iter().enumerate() {
            if b < n {
                x[b] = self.rows[i][rhs].clone();
            }
        }
        x
    }
}

/// Maximize `c·x` subject to `A x ≤ b`, `x ≥ 0`, where `b ≥ 0`.
pub fn maximize<T: LpScalar>(a: &[Vec<T>], b: &[T], c: &[T]) -> Result<LpOutcome<T>, LpError> {
    let m = a.len();
    let n = c.len();
    let mut rows = Vec::with_capacity(m + 1);
    for i in 0..m {
        let mut row = a[i].clone();
        row.resize(n + m, T::zero());
        row[n + i] = T::one();
        row.push(b[i].clone());
        rows.push(row);
    }
    let mut obj: Vec<T> = c.iter().map(|v| T::zero() - v.clone()).collect();
    obj.resize(n + m + 1, T::zero());
    rows.push(obj);
    let mut t = Tableau { rows, basis: (n..n + m).collect(), pivots: 0 };
    t.run()?;
    let obj = t.obj();
    Ok(LpOutcome {
        value: obj[n + m].clone(),
        x: t.primal(n),
        y: obj[n..n + m].to_vec(),
        pivots: t.pivots,
    })
}

/// A point of `{x ≥ 0 : A x = b}` with `b ≥ 0`, found by phase-1 simplex.
pub fn feasible_point<T: LpScalar>(a: &[Vec<T>], b: &[T]) -> Option<Vec<T>> {
    let m = a.len();
    let n = a.first().map_or(0, |r| r.len());
    let mut rows = Vec::with_capacity(m + 1);
    let mut obj = vec![T::zero(); n + m + 1];
    for i in 0..m {
        let mut row = a[i].clone();
        row.resize(n + m, T::zero());
        row[n + i] = T::one();
        row.push(b[i].clone());
        for j in 0..n {
            obj[j] = obj[j].clone() - row[j].clone();
        }
        obj[n + m] = obj[n + m].clone() - b[i].clone();
        rows.push(row);
    }
    rows.push(obj);
    let mut t = Tableau { rows, basis: (n..n + m).collect(), pivots: 0 };
    t.run().ok()?;
    t.obj()[n + m].is_zero_lp().then(|| t.primal(n))
}
