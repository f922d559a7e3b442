//! Exact linear algebra and polynomial interpolation over ℚ.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::rational::{qpow, Q};

/// Reduced row echelon form in place; returns the pivot columns.
fn row_reduce(m: &mut [Vec<Q>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        if row == m.len() {
            break;
        }
        let Some(p) = (row..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = m[row][col].recip();
        for x in m[row].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = m[row].clone();
        for (i, r) in m.iter_mut().enumerate() {
            if i != row && !r[col].is_zero() {
                let f = r[col].clone();
                for (x, y) in r.iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

pub fn rank(a: &[Vec<Q>]) -> usize {
    if a.is_empty() {
        return 0;
    }
    let cols = a[0].len();
    let mut m = a.to_vec();
    row_reduce(&mut m, cols).len()
}

/// Solves `A x = y`; `None` if inconsistent. Free variables are set to zero.
/// Also returns the rank of `A`.
pub fn solve(a: &[Vec<Q>], y: &[Q]) -> Option<(Vec<Q>, usize)> {
    assert_eq!(a.len(), y.len());
    let cols = a.first().map_or(0, |r| r.len());
    let mut m: Vec<Vec<Q>> = a
        .iter()
        .zip(y)
        .map(|(row, v)| {
            let mut r = row.clone();
            r.push(v.clone());
            r
        })
        .collect();
    let pivots = row_reduce(&mut m, cols);
    if m.iter().skip(pivots.len()).any(|r| !r[cols].is_zero()) {
        return None;
    }
    let mut x = vec![Q::zero(); cols];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = m[i][cols].clone();
    }
    Some((x, pivots.len()))
}

/// Determinant by Gaussian elimination over ℚ.
pub fn determinant(a: &[Vec<Q>]) -> Q {
    let n = a.len();
    let mut m = a.to_vec();
    let mut det = Q::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&i| !m[i][col].is_zero()) else {
            return Q::zero();
        };
        if p != col {
            m.swap(p, col);
            det = -det;
        }
        det *= &m[col][col];
        let inv = m[col][col].recip();
        for i in col + 1..n {
            if m[i][col].is_zero() {
                continue;
            }
            let f = &m[i][col] * &inv;
            for j in col..n {
                let t = &f * &m[col][j];
                m[i][j] -= t;
            }
        }
    }
    det
}

/// Polynomial in several variables with rational coefficients, keyed by exponent vectors.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MultiPoly {
    pub nvars: usize,
    pub terms: BTreeMap<Vec<u32>, Q>,
}

impl MultiPoly {
    pub fn eval(&self, x: &[Q]) -> Q {
        assert_eq!(x.len(), self.nvars);
        self.terms
            .iter()
            .map(|(e, c)| {
                e.iter()
                    .zip(x)
                    .fold(c.clone(), |acc, (&k, v)| acc * qpow(v, k as i64))
            })
            .sum()
    }

    /// Degrees of the nonzero homogeneous components, ascending.
    pub fn homogeneous_degrees(&self) -> Vec<u32> {
        let mut d: Vec<u32> = self.terms.keys().map(|e| e.iter().sum()).collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

/// Exponent vectors of total degree at most `max_degree` in `nvars` variables.
pub fn monomials(nvars: usize, max_degree: u32) -> Vec<Vec<u32>> {
    fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == cur.len() {
            out.push(cur.clone());
            return;
        }
        for k in 0..=left {
            cur[i] = k;
            rec(i + 1, left - k, cur, out);
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    rec(0, max_degree, &mut vec![0; nvars], &mut out);
    out
}

fn design_row(exps: &[Vec<u32>], x: &[Q]) -> Vec<Q> {
    exps.iter()
        .map(|e| {
            e.iter()
                .zip(x)
                .fold(Q::one(), |acc, (&k, v)| acc * qpow(v, k as i64))
        })
        .collect()
}

/// Outcome of an interpolation attempt.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Fit {
    /// Unique polynomial through every point.
    Unique(MultiPoly),
    /// Consistent, but the points do not determine all coefficients.
    Underdetermined(usize),
    /// No polynomial of the allowed degree passes through all points.
    Inconsistent,
}

/// Interpolates the points by a polynomial of total degree `≤ max_degree`.
pub fn fit_polynomial(points: &[(Vec<Q>, Q)], nvars: usize, max_degree: u32) -> Fit {
    let exps = monomials(nvars, max_degree);
    let a: Vec<Vec<Q>> = points.iter().map(|(x, _)| design_row(&exps, x)).collect();
    let y: Vec<Q> = points.iter().map(|(_, v)| v.clone()).collect();
    match solve(&a, &y) {
        None => Fit::Inconsistent,
        Some((_, rank)) if rank < exps.len() => Fit::Underdetermined(rank),
        Some((x, _)) => {
            let terms = exps
                .into_iter()
                .zip(x)
                .filter(|(_, c)| !c.is_zero())
                .collect();
            Fit::Unique(MultiPoly { nvars, terms })
        }
    }
}

/// Rank of the design matrix of `points` for degree `≤ max_degree`.
pub fn design_rank(points: &[Vec<Q>], nvars: usize, max_degree: u32) -> usize {
    let exps = monomials(nvars, max_degree);
    let a: Vec<Vec<Q>> = points.iter().map(|x| design_row(&exps, x)).collect();
    rank(&a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qi};

    #[test]
    fn solves_and_detects_inconsistency() {
        let a = vec![vec![qi(1), qi(1)], vec![qi(1), qi(-1)]];
        let (x, r) = solve(&a, &[qi(3), qi(1)]).unwrap();
        assert_eq!((x, r), (vec![qi(2), qi(1)], 2));
        let a = vec![vec![qi(1), qi(1)], vec![qi(2), qi(2)]];
        assert!(solve(&a, &[qi(1), qi(3)]).is_none());
    }

    #[test]
    fn determinant_small() {
        let a = vec![vec![qi(2), qi(1)], vec![qi(1), q(1, 2)]];
        assert_eq!(determinant(&a), qi(0));
        let a = vec![vec![qi(0), qi(1)], vec![qi(3), qi(5)]];
        assert_eq!(determinant(&a), qi(-3));
    }

    #[test]
    fn recovers_a_quadratic() {
        let pts: Vec<(Vec<Q>, Q)> = (0..6)
            .map(|k| {
                let x = qi(k);
                let y = &x * &x * qi(3) - qi(1);
                (vec![x], y)
            })
            .collect();
        let Fit::Unique(p) = fit_polynomial(&pts, 1, 3) else {
            panic!()
        };
        assert_eq!(p.homogeneous_degrees(), vec![0, 2]);
        assert_eq!(p.eval(&[qi(10)]), qi(299));
    }
}
