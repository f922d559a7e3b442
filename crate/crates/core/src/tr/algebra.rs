//! The ring ℚ[a]/(a^{2s} − 1/(2s)) housing all ramification points at once.

use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::linalg;
use crate::rational::{qi, Q};

/// `Σ_{k<2s} c_k a^k` with `a^{2s} = 1/(2s)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraicScalar {
    s: u32,
    coeffs: Vec<Q>,
}

impl AlgebraicScalar {
    pub fn zero(s: u32) -> Self {
        AlgebraicScalar {
            s,
            coeffs: vec![Q::zero(); 2 * s as usize],
        }
    }

    pub fn from_rational(s: u32, c: Q) -> Self {
        let mut x = Self::zero(s);
        x.coeffs[0] = c;
        x
    }

    pub fn one(s: u32) -> Self {
        Self::from_rational(s, Q::one())
    }

    /// `c · a^k` for any integer `k`.
    pub fn monomial(s: u32, c: Q, k: i64) -> Self {
        let two_s = 2 * s as i64;
        let (q, rem) = (k.div_euclid(two_s), k.rem_euclid(two_s));
        let mut x = Self::zero(s);
        x.coeffs[rem as usize] = c * crate::rational::qpow(&qi(two_s).recip(), q);
        x
    }

    pub fn generator(s: u32) -> Self {
        Self::monomial(s, Q::one(), 1)
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, c: &Q) -> Self {
        AlgebraicScalar {
            s: self.s,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Sum over all `2s` conjugates `a ↦ J^i a`.
    pub fn trace(&self) -> Q {
        &self.coeffs[0] * qi(2 * self.s as i64)
    }

    /// Image under `a ↦ −a`.
    pub fn negate_generator(&self) -> Self {
        AlgebraicScalar {
            s: self.s,
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| if k % 2 == 1 { -c } else { c.clone() })
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(self.s), |acc, _| &acc * self)
    }

    /// Multiplicative inverse; `None` for zero divisors.
    pub fn inverse(&self) -> Option<Self> {
        let nz: Vec<usize> = (0..self.coeffs.len())
            .filter(|&k| !self.coeffs[k].is_zero())
            .collect();
        if nz.len() == 1 {
            let k = nz[0];
            return Some(Self::monomial(self.s, self.coeffs[k].recip(), -(k as i64)));
        }
        let n = self.coeffs.len();
        let mut matrix = vec![vec![Q::zero(); n]; n];
        for j in 0..n {
            let col = self * &Self::monomial(self.s, Q::one(), j as i64);
            for i in 0..n {
                matrix[i][j] = col.coeffs[i].clone();
            }
        }
        let mut rhs = vec![Q::zero(); n];
        rhs[0] = Q::one();
        let (x, rank) = linalg::solve(&matrix, &rhs)?;
        if rank < n {
            return None;
        }
        Some(AlgebraicScalar {
            s: self.s,
            coeffs: x,
        })
    }
}

impl Add for &AlgebraicScalar {
    type Output = AlgebraicScalar;
    fn add(self, o: &AlgebraicScalar) -> AlgebraicScalar {
        AlgebraicScalar {
            s: self.s,
            coeffs: self
                .coeffs
                .iter()
                .zip(&o.coeffs)
                .map(|(x, y)| x + y)
                .collect(),
        }
    }
}

impl Sub for &AlgebraicScalar {
    type Output = AlgebraicScalar;
    fn sub(self, o: &AlgebraicScalar) -> AlgebraicScalar {
        AlgebraicScalar {
            s: self.s,
            coeffs: self
                .coeffs
                .iter()
                .zip(&o.coeffs)
                .map(|(x, y)| x - y)
                .collect(),
        }
    }
}

impl Neg for &AlgebraicScalar {
    type Output = AlgebraicScalar;
    fn neg(self) -> AlgebraicScalar {
        AlgebraicScalar {
            s: self.s,
            coeffs: self.coeffs.iter().map(|x| -x).collect(),
        }
    }
}

impl Mul for &AlgebraicScalar {
    type Output = AlgebraicScalar;
    fn mul(self, o: &AlgebraicScalar) -> AlgebraicScalar {
        let n = self.coeffs.len();
        let wrap = qi(n as i64).recip();
        let mut out = vec![Q::zero(); n];
        for (i, x) in self.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in o.coeffs.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let p = x * y;
                if i + j < n {
                    out[i + j] += p;
                } else {
                    out[i + j - n] += p * &wrap;
                }
            }
        }
        AlgebraicScalar {
            s: self.s,
            coeffs: out,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    #[test]
    fn relation_and_inverse() {
        for s in 1..4 {
            let a = AlgebraicScalar::generator(s);
            assert_eq!(
                a.pow(2 * s),
                AlgebraicScalar::from_rational(s, q(1, 2 * s as i64))
            );
            let inv = a.inverse().unwrap();
            assert_eq!(&inv * &a, AlgebraicScalar::one(s));
            let x = &AlgebraicScalar::one(s) + &a.pow(2);
            if let Some(y) = x.inverse() {
                assert_eq!(&x * &y, AlgebraicScalar::one(s));
            }
        }
    }

    #[test]
    fn trace_matches_cyclotomic_sums() {
        // Σ_i J^{ik} = 2s·[2s | k], so Tr(a^k) = 2s·(2s)^{−k/2s} when 2s | k.
        for s in 1..4u32 {
            for k in 0..(6 * s as i64) {
                let t = AlgebraicScalar::monomial(s, Q::one(), k).trace();
                let expected = if k % (2 * s as i64) == 0 {
                    qi(2 * s as i64) * crate::rational::qpow(&qi(2 * s as i64), -k / (2 * s as i64))
                } else {
                    Q::zero()
                };
                assert_eq!(t, expected);
            }
        }
    }
}
