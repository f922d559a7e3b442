//! Dense truncated power series with rational coefficients.

use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::rational::{factorial, qb, qi, Q};

/// `Σ_{k<order} c_k z^k + O(z^order)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<Q>,
}

impl TruncatedSeries {
    pub fn zero(order: usize) -> Self {
        TruncatedSeries {
            coeffs: vec![Q::zero(); order],
        }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        if order > 0 {
            s.coeffs[0] = Q::one();
        }
        s
    }

    /// The variable `z` itself.
    pub fn var(order: usize) -> Self {
        let mut s = Self::zero(order);
        if order > 1 {
            s.coeffs[1] = Q::one();
        }
        s
    }

    pub fn from_coeffs(mut coeffs: Vec<Q>, order: usize) -> Self {
        coeffs.resize(order, Q::zero());
        TruncatedSeries { coeffs }
    }

    pub fn from_fn(order: usize, f: impl Fn(usize) -> Q) -> Self {
        TruncatedSeries {
            coeffs: (0..order).map(f).collect(),
        }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, k: usize) -> Q {
        self.coeffs.get(k).cloned().unwrap_or_else(Q::zero)
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::from_coeffs(
            self.coeffs[..order.min(self.order())].to_vec(),
            order.min(self.order()),
        )
    }

    pub fn scale(&self, c: &Q) -> Self {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// `f(c·z)`.
    pub fn dilate(&self, c: &Q) -> Self {
        let mut pw = Q::one();
        let mut out = Vec::with_capacity(self.order());
        for x in &self.coeffs {
            out.push(x * &pw);
            pw *= c;
        }
        TruncatedSeries { coeffs: out }
    }

    /// Multiplication by `z^k`, keeping the order.
    pub fn shift(&self, k: usize) -> Self {
        let n = self.order();
        TruncatedSeries::from_fn(n, |i| if i >= k { self.coeff(i - k) } else { Q::zero() })
    }

    pub fn derivative(&self) -> Self {
        let n = self.order().saturating_sub(1);
        TruncatedSeries::from_fn(n, |i| self.coeff(i + 1) * qi(i as i64 + 1))
    }

    /// Multiplicative inverse; needs a nonzero constant term.
    pub fn inverse(&self) -> Self {
        let n = self.order();
        let c0 = self.coeff(0);
        assert!(!c0.is_zero(), "series inverse needs a unit constant term");
        let inv0 = c0.recip();
        let mut out = vec![Q::zero(); n];
        for k in 0..n {
            let mut acc = if k == 0 { Q::one() } else { Q::zero() };
            for j in 1..=k {
                acc -= &self.coeffs[j] * &out[k - j];
            }
            out[k] = acc * &inv0;
        }
        TruncatedSeries { coeffs: out }
    }

    /// `exp(f)` for `f(0) = 0`, via `n e_n = Σ k f_k e_{n−k}`.
    pub fn exp(&self) -> Self {
        assert!(self.coeff(0).is_zero(), "exp needs a zero constant term");
        let n = self.order();
        let mut out = vec![Q::zero(); n];
        if n == 0 {
            return TruncatedSeries { coeffs: out };
        }
        out[0] = Q::one();
        for m in 1..n {
            let mut acc = Q::zero();
            for k in 1..=m {
                acc += qi(k as i64) * &self.coeffs[k] * &out[m - k];
            }
            out[m] = acc / qi(m as i64);
        }
        TruncatedSeries { coeffs: out }
    }

    /// `log(f)` for `f(0) = 1`.
    pub fn log(&self) -> Self {
        assert!(self.coeff(0).is_one(), "log needs constant term one");
        let n = self.order();
        let q = &self.derivative() * &self.inverse().truncate(n.saturating_sub(1));
        let mut out = vec![Q::zero(); n];
        for k in 1..n {
            out[k] = q.coeff(k - 1) / qi(k as i64);
        }
        TruncatedSeries { coeffs: out }
    }

    /// `f^k` for integer `k ≥ 0`.
    pub fn powi(&self, k: u32) -> Self {
        let mut acc = Self::one(self.order());
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// `f(g)` for `g(0) = 0`.
    pub fn compose(&self, inner: &Self) -> Self {
        assert!(inner.coeff(0).is_zero(), "composition needs inner(0) = 0");
        let n = self.order().min(inner.order());
        let mut acc = Self::zero(n);
        let mut pw = Self::one(n);
        for k in 0..n {
            acc = &acc + &pw.scale(&self.coeff(k));
            pw = &pw * &inner.truncate(n);
        }
        acc
    }

    /// Evaluates the truncated polynomial at a rational point.
    pub fn eval(&self, x: &Q) -> Q {
        self.coeffs
            .iter()
            .rev()
            .fold(Q::zero(), |acc, c| acc * x + c)
    }
}

fn binary(a: &TruncatedSeries, b: &TruncatedSeries, f: impl Fn(&Q, &Q) -> Q) -> TruncatedSeries {
    let n = a.order().min(b.order());
    TruncatedSeries::from_fn(n, |i| f(&a.coeffs[i], &b.coeffs[i]))
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn add(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        binary(self, rhs, |x, y| x + y)
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn sub(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        binary(self, rhs, |x, y| x - y)
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn neg(self) -> TruncatedSeries {
        self.scale(&qi(-1))
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn mul(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let n = self.order().min(rhs.order());
        let mut out = vec![Q::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate().take(n) {
            if a.is_zero() {
                continue;
            }
            for j in 0..n - i {
                out[i + j] += a * &rhs.coeffs[j];
            }
        }
        TruncatedSeries { coeffs: out }
    }
}

fn inv_fact(k: usize) -> Q {
    Q::new(One::one(), factorial(k as u64))
}

/// `ς(z) = 2 sinh(z/2)`.
pub fn varsigma(order: usize) -> TruncatedSeries {
    TruncatedSeries::from_fn(order, |k| {
        if k % 2 == 1 {
            inv_fact(k) * crate::rational::pow2(1 - k as i64)
        } else {
            Q::zero()
        }
    })
}

/// `𝒮(z) = sinh(z/2)/(z/2)`.
pub fn script_s(order: usize) -> TruncatedSeries {
    TruncatedSeries::from_fn(order, |k| {
        if k % 2 == 0 {
            inv_fact(k + 1) * crate::rational::pow2(-(k as i64))
        } else {
            Q::zero()
        }
    })
}

/// `cosh(z/2)`.
pub fn cosh_half(order: usize) -> TruncatedSeries {
    TruncatedSeries::from_fn(order, |k| {
        if k % 2 == 0 {
            inv_fact(k) * crate::rational::pow2(-(k as i64))
        } else {
            Q::zero()
        }
    })
}

/// `ϙ(z) = cosh(z/2)/2`.
pub fn qoppa(order: usize) -> TruncatedSeries {
    cosh_half(order).scale(&crate::rational::q(1, 2))
}

/// `z·𝒦(z) = cosh(z/2)/2`; the series part of `𝒦(z) = cosh(z/2)/(2z)`.
pub fn script_k_times_z(order: usize) -> TruncatedSeries {
    qoppa(order)
}

/// `(1/4) coth(z/2)` multiplied by `z`, as a power series.
pub fn quarter_coth_times_z(order: usize) -> TruncatedSeries {
    // coth(z/2)/4 = ϙ(z)/ς(z), and ς(z)/z = 𝒮(z)
    &qoppa(order) * &script_s(order).inverse()
}

/// `e^{c z}`.
pub fn exp_linear(c: &Q, order: usize) -> TruncatedSeries {
    TruncatedSeries::from_fn(order, |k| crate::rational::qpow(c, k as i64) * inv_fact(k))
}

pub fn factorial_q(k: u64) -> Q {
    qb(factorial(k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    #[test]
    fn qoppa_expansion() {
        let s = qoppa(8);
        assert_eq!(s.coeff(0), q(1, 2));
        assert_eq!(s.coeff(2), q(1, 16));
        assert_eq!(s.coeff(4), q(1, 768));
        assert_eq!(s.coeff(6), q(1, 92160));
    }

    #[test]
    fn exp_log_roundtrip() {
        let f = TruncatedSeries::from_coeffs(vec![qi(0), qi(2), q(1, 3), qi(-1)], 8);
        assert_eq!(f.exp().log(), f);
    }

    #[test]
    fn inverse_is_inverse() {
        let f = script_s(10);
        assert_eq!(&f * &f.inverse(), TruncatedSeries::one(10));
    }
}
