//! Truncated Laurent series at a generic ramification point.
//!
//! Coefficients are rational functions of the spectator variables: a numerator
//! polynomial in `(a, z_1, …, z_n)` over `∏ D̃(z_i)^{e_i}` with
//! `D̃(z) = z^{2s} − 1/(2s)`.

use num_traits::One;

use super::algebra::AlgebraicScalar;
use crate::error::{Error, Result};
use crate::poly::MPoly;
use crate::rational::{qi, Q};

/// Arithmetic context: `s` and the number `n` of outer variables.
#[derive(Clone, Debug)]
pub struct Ring {
    pub s: u32,
    pub n: usize,
    dtilde_powers: Vec<Vec<MPoly>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecFn {
    pub num: MPoly,
    pub den: Vec<u32>,
}

impl Ring {
    pub fn new(s: u32, n: usize) -> Self {
        let nv = n + 1;
        let dtilde_powers = (0..n)
            .map(|i| {
                let mut e = vec![0; nv];
                e[i + 1] = 2 * s;
                let d = MPoly::monomial(e, Q::one())
                    .sub(&MPoly::constant(nv, qi(2 * s as i64).recip()));
                vec![MPoly::one(nv), d]
            })
            .collect();
        Ring {
            s,
            n,
            dtilde_powers,
        }
    }

    pub fn nvars(&self) -> usize {
        self.n + 1
    }

    fn dtilde_pow(&self, i: usize, k: u32) -> MPoly {
        let list = &self.dtilde_powers[i];
        if (k as usize) < list.len() {
            return list[k as usize].clone();
        }
        list[1].pow(k)
    }

    /// Folds powers of `a` back below `2s`.
    pub fn reduce(&self, p: MPoly) -> MPoly {
        let two_s = 2 * self.s;
        if p.degree_in(0) < two_s {
            return p;
        }
        let inv = qi(two_s as i64).recip();
        let mut out = MPoly::zero(p.nvars());
        for (e, c) in p.terms() {
            let mut f = e.clone();
            let q = f[0] / two_s;
            f[0] %= two_s;
            out.add_term(f, c * num_traits::pow(inv.clone(), q as usize));
        }
        out
    }

    pub fn zero(&self) -> SpecFn {
        SpecFn {
            num: MPoly::zero(self.nvars()),
            den: vec![0; self.n],
        }
    }

    pub fn constant(&self, c: Q) -> SpecFn {
        SpecFn {
            num: MPoly::constant(self.nvars(), c),
            den: vec![0; self.n],
        }
    }

    pub fn scalar(&self, x: &AlgebraicScalar) -> SpecFn {
        let mut num = MPoly::zero(self.nvars());
        for (k, c) in x.coeffs().iter().enumerate() {
            let mut e = vec![0; self.nvars()];
            e[0] = k as u32;
            num.add_term(e, c.clone());
        }
        SpecFn {
            num,
            den: vec![0; self.n],
        }
    }

    /// `1/(z_i ∓ a)^m` written as `Q(z_i, ±a)^m / D̃(z_i)^m`.
    pub fn inverse_power_of_difference(&self, i: usize, plus_a: bool, m: u32) -> SpecFn {
        let nv = self.nvars();
        let two_s = 2 * self.s;
        let mut qpoly = MPoly::zero(nv);
        for j in 0..two_s {
            let mut e = vec![0; nv];
            e[0] = j;
            e[i + 1] = two_s - 1 - j;
            let sign = if plus_a && j % 2 == 1 {
                -Q::one()
            } else {
                Q::one()
            };
            qpoly.add_term(e, sign);
        }
        let mut den = vec![0; self.n];
        den[i] = m;
        SpecFn {
            num: self.reduce(qpoly.pow(m)),
            den,
        }
    }

    fn align(&self, x: &SpecFn, den: &[u32]) -> MPoly {
        let mut num = x.num.clone();
        for i in 0..self.n {
            if den[i] > x.den[i] {
                num = num.mul(&self.dtilde_pow(i, den[i] - x.den[i]));
            }
        }
        num
    }

    pub fn add(&self, x: &SpecFn, y: &SpecFn) -> SpecFn {
        if x.num.is_zero() {
            return y.clone();
        }
        if y.num.is_zero() {
            return x.clone();
        }
        let den: Vec<u32> = x.den.iter().zip(&y.den).map(|(a, b)| *a.max(b)).collect();
        let num = self.reduce(self.align(x, &den).add(&self.align(y, &den)));
        SpecFn { num, den }
    }

    pub fn sub_fn(&self, x: &SpecFn, y: &SpecFn) -> SpecFn {
        self.add(x, &self.neg(y))
    }

    pub fn neg(&self, x: &SpecFn) -> SpecFn {
        SpecFn {
            num: x.num.scale(&-Q::one()),
            den: x.den.clone(),
        }
    }

    pub fn mul(&self, x: &SpecFn, y: &SpecFn) -> SpecFn {
        if x.num.is_zero() || y.num.is_zero() {
            return self.zero();
        }
        SpecFn {
            num: self.reduce(x.num.mul(&y.num)),
            den: x.den.iter().zip(&y.den).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn scale(&self, x: &SpecFn, c: &Q) -> SpecFn {
        SpecFn {
            num: x.num.scale(c),
            den: x.den.clone(),
        }
    }

    /// The inverse of `c·a^k` with no spectator dependence.
    fn unit_inverse(&self, x: &SpecFn) -> Result<SpecFn> {
        let terms = x.num.terms();
        let unit = terms.len() == 1
            && x.den.iter().all(|&e| e == 0)
            && terms
                .keys()
                .next()
                .is_some_and(|e| e[1..].iter().all(|&k| k == 0));
        if !unit {
            return Err(Error::Domain("leading coefficient is not a unit".into()));
        }
        let (e, c) = terms.iter().next().expect("one term");
        let inv = AlgebraicScalar::monomial(self.s, c.recip(), -(e[0] as i64));
        Ok(self.scalar(&inv))
    }

    pub fn series_zero(&self, val: i64, len: usize) -> LocalSeries {
        LocalSeries {
            val,
            coeffs: vec![self.zero(); len],
        }
    }

    /// The local coordinate `ζ` itself, known to relative length `len`.
    pub fn coordinate(&self, len: usize) -> LocalSeries {
        let mut s = self.series_zero(1, len);
        s.coeffs[0] = self.constant(Q::one());
        s
    }

    pub fn series_from_scalars(&self, val: i64, coeffs: &[AlgebraicScalar]) -> LocalSeries {
        LocalSeries {
            val,
            coeffs: coeffs.iter().map(|c| self.scalar(c)).collect(),
        }
    }

    pub fn series_add(&self, f: &LocalSeries, g: &LocalSeries) -> LocalSeries {
        let val = f.val.min(g.val);
        let prec = f.precision().min(g.precision());
        let len = (prec - val).max(0) as usize;
        let coeffs = (0..len)
            .map(|i| {
                let k = val + i as i64;
                self.add(&f.coeff_or_zero(self, k), &g.coeff_or_zero(self, k))
            })
            .collect();
        LocalSeries { val, coeffs }
    }

    pub fn series_neg(&self, f: &LocalSeries) -> LocalSeries {
        LocalSeries {
            val: f.val,
            coeffs: f.coeffs.iter().map(|c| self.neg(c)).collect(),
        }
    }

    pub fn series_sub(&self, f: &LocalSeries, g: &LocalSeries) -> LocalSeries {
        self.series_add(f, &self.series_neg(g))
    }

    pub fn series_scale(&self, f: &LocalSeries, c: &SpecFn) -> LocalSeries {
        LocalSeries {
            val: f.val,
            coeffs: f.coeffs.iter().map(|x| self.mul(x, c)).collect(),
        }
    }

    pub fn series_mul(&self, f: &LocalSeries, g: &LocalSeries) -> LocalSeries {
        let len = f.coeffs.len().min(g.coeffs.len());
        let mut coeffs = vec![self.zero(); len];
        for (i, fi) in f.coeffs.iter().enumerate().take(len) {
            if fi.num.is_zero() {
                continue;
            }
            for (j, gj) in g.coeffs.iter().enumerate().take(len - i) {
                if gj.num.is_zero() {
                    continue;
                }
                coeffs[i + j] = self.add(&coeffs[i + j], &self.mul(fi, gj));
            }
        }
        LocalSeries {
            val: f.val + g.val,
            coeffs,
        }
    }

    pub fn series_pow(&self, f: &LocalSeries, k: u32) -> LocalSeries {
        let mut acc = LocalSeries {
            val: 0,
            coeffs: vec![self.constant(Q::one()); 1],
        };
        acc.coeffs.resize(f.coeffs.len(), self.zero());
        for _ in 0..k {
            acc = self.series_mul(&acc, f);
        }
        acc
    }

    /// Inverse of a series whose leading coefficient is a unit of the scalar ring.
    pub fn series_inverse(&self, f: &LocalSeries) -> Result<LocalSeries> {
        let f = f.normalized();
        let Some(lead) = f.coeffs.first() else {
            return Err(Error::Truncation(
                "inverting a series with no known coefficients".into(),
            ));
        };
        let inv0 = self.unit_inverse(lead)?;
        let len = f.coeffs.len();
        let mut out = vec![self.zero(); len];
        out[0] = inv0.clone();
        for k in 1..len {
            let mut acc = self.zero();
            for j in 1..=k {
                acc = self.add(&acc, &self.mul(&f.coeffs[j], &out[k - j]));
            }
            out[k] = self.neg(&self.mul(&acc, &inv0));
        }
        Ok(LocalSeries {
            val: -f.val,
            coeffs: out,
        })
    }

    /// `Σ_p c_p T^p` for a polynomial with coefficients `c_p`.
    pub fn substitute(&self, coeffs: &[SpecFn], t: &LocalSeries) -> LocalSeries {
        let len = t.coeffs.len();
        let mut acc = self.series_zero(0, len);
        for c in coeffs.iter().rev() {
            acc = self.series_mul(&acc, t);
            acc = self.series_add(&acc, &LocalSeries::constant_term(self, c, len));
        }
        acc
    }

    pub fn series_derivative(&self, f: &LocalSeries) -> LocalSeries {
        LocalSeries {
            val: f.val - 1,
            coeffs: f
                .coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| self.scale(c, &qi(f.val + i as i64)))
                .collect(),
        }
    }

    /// Coefficient of `ζ^{−1}`.
    pub fn residue(&self, f: &LocalSeries) -> Result<SpecFn> {
        if f.precision() <= -1 {
            return Err(Error::Truncation(format!(
                "residue needs the coefficient of ζ^-1 but the series is only known below ζ^{}",
                f.precision()
            )));
        }
        Ok(f.coeff_or_zero(self, -1))
    }
}

/// `Σ_{i} c_i ζ^{val+i} + O(ζ^{val+len})`.
#[derive(Clone, Debug)]
pub struct LocalSeries {
    pub val: i64,
    pub coeffs: Vec<SpecFn>,
}

impl LocalSeries {
    fn constant_term(ring: &Ring, c: &SpecFn, len: usize) -> LocalSeries {
        let mut s = ring.series_zero(0, len);
        if len > 0 {
            s.coeffs[0] = c.clone();
        }
        s
    }

    /// First exponent not known.
    pub fn precision(&self) -> i64 {
        self.val + self.coeffs.len() as i64
    }

    pub fn coeff_or_zero(&self, ring: &Ring, k: i64) -> SpecFn {
        if k < self.val || k >= self.precision() {
            return ring.zero();
        }
        self.coeffs[(k - self.val) as usize].clone()
    }

    /// Drops vanishing leading coefficients.
    pub fn normalized(&self) -> LocalSeries {
        let skip = self.coeffs.iter().take_while(|c| c.num.is_zero()).count();
        LocalSeries {
            val: self.val + skip as i64,
            coeffs: self.coeffs[skip..].to_vec(),
        }
    }

    /// Scalar coefficients, for series with no spectator dependence.
    pub fn scalar_coeffs(&self, s: u32) -> Vec<AlgebraicScalar> {
        self.coeffs
            .iter()
            .map(|c| {
                let mut x = AlgebraicScalar::zero(s);
                for (e, v) in c.num.terms() {
                    let k = e[0] as i64;
                    x = &x + &AlgebraicScalar::monomial(s, v.clone(), k);
                }
                x
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.num.is_zero())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_roundtrip() {
        let ring = Ring::new(2, 1);
        let a = ring.scalar(&AlgebraicScalar::generator(2));
        let mut f = ring.coordinate(8);
        f.coeffs[1] = a.clone();
        f.coeffs[3] = ring.constant(qi(5));
        let g = ring.series_inverse(&f).unwrap();
        let prod = ring.series_mul(&f, &g);
        assert_eq!(prod.val, 0);
        assert_eq!(prod.coeffs[0], ring.constant(Q::one()));
        assert!(prod.coeffs[1..].iter().all(|c| c.num.is_zero()));
    }

    #[test]
    fn difference_inverse() {
        // (z − a) · Q(z, a) = D̃(z)
        let ring = Ring::new(2, 1);
        let f = ring.inverse_power_of_difference(0, false, 1);
        let mut lin = MPoly::var(2, 1);
        lin = lin.sub(&MPoly::var(2, 0));
        let prod = ring.reduce(f.num.mul(&lin));
        assert_eq!(prod, ring.dtilde_pow(0, 1));
    }
}
