//! Sparse multivariate polynomials over ℚ.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::rational::Q;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Q>,
}

impl MPoly {
    pub fn zero(nvars: usize) -> Self {
        MPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Q) -> Self {
        Self::monomial(vec![0; nvars], c)
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Q::one())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(e, Q::one())
    }

    pub fn monomial(exps: Vec<u32>, c: Q) -> Self {
        let mut p = Self::zero(exps.len());
        p.add_term(exps, c);
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, Q> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, exps: Vec<u32>, c: Q) {
        debug_assert_eq!(exps.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }

    pub fn scale(&self, c: &Q) -> MPoly {
        if c.is_zero() {
            return MPoly::zero(self.nvars);
        }
        MPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect(),
        }
    }

    pub fn mul(&self, other: &MPoly) -> MPoly {
        debug_assert_eq!(self.nvars, other.nvars);
        let mut out = MPoly::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> MPoly {
        let mut acc = MPoly::one(self.nvars);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|e| e[i]).max().unwrap_or(0)
    }

    /// Coefficients of the powers of variable `i`, with that variable removed from the exponents.
    pub fn coefficients_in(&self, i: usize) -> Vec<MPoly> {
        let deg = self.degree_in(i) as usize;
        let mut out = vec![MPoly::zero(self.nvars); deg + 1];
        for (e, c) in &self.terms {
            let mut f = e.clone();
            let k = f[i] as usize;
            f[i] = 0;
            out[k].add_term(f, c.clone());
        }
        out
    }

    /// Renames variable `j` to `mapping[j]` in a ring of `nvars` variables.
    pub fn embed(&self, nvars: usize, mapping: &[usize]) -> MPoly {
        let mut out = MPoly::zero(nvars);
        for (e, c) in &self.terms {
            let mut f = vec![0; nvars];
            for (j, &k) in e.iter().enumerate() {
                f[mapping[j]] += k;
            }
            out.add_term(f, c.clone());
        }
        out
    }

    /// Substitutes `-x_i` for `x_i`.
    pub fn negate_var(&self, i: usize) -> MPoly {
        MPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), if e[i] % 2 == 1 { -c } else { c.clone() }))
                .collect(),
        }
    }

    pub fn derivative(&self, i: usize) -> MPoly {
        let mut out = MPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut f = e.clone();
            f[i] -= 1;
            out.add_term(f, c * Q::from_integer(e[i].into()));
        }
        out
    }

    pub fn eval(&self, x: &[Q]) -> Q {
        self.terms
            .iter()
            .map(|(e, c)| {
                e.iter().zip(x).fold(c.clone(), |acc, (&k, v)| {
                    acc * num_traits::pow(v.clone(), k as usize)
                })
            })
            .sum()
    }

    /// Exact quotient by `divisor`, viewed as polynomials in variable `i`; `None` if not divisible.
    /// The divisor's leading coefficient in `i` must be a nonzero constant.
    pub fn div_exact_in(&self, divisor: &MPoly, i: usize) -> Option<MPoly> {
        let dcoef = divisor.coefficients_in(i);
        let ddeg = dcoef.len() - 1;
        let lead = dcoef[ddeg].terms.get(&vec![0; self.nvars]).cloned()?;
        assert_eq!(
            dcoef[ddeg].terms.len(),
            1,
            "leading coefficient must be constant"
        );
        let mut rem = self.clone();
        let mut quot = MPoly::zero(self.nvars);
        loop {
            if rem.is_zero() {
                return Some(quot);
            }
            let deg = rem.degree_in(i) as usize;
            if deg < ddeg {
                return None;
            }
            let top = rem.coefficients_in(i).swap_remove(deg).scale(&lead.recip());
            let mut shift = vec![0; self.nvars];
            shift[i] = (deg - ddeg) as u32;
            let t = top.mul(&MPoly::monomial(shift, Q::one()));
            quot = quot.add(&t);
            rem = rem.sub(&t.mul(divisor));
        }
    }
}
