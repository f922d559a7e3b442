use num_traits::One;

use crate::poly::MPoly;
use crate::rational::{qi, Q};

/// A stable correlator `ω_{g,n} = N(z) / ∏ D(z_i)^{e_i} dz_1⋯dz_n` with `D(z) = 1 − 2s z^{2s}`.
#[derive(Clone, Debug)]
pub struct Correlator {
    pub g: u32,
    pub n: usize,
    pub s: u32,
    num: MPoly,
    exps: Vec<u32>,
}

impl Correlator {
    pub fn new(g: u32, s: u32, num: MPoly, exps: Vec<u32>) -> Self {
        let mut c = Correlator {
            g,
            n: exps.len(),
            s,
            num,
            exps,
        };
        c.cancel_common_factors();
        c
    }

    pub fn numerator(&self) -> &MPoly {
        &self.num
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn d_poly(&self, i: usize) -> MPoly {
        let mut e = vec![0; self.n];
        e[i] = 2 * self.s;
        MPoly::one(self.n).sub(&MPoly::monomial(e, qi(2 * self.s as i64)))
    }

    fn cancel_common_factors(&mut self) {
        for i in 0..self.n {
            let d = self.d_poly(i);
            while self.exps[i] > 0 {
                match self.num.div_exact_in(&d, i) {
                    Some(q) => {
                        self.num = q;
                        self.exps[i] -= 1;
                    }
                    None => break,
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Largest pole order at the ramification points across all variables.
    pub fn max_pole_order(&self) -> u32 {
        self.exps.iter().copied().max().unwrap_or(0)
    }

    pub fn eval(&self, z: &[Q]) -> Q {
        let mut den = Q::one();
        for (i, &e) in self.exps.iter().enumerate() {
            let d = Q::one()
                - qi(2 * self.s as i64) * num_traits::pow(z[i].clone(), 2 * self.s as usize);
            den *= num_traits::pow(d, e as usize);
        }
        self.num.eval(z) / den
    }

    fn with_exponents(&self, exps: &[u32]) -> MPoly {
        let mut num = self.num.clone();
        for i in 0..self.n {
            if exps[i] > self.exps[i] {
                num = num.mul(&self.d_poly(i).pow(exps[i] - self.exps[i]));
            }
        }
        num
    }

    /// Equality as rational functions.
    pub fn same_function(&self, other: &Correlator) -> bool {
        if self.n != other.n || self.s != other.s {
            return false;
        }
        let exps: Vec<u32> = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| *a.max(b))
            .collect();
        self.with_exponents(&exps) == other.with_exponents(&exps)
    }

    pub fn add(&self, other: &Correlator) -> Correlator {
        let exps: Vec<u32> = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| *a.max(b))
            .collect();
        Correlator::new(
            self.g,
            self.s,
            self.with_exponents(&exps).add(&other.with_exponents(&exps)),
            exps,
        )
    }

    pub fn scale(&self, c: &Q) -> Correlator {
        Correlator {
            num: self.num.scale(c),
            ..self.clone()
        }
    }

    pub fn mul_poly(&self, p: &MPoly) -> Correlator {
        Correlator::new(self.g, self.s, self.num.mul(p), self.exps.clone())
    }

    /// Multiplies by `D(z_i)^{-k}`.
    pub fn div_d(&self, i: usize, k: u32) -> Correlator {
        let mut exps = self.exps.clone();
        exps[i] += k;
        Correlator::new(self.g, self.s, self.num.clone(), exps)
    }

    /// `∂/∂z_i` of the coefficient function.
    pub fn derivative(&self, i: usize) -> Correlator {
        let e = self.exps[i];
        let d = self.d_poly(i);
        let num = self
            .num
            .derivative(i)
            .mul(&d)
            .sub(&self.num.mul(&d.derivative(i)).scale(&qi(e as i64)));
        let mut exps = self.exps.clone();
        exps[i] += 1;
        Correlator::new(self.g, self.s, num, exps)
    }

    /// Reorders the variables: variable `j` becomes variable `perm[j]`.
    pub fn permuted(&self, perm: &[usize]) -> Correlator {
        let mut exps = vec![0; self.n];
        for (j, &p) in perm.iter().enumerate() {
            exps[p] = self.exps[j];
        }
        Correlator {
            num: self.num.embed(self.n, perm),
            exps,
            ..self.clone()
        }
    }

    /// `z_i ↦ −z_i` on the coefficient function.
    pub fn reflected(&self, i: usize) -> Correlator {
        Correlator {
            num: self.num.negate_var(i),
            ..self.clone()
        }
    }

    /// True when the coefficient function is even in every variable, i.e. the
    /// form changes sign under each `z_i ↦ −z_i`.
    pub fn is_equivariant(&self) -> bool {
        (0..self.n).all(|i| self.reflected(i).same_function(self))
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| {
            (i + 1..self.n).all(|j| {
                let mut perm: Vec<usize> = (0..self.n).collect();
                perm.swap(i, j);
                self.permuted(&perm).same_function(self)
            })
        })
    }
}

/// `ω_{1,1} = d[(sz/D · d/dz + 1) · s z^{2s−1}/(12 D)]`.
pub fn omega_11_closed_form(s: u32) -> Correlator {
    let sq = qi(s as i64);
    let f = Correlator::new(
        1,
        s,
        MPoly::monomial(vec![2 * s - 1], &sq / qi(12)),
        vec![1],
    );
    let zf = f
        .derivative(0)
        .mul_poly(&MPoly::monomial(vec![1], sq))
        .div_d(0, 1);
    let h = zf.add(&f);
    h.derivative(0)
}
