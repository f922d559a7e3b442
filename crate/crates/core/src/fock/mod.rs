//! Neutral fermions, the type-B Fock space and quadratic operators acting on it.
//!
//! States are stored on unnormalized monomials `φ_{i₁}⋯φ_{i_k}|0⟩` with
//! `i₁ > ⋯ > i_k ≥ 0`; the `√2` normalization of odd-length basis vectors is never applied.

mod operators;
mod vev;

pub use operators::{
    apply, apply_alpha, apply_cutjoin, basis_up_to, commutator_check, cutjoin_eigen_check,
    e_coefficient, heisenberg_check, parity_check, Operator,
};
pub use vev::{
    alpha_negative_product_expansion, one_part_fd_matches_operator, vev_spin_double,
    vev_spin_double_via_e0, vev_spin_single,
};

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::ops::{Add, Sub};

use num_traits::{One, Zero};

use crate::rational::{q, Q};

/// Strictly decreasing list of non-negative fermion indices.
pub type Monomial = Vec<u32>;

/// Finite rational combination of monomials applied to the vacuum.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CliffordState {
    terms: BTreeMap<Monomial, Q>,
}

impl CliffordState {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn vacuum() -> Self {
        Self::monomial(Vec::new(), Q::one())
    }

    /// `c · φ_{i₁}⋯φ_{i_k}|0⟩`; the indices must be strictly decreasing.
    pub fn monomial(indices: Monomial, c: Q) -> Self {
        assert!(
            indices.windows(2).all(|w| w[0] > w[1]),
            "indices must be strictly decreasing"
        );
        let mut s = Self::zero();
        s.add_term(indices, c);
        s
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Q> {
        &self.terms
    }

    pub fn coeff(&self, m: &[u32]) -> Q {
        self.terms.get(m).cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, m: Monomial, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
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

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        CliffordState {
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    /// Largest index in any monomial.
    pub fn max_index(&self) -> u32 {
        self.terms
            .keys()
            .filter_map(|m| m.first().copied())
            .max()
            .unwrap_or(0)
    }

    /// Keeps only monomials of the given energy (sum of indices).
    pub fn energy_component(&self, energy: u32) -> Self {
        CliffordState {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.iter().sum::<u32>() == energy)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }
}

impl Add for &CliffordState {
    type Output = CliffordState;
    fn add(self, rhs: &CliffordState) -> CliffordState {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &CliffordState {
    type Output = CliffordState;
    fn sub(self, rhs: &CliffordState) -> CliffordState {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

fn sign(odd: bool) -> Q {
    if odd {
        -Q::one()
    } else {
        Q::one()
    }
}

/// `φ_k` applied to a single monomial, using `{φ_k, φ_l} = (−1)^k δ_{k+l}`,
/// `φ_0² = 1/2` and `φ_{<0}|0⟩ = 0`.
fn phi_on_monomial(k: i64, m: &[u32], c: &Q, out: &mut CliffordState) {
    if k < 0 {
        let target = (-k) as u32;
        if let Some(j) = m.iter().position(|&x| x == target) {
            let mut rest = m.to_vec();
            rest.remove(j);
            out.add_term(rest, c * sign(j % 2 == 1) * sign(k % 2 != 0));
        }
        return;
    }
    let k = k as u32;
    let pos = m.iter().position(|&x| x <= k).unwrap_or(m.len());
    if pos < m.len() && m[pos] == k {
        if k == 0 {
            // φ_0 φ_0 = 1/2
            let mut rest = m.to_vec();
            rest.pop();
            out.add_term(rest, c * sign(pos % 2 == 1) * q(1, 2));
        }
        return;
    }
    let mut v = m.to_vec();
    v.insert(pos, k);
    out.add_term(v, c * sign(pos % 2 == 1));
}

/// Left multiplication by `φ_k`.
pub fn apply_phi(k: i64, s: &CliffordState) -> CliffordState {
    let mut out = CliffordState::zero();
    for (m, c) in &s.terms {
        phi_on_monomial(k, m, c, &mut out);
    }
    out
}

/// Vacuum expectation value: the coefficient of the empty monomial.
pub fn vev(s: &CliffordState) -> Q {
    s.coeff(&[])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qi;

    #[test]
    fn phi_rules() {
        assert!(apply_phi(-1, &CliffordState::vacuum()).is_zero());
        let s = apply_phi(0, &apply_phi(0, &CliffordState::vacuum()));
        assert_eq!(s, CliffordState::vacuum().scale(&q(1, 2)));
        let s = apply_phi(3, &apply_phi(1, &CliffordState::vacuum()));
        assert_eq!(s, CliffordState::monomial(vec![3, 1], qi(1)));
        let s = apply_phi(1, &apply_phi(3, &CliffordState::vacuum()));
        assert_eq!(s, CliffordState::monomial(vec![3, 1], qi(-1)));
    }

    #[test]
    fn two_point_vevs() {
        for l in -4i64..=4 {
            for k in -4i64..=4 {
                let v = vev(&apply_phi(k, &apply_phi(l, &CliffordState::vacuum())));
                let expected = if k + l != 0 {
                    qi(0)
                } else if l > 0 {
                    sign(l % 2 != 0)
                } else if l == 0 {
                    q(1, 2)
                } else {
                    qi(0)
                };
                assert_eq!(v, expected, "<φ_{k} φ_{l}>");
            }
        }
    }
}
