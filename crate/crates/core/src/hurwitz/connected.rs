//! Connected numbers by the formal logarithm of the disconnected generating series.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::partitions::{Partition, PartitionClass};
use crate::rational::{pow2, qb, qi, Q};

use super::{double_b, double_by_b, genus_from_b, single_b, single_by_b};

/// A Hurwitz query; `nu = None` asks for single numbers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HurwitzQuery {
    pub g: u32,
    pub r: u32,
    pub mu: Partition,
    pub nu: Option<Partition>,
    pub connected: bool,
}

/// Monomial `t^b p_μ q_ν`.
type Key = (u32, Partition, Partition);

/// Truncated series `Σ h• 2^{g−1} t^b p_μ q_ν / (|Aut μ| |Aut ν|)`, restricted to
/// monomials dividing a fixed target.
#[derive(Clone, Debug, Default)]
pub struct GeneratingSeries {
    coeffs: BTreeMap<Key, Q>,
}

impl GeneratingSeries {
    pub fn coeff(&self, b: u32, mu: &Partition, nu: &Partition) -> Q {
        self.coeffs
            .get(&(b, mu.clone(), nu.clone()))
            .cloned()
            .unwrap_or_else(Q::zero)
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn mul_bounded(&self, other: &Self, bound: &Key) -> Self {
        let mut out = BTreeMap::new();
        for ((b1, m1, n1), c1) in &self.coeffs {
            for ((b2, m2, n2), c2) in &other.coeffs {
                let b = b1 + b2;
                if b > bound.0 {
                    continue;
                }
                let m = m1.union(m2);
                let n = n1.union(n2);
                if bound.1.minus(&m).is_none() || bound.2.minus(&n).is_none() {
                    continue;
                }
                *out.entry((b, m, n)).or_insert_with(Q::zero) += c1 * c2;
            }
        }
        out.retain(|_, c: &mut Q| !c.is_zero());
        GeneratingSeries { coeffs: out }
    }

    /// Formal logarithm of `1 + self`, truncated to monomials dividing `bound`.
    fn log1p_bounded(&self, bound: &Key) -> Self {
        let max_power = bound.1.len().max(1);
        let mut result: BTreeMap<Key, Q> = BTreeMap::new();
        let mut power = self.clone();
        for k in 1..=max_power {
            let sign = if k % 2 == 1 { Q::one() } else { -Q::one() };
            for (key, c) in &power.coeffs {
                *result.entry(key.clone()).or_insert_with(Q::zero) += &sign * c / qi(k as i64);
            }
            if k < max_power {
                power = power.mul_bounded(self, bound);
                if power.is_empty() {
                    break;
                }
            }
        }
        result.retain(|_, c| !c.is_zero());
        GeneratingSeries { coeffs: result }
    }
}

/// Disconnected part of the series below the target `(b, μ)` for single numbers
/// (the `ν` slot stays empty).
fn single_series(b: u32, mu: &Partition, r: u32) -> Result<GeneratingSeries> {
    let mut coeffs = BTreeMap::new();
    for sub in mu.sub_multisets() {
        if sub.is_empty() {
            continue;
        }
        for bb in 0..=b {
            let g = genus_from_b(bb, sub.len() as i64 + sub.size() as i64, r);
            let h = single_by_b(bb, &sub, r)?;
            if h.is_zero() {
                continue;
            }
            let c = h * pow2(g - 1) / qb(sub.aut_order());
            coeffs.insert((bb, sub.clone(), Partition::empty()), c);
        }
    }
    Ok(GeneratingSeries { coeffs })
}

fn double_series(b: u32, mu: &Partition, nu: &Partition, r: u32) -> Result<GeneratingSeries> {
    let mut coeffs = BTreeMap::new();
    let nu_subs = nu.sub_multisets();
    for sm in mu.sub_multisets() {
        if sm.is_empty() {
            continue;
        }
        for sn in nu_subs.iter().filter(|sn| sn.size() == sm.size()) {
            for bb in 0..=b {
                let g = genus_from_b(bb, sm.len() as i64 + sn.len() as i64, r);
                let h = double_by_b(bb, &sm, sn, r)?;
                if h.is_zero() {
                    continue;
                }
                let c = h * pow2(g - 1) / qb(sm.aut_order() * sn.aut_order());
                coeffs.insert((bb, sm.clone(), sn.clone()), c);
            }
        }
    }
    Ok(GeneratingSeries { coeffs })
}

/// Connected spin single Hurwitz numbers `h°_{g;μ}`.
pub fn connected_single(g: u32, mu: &Partition, r: u32) -> Result<Q> {
    mu.require(PartitionClass::Odd)?;
    let b = single_b(g as i64, mu, r)?;
    if mu.len() <= 1 {
        return single_by_b(b, mu, r);
    }
    let series = single_series(b, mu, r)?;
    let bound = (b, mu.clone(), Partition::empty());
    let log = series.log1p_bounded(&bound);
    let c = log.coeff(b, mu, &Partition::empty());
    Ok(c * qb(mu.aut_order()) * pow2(1 - g as i64))
}

/// Connected spin double Hurwitz numbers `h°_{g;μ,ν}`.
pub fn connected_double(g: u32, mu: &Partition, nu: &Partition, r: u32) -> Result<Q> {
    mu.require(PartitionClass::Odd)?;
    nu.require(PartitionClass::Odd)?;
    if mu.size() != nu.size() {
        return Err(Error::SizeMismatch(mu.size(), nu.size()));
    }
    let b = double_b(g as i64, mu, nu, r)?;
    if mu.len() <= 1 || nu.len() <= 1 {
        return double_by_b(b, mu, nu, r);
    }
    let series = double_series(b, mu, nu, r)?;
    let bound = (b, mu.clone(), nu.clone());
    let log = series.log1p_bounded(&bound);
    let c = log.coeff(b, mu, nu);
    Ok(c * qb(mu.aut_order() * nu.aut_order()) * pow2(1 - g as i64))
}

/// Dispatches a query to the connected or disconnected character route.
pub fn connected(query: &HurwitzQuery) -> Result<Q> {
    match (&query.nu, query.connected) {
        (None, true) => connected_single(query.g, &query.mu, query.r),
        (None, false) => super::spin_single_disconnected(query.g, &query.mu, query.r),
        (Some(nu), true) => connected_double(query.g, &query.mu, nu, query.r),
        (Some(nu), false) => super::spin_double_disconnected(query.g, &query.mu, nu, query.r),
    }
}
