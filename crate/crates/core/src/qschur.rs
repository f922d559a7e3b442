//! The algebra Γ = ℚ[p₁,p₃,…], Schur Q-functions and Sergeev characters.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{LazyLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::partitions::{enumerate, Partition, PartitionClass};
use crate::rational::{binomial, factorial, pow2, qb, qi, Q};

/// Sparse element of Γ in the power-sum basis.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GammaElement {
    terms: BTreeMap<Partition, Q>,
}

impl GammaElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(Partition::empty(), Q::one())
    }

    /// `c · p_μ`.
    pub fn monomial(mu: Partition, c: Q) -> Self {
        assert!(mu.is_odd(), "power sums are indexed by odd partitions");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(mu, c);
        }
        GammaElement { terms }
    }

    /// `p_k` for odd `k`.
    pub fn p(k: u32) -> Self {
        Self::monomial(Partition::single(k), Q::one())
    }

    pub fn terms(&self) -> &BTreeMap<Partition, Q> {
        &self.terms
    }

    pub fn coeff(&self, mu: &Partition) -> Q {
        self.terms.get(mu).cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest degree among the terms, or `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|k| k.size()).max()
    }

    pub fn add_term(&mut self, mu: Partition, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(mu) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        GammaElement {
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    /// The substitution `p_k ↦ p_k / 2`.
    pub fn half_substitution(&self) -> Self {
        GammaElement {
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (k.clone(), v * pow2(-(k.len() as i64))))
                .collect(),
        }
    }
}

impl Add for &GammaElement {
    type Output = GammaElement;
    fn add(self, rhs: &GammaElement) -> GammaElement {
        let mut out = self.clone();
        for (k, v) in &rhs.terms {
            out.add_term(k.clone(), v.clone());
        }
        out
    }
}

impl Sub for &GammaElement {
    type Output = GammaElement;
    fn sub(self, rhs: &GammaElement) -> GammaElement {
        self + &(-rhs)
    }
}

impl Neg for &GammaElement {
    type Output = GammaElement;
    fn neg(self) -> GammaElement {
        GammaElement {
            terms: self.terms.iter().map(|(k, v)| (k.clone(), -v)).collect(),
        }
    }
}

impl Mul for &GammaElement {
    type Output = GammaElement;
    fn mul(self, rhs: &GammaElement) -> GammaElement {
        let mut acc: BTreeMap<Partition, Q> = BTreeMap::new();
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                *acc.entry(a.union(b)).or_insert_with(Q::zero) += x * y;
            }
        }
        acc.retain(|_, v| !v.is_zero());
        GammaElement { terms: acc }
    }
}

/// `⟨p_μ, p_ν⟩ = 2^{−ℓ(μ)} z_μ δ_{μν}`, extended bilinearly.
pub fn scalar_product(a: &GammaElement, b: &GammaElement) -> Q {
    let mut total = Q::zero();
    for (mu, x) in &a.terms {
        if let Some(y) = b.terms.get(mu) {
            total += x * y * qb(mu.z_factor()) * pow2(-(mu.len() as i64));
        }
    }
    total
}

/// Memo of the one-variable coefficients `q_n` and the pairs `Q_{n,m}`.
#[derive(Default)]
pub struct QPairTable {
    q_single: Vec<GammaElement>,
    pairs: HashMap<(u32, u32), GammaElement>,
}

impl QPairTable {
    pub fn new() -> Self {
        QPairTable {
            q_single: vec![GammaElement::one()],
            pairs: HashMap::new(),
        }
    }

    pub fn max_degree(&self) -> u32 {
        self.q_single.len() as u32 - 1
    }

    /// Coefficient of `z^n` in `exp(2 Σ_k p_{2k+1} z^{2k+1}/(2k+1))`.
    fn q_single(&mut self, n: u32) -> &GammaElement {
        while self.q_single.len() <= n as usize {
            let m = self.q_single.len() as u32;
            let mut acc = GammaElement::zero();
            for k in (1..=m).step_by(2) {
                acc = &acc + &(&GammaElement::p(k) * &self.q_single[(m - k) as usize]);
            }
            self.q_single
                .push(acc.scale(&Q::new(BigInt::from(2), BigInt::from(m))));
        }
        &self.q_single[n as usize]
    }

    /// `Q_{n,m}`, with `(z−w)/(z+w)` expanded in `w/z`.
    pub fn pair(&mut self, n: u32, m: u32) -> GammaElement {
        if let Some(v) = self.pairs.get(&(n, m)) {
            return v.clone();
        }
        let value = if n == 0 && m == 0 {
            GammaElement::zero()
        } else {
            let mut acc = GammaElement::zero();
            for j in 0..=m {
                let c = if j == 0 {
                    qi(1)
                } else if j % 2 == 0 {
                    qi(2)
                } else {
                    qi(-2)
                };
                let a = self.q_single(n + j).clone();
                let b = self.q_single(m - j).clone();
                acc = &acc + &(&a * &b).scale(&c);
            }
            acc
        };
        self.pairs.insert((n, m), value.clone());
        value
    }
}

/// `Q_{n,m}` computed with a fresh table.
pub fn q_pair(n: u32, m: u32) -> GammaElement {
    QPairTable::new().pair(n, m)
}

/// Shared memo of Schur Q-functions; safe for concurrent use.
pub struct CharacterTable {
    pairs: RwLock<QPairTable>,
    schur: RwLock<HashMap<Partition, GammaElement>>,
}

impl Default for CharacterTable {
    fn default() -> Self {
        CharacterTable {
            pairs: RwLock::new(QPairTable::new()),
            schur: RwLock::new(HashMap::new()),
        }
    }
}

static SHARED: LazyLock<CharacterTable> = LazyLock::new(CharacterTable::default);

/// The process-wide table used by the free functions of this module.
pub fn shared() -> &'static CharacterTable {
    &SHARED
}

impl CharacterTable {
    fn pair(&self, n: u32, m: u32) -> GammaElement {
        self.pairs.write().expect("poisoned").pair(n, m)
    }

    /// `Q_λ` as the Pfaffian of `(Q_{λ_j,λ_k})`, expanded along the first row.
    pub fn schur_q(&self, lambda: &Partition) -> Result<GammaElement> {
        lambda.require(PartitionClass::Strict)?;
        if let Some(v) = self.schur.read().expect("poisoned").get(lambda) {
            return Ok(v.clone());
        }
        let mut row: Vec<u32> = lambda.parts().to_vec();
        if row.len() % 2 == 1 {
            row.push(0);
        }
        let value = if row.is_empty() {
            GammaElement::one()
        } else {
            let mut acc = GammaElement::zero();
            for j in 1..row.len() {
                let entry = self.pair(row[0], row[j]);
                if entry.is_zero() {
                    continue;
                }
                let rest: Vec<u32> = row
                    .iter()
                    .enumerate()
                    .filter(|&(i, &p)| i != 0 && i != j && p > 0)
                    .map(|(_, &p)| p)
                    .collect();
                let minor = self.schur_q(&Partition::new(rest)?)?;
                let term = &entry * &minor;
                acc = if j % 2 == 1 {
                    &acc + &term
                } else {
                    &acc - &term
                };
            }
            acc
        };
        self.schur
            .write()
            .expect("poisoned")
            .insert(lambda.clone(), value.clone());
        Ok(value)
    }

    /// `ζ^λ_μ = z_μ 2^{−⌊ℓ(λ)/2⌋} [p_μ] Q_λ`.
    pub fn character(&self, lambda: &Partition, mu: &Partition) -> Result<BigInt> {
        lambda.require(PartitionClass::Strict)?;
        mu.require(PartitionClass::Odd)?;
        if lambda.size() != mu.size() {
            return Err(Error::SizeMismatch(lambda.size(), mu.size()));
        }
        let ql = self.schur_q(lambda)?;
        let value = ql.coeff(mu) * qb(mu.z_factor()) * pow2(-((lambda.len() / 2) as i64));
        assert!(
            value.is_integer(),
            "character {lambda} at {mu} is not an integer: {value}"
        );
        Ok(value.to_integer())
    }

    /// `dim V^λ = ζ^λ_{(1^d)}`.
    pub fn dim_v(&self, lambda: &Partition) -> Result<BigInt> {
        self.character(lambda, &Partition::ones(lambda.size()))
    }

    /// Central character `f^λ_μ`, extended to `|μ| < |λ|` by padding with ones.
    pub fn central_character(&self, lambda: &Partition, mu: &Partition) -> Result<Q> {
        lambda.require(PartitionClass::Strict)?;
        mu.require(PartitionClass::Odd)?;
        let d = lambda.size();
        if mu.size() > d {
            return Ok(Q::zero());
        }
        let k = d - mu.size();
        let full = mu.pad_ones(k);
        let m1 = mu.multiplicity(1) as i64;
        let zeta = self.character(lambda, &full)?;
        let dim = self.dim_v(lambda)?;
        let num = zeta * factorial(d as u64);
        let value = Q::new(num, full.z_factor() * dim) * pow2(d as i64 - full.len() as i64);
        Ok(value * qb(binomial(m1 + k as i64, k as i64)))
    }
}

pub fn schur_q(lambda: &Partition) -> Result<GammaElement> {
    shared().schur_q(lambda)
}

pub fn character(lambda: &Partition, mu: &Partition) -> Result<BigInt> {
    shared().character(lambda, mu)
}

pub fn dim_v(lambda: &Partition) -> Result<BigInt> {
    shared().dim_v(lambda)
}

pub fn central_character(lambda: &Partition, mu: &Partition) -> Result<Q> {
    shared().central_character(lambda, mu)
}

/// All strict partitions of `d` paired with their characters at `mu`.
pub fn character_column(mu: &Partition) -> Result<Vec<(Partition, BigInt)>> {
    enumerate(mu.size(), PartitionClass::Strict)
        .into_iter()
        .map(|l| character(&l, mu).map(|c| (l, c)))
        .collect()
}

/// Square matrix `(Q_{λ_j,λ_k})` for the Pfaffian, with a zero part appended for odd length.
pub fn q_matrix(lambda: &Partition) -> Vec<Vec<GammaElement>> {
    let mut row: Vec<u32> = lambda.parts().to_vec();
    if row.len() % 2 == 1 {
        row.push(0);
    }
    let mut table = QPairTable::new();
    row.iter()
        .map(|&a| row.iter().map(|&b| table.pair(a, b)).collect())
        .collect()
}

/// Sign of the leading `p_1^d` coefficient, used by property tests.
pub fn leading_coefficient_positive(lambda: &Partition) -> Result<bool> {
    let ql = schur_q(lambda)?;
    Ok(ql.coeff(&Partition::ones(lambda.size())).is_positive())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn part(s: &str) -> Partition {
        Partition::parse(s).unwrap()
    }

    #[test]
    fn low_pairs() {
        assert_eq!(q_pair(1, 0), GammaElement::p(1).scale(&qi(2)));
        let p1_cubed = &(&GammaElement::p(1) * &GammaElement::p(1)) * &GammaElement::p(1);
        let expected = &p1_cubed.scale(&q(4, 3)) + &GammaElement::p(3).scale(&q(2, 3));
        assert_eq!(q_pair(3, 0), expected);
        assert!(q_pair(2, 2).is_zero());
        assert_eq!(q_pair(2, 1), -&q_pair(1, 2));
    }

    #[test]
    fn schur_examples() {
        assert_eq!(schur_q(&Partition::empty()).unwrap(), GammaElement::one());
        assert_eq!(
            schur_q(&part("1")).unwrap(),
            GammaElement::p(1).scale(&qi(2))
        );
        let q21 = schur_q(&part("2,1")).unwrap();
        assert_eq!(q21.coeff(&part("1,1,1")), q(4, 3));
        assert_eq!(q21.coeff(&part("3")), q(-4, 3));
        assert!(schur_q(&part("2,2")).is_err());
    }

    #[test]
    fn character_examples() {
        assert_eq!(character(&part("1"), &part("1")).unwrap(), BigInt::from(2));
        assert_eq!(
            character(&part("3"), &part("1,1,1")).unwrap(),
            BigInt::from(8)
        );
        assert_eq!(
            character(&part("2,1"), &part("3")).unwrap(),
            BigInt::from(-2)
        );
        assert_eq!(dim_v(&part("2,1")).unwrap(), BigInt::from(4));
        assert_eq!(dim_v(&part("3")).unwrap(), BigInt::from(8));
        assert!(character(&part("2,1"), &part("1")).is_err());
    }

    #[test]
    fn central_characters() {
        for l in enumerate(5, PartitionClass::Strict) {
            assert_eq!(central_character(&l, &Partition::ones(5)).unwrap(), qi(1));
        }
        // ζ=2, d=3, z=3, dim=8: 2·8·6/(2·3·8)
        assert_eq!(central_character(&part("3"), &part("3")).unwrap(), qi(2));
        assert_eq!(
            central_character(&part("2,1"), &part("3,1")).unwrap(),
            qi(0)
        );
        assert_eq!(
            central_character(&part("3,1"), &part("3")).unwrap(),
            central_character(&part("3,1"), &part("3,1")).unwrap()
        );
    }

    #[test]
    fn pairing_examples() {
        assert_eq!(
            scalar_product(&GammaElement::p(1), &GammaElement::p(1)),
            q(1, 2)
        );
        let q21 = schur_q(&part("2,1")).unwrap();
        assert_eq!(scalar_product(&q21, &q21), qi(4));
        assert_eq!(
            scalar_product(&GammaElement::one(), &GammaElement::p(1)),
            qi(0)
        );
    }

    #[test]
    fn half_substitution_scales_by_length() {
        let x = GammaElement::monomial(part("3,1"), qi(8));
        assert_eq!(x.half_substitution().coeff(&part("3,1")), qi(2));
    }
}
