//! Partitions and their odd and strict refinements.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::rational::factorial;

/// A partition stored with weakly decreasing positive parts.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition(Vec<u32>);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PartitionClass {
    All,
    Odd,
    Strict,
}

impl Partition {
    /// Sorts the parts into canonical order; rejects zero parts.
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidPartition(format!(
                "{parts:?} has a zero part"
            )));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition(parts))
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// The partition `(1^d)`.
    pub fn ones(d: u32) -> Self {
        Partition(vec![1; d as usize])
    }

    pub fn single(part: u32) -> Self {
        assert!(part > 0);
        Partition(vec![part])
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_odd(&self) -> bool {
        self.0.iter().all(|p| p % 2 == 1)
    }

    pub fn is_strict(&self) -> bool {
        self.0.windows(2).all(|w| w[0] > w[1])
    }

    pub fn belongs_to(&self, class: PartitionClass) -> bool {
        match class {
            PartitionClass::All => true,
            PartitionClass::Odd => self.is_odd(),
            PartitionClass::Strict => self.is_strict(),
        }
    }

    /// Multiplicities `k -> m_k`.
    pub fn multiplicities(&self) -> BTreeMap<u32, u32> {
        let mut m = BTreeMap::new();
        for &p in &self.0 {
            *m.entry(p).or_insert(0) += 1;
        }
        m
    }

    pub fn multiplicity(&self, k: u32) -> u32 {
        self.0.iter().filter(|&&p| p == k).count() as u32
    }

    /// `z_μ = ∏ m_k! k^{m_k}`.
    pub fn z_factor(&self) -> BigInt {
        self.multiplicities()
            .into_iter()
            .fold(BigInt::one(), |acc, (k, m)| {
                acc * factorial(m as u64) * num_traits::pow(BigInt::from(k), m as usize)
            })
    }

    /// `|Aut μ| = ∏ m_k!`.
    pub fn aut_order(&self) -> BigInt {
        self.multiplicities()
            .into_values()
            .fold(BigInt::one(), |acc, m| acc * factorial(m as u64))
    }

    /// `ℓ(λ) mod 2` for a strict partition.
    pub fn parity_delta(&self) -> Result<u32> {
        self.require(PartitionClass::Strict)?;
        Ok((self.len() % 2) as u32)
    }

    /// `p_k(λ) = Σ λ_i^k`.
    pub fn power_sum(&self, k: u32) -> BigInt {
        self.0
            .iter()
            .map(|&p| num_traits::pow(BigInt::from(p), k as usize))
            .sum()
    }

    pub fn product_of_parts(&self) -> BigInt {
        self.0.iter().fold(BigInt::one(), |acc, &p| acc * p)
    }

    /// Multiset union.
    pub fn union(&self, other: &Partition) -> Partition {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        v.sort_unstable_by(|a, b| b.cmp(a));
        Partition(v)
    }

    /// Appends `k` parts equal to one.
    pub fn pad_ones(&self, k: u32) -> Partition {
        let mut v = self.0.clone();
        v.extend(std::iter::repeat_n(1, k as usize));
        Partition(v)
    }

    /// Multiset difference, if `other` is contained in `self`.
    pub fn minus(&self, other: &Partition) -> Option<Partition> {
        let mut rest = self.0.clone();
        for p in &other.0 {
            let pos = rest.iter().position(|x| x == p)?;
            rest.remove(pos);
        }
        Some(Partition(rest))
    }

    /// All sub-multisets, each once.
    pub fn sub_multisets(&self) -> Vec<Partition> {
        let mult: Vec<(u32, u32)> = self.multiplicities().into_iter().rev().collect();
        let mut out = vec![Vec::new()];
        for (k, m) in mult {
            let mut next = Vec::new();
            for base in &out {
                for c in 0..=m {
                    let mut v: Vec<u32> = base.clone();
                    v.extend(std::iter::repeat_n(k, c as usize));
                    next.push(v);
                }
            }
            out = next;
        }
        out.into_iter().map(Partition).collect()
    }

    pub fn require(&self, class: PartitionClass) -> Result<()> {
        if self.belongs_to(class) {
            Ok(())
        } else {
            Err(Error::WrongClass {
                partition: self.to_string(),
                expected: match class {
                    PartitionClass::All => "a partition",
                    PartitionClass::Odd => "odd",
                    PartitionClass::Strict => "strict",
                },
            })
        }
    }

    /// Parses `"5,3,1"`, `"(5,3,1)"` or `""`.
    pub fn parse(s: &str) -> Result<Partition> {
        let t = s.trim().trim_start_matches('(').trim_end_matches(')');
        if t.trim().is_empty() {
            return Ok(Partition::empty());
        }
        let parts = t
            .split([',', ' '])
            .filter(|x| !x.is_empty())
            .map(|x| {
                x.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::InvalidPartition(s.to_string()))
            })
            .collect::<Result<Vec<u32>>>()?;
        Partition::new(parts)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// All partitions of `d` in `class`, in reverse-lexicographic order.
pub fn enumerate(d: u32, class: PartitionClass) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fill(d, d, class, &mut cur, &mut out);
    out
}

fn fill(rest: u32, max: u32, class: PartitionClass, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if rest == 0 {
        out.push(Partition(cur.clone()));
        return;
    }
    for p in (1..=max.min(rest)).rev() {
        if class == PartitionClass::Odd && p % 2 == 0 {
            continue;
        }
        cur.push(p);
        let next_max = if class == PartitionClass::Strict {
            p - 1
        } else {
            p
        };
        fill(rest - p, next_max, class, cur, out);
        cur.pop();
    }
}

/// All partitions of size at most `d` in `class`.
pub fn enumerate_up_to(d: u32, class: PartitionClass) -> Vec<Partition> {
    (0..=d).flat_map(|k| enumerate(k, class)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_enumerations() {
        assert_eq!(enumerate(0, PartitionClass::Odd), vec![Partition::empty()]);
        assert_eq!(enumerate(9, PartitionClass::Odd).len(), 8);
        assert_eq!(enumerate(9, PartitionClass::Strict).len(), 8);
        let all = enumerate(4, PartitionClass::All);
        let shown: Vec<String> = all.iter().map(|p| p.to_string()).collect();
        assert_eq!(shown, ["(4)", "(3,1)", "(2,2)", "(2,1,1)", "(1,1,1,1)"]);
    }

    #[test]
    fn statistics() {
        let p = Partition::new(vec![1, 3, 1]).unwrap();
        assert_eq!(p.z_factor(), BigInt::from(6));
        assert_eq!(Partition::empty().z_factor(), BigInt::from(1));
        assert_eq!(
            Partition::parse("5,5,3").unwrap().aut_order(),
            BigInt::from(2)
        );
        assert_eq!(Partition::ones(3).aut_order(), BigInt::from(6));
        assert_eq!(Partition::single(3).parity_delta().unwrap(), 1);
        assert_eq!(Partition::parse("2,1").unwrap().parity_delta().unwrap(), 0);
        assert!(Partition::parse("2,2").unwrap().parity_delta().is_err());
        assert_eq!(
            Partition::parse("3,1").unwrap().power_sum(3),
            BigInt::from(28)
        );
        assert_eq!(Partition::empty().power_sum(5), BigInt::from(0));
    }

    #[test]
    fn sub_multisets_count() {
        let p = Partition::parse("5,5,3").unwrap();
        assert_eq!(p.sub_multisets().len(), 6);
    }
}
