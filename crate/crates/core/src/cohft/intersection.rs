//! ψ and κ intersection numbers on `M̄_{g,n}`.

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use num_traits::{One, Zero};

use crate::rational::{qi, Q};

fn memo() -> &'static RwLock<HashMap<(u32, Vec<u32>), Q>> {
    static MEMO: OnceLock<RwLock<HashMap<(u32, Vec<u32>), Q>>> = OnceLock::new();
    MEMO.get_or_init(|| RwLock::new(HashMap::new()))
}

fn double_factorial(n: i64) -> Q {
    let mut acc = Q::one();
    let mut k = n;
    while k > 1 {
        acc *= qi(k);
        k -= 2;
    }
    acc
}

/// `⟨τ_{d_1}⋯τ_{d_n}⟩_g`; zero when `Σd_i ≠ 3g−3+n` or outside the stable range.
pub fn psi_intersection(g: u32, exponents: &[u32]) -> Q {
    let n = exponents.len() as i64;
    let total: i64 = exponents.iter().map(|&d| d as i64).sum();
    if 2 * g as i64 - 2 + n <= 0 || total != 3 * g as i64 - 3 + n {
        return Q::zero();
    }
    let mut key = exponents.to_vec();
    key.sort_unstable_by(|a, b| b.cmp(a));
    if let Some(v) = memo().read().expect("memo lock").get(&(g, key.clone())) {
        return v.clone();
    }
    let v = compute(g, &key);
    memo()
        .write()
        .expect("memo lock")
        .insert((g, key), v.clone());
    v
}

/// `key` is sorted in decreasing order.
fn compute(g: u32, key: &[u32]) -> Q {
    let n = key.len();
    if g == 0 && n == 3 {
        return Q::one();
    }
    if g == 1 && n == 1 {
        return qi(24).recip();
    }
    if let Some(pos) = key.iter().rposition(|&d| d == 0) {
        // string equation
        let mut rest = key.to_vec();
        rest.remove(pos);
        let mut acc = Q::zero();
        for j in 0..rest.len() {
            if rest[j] > 0 {
                let mut t = rest.clone();
                t[j] -= 1;
                acc += psi_intersection(g, &t);
            }
        }
        return acc;
    }
    if let Some(pos) = key.iter().rposition(|&d| d == 1) {
        // dilaton equation
        let mut rest = key.to_vec();
        rest.remove(pos);
        return qi(2 * g as i64 - 2 + rest.len() as i64) * psi_intersection(g, &rest);
    }
    // DVV with the first point carrying τ_{k+1}
    let k = key[0] as i64 - 1;
    let rest = &key[1..];
    let mut acc = Q::zero();
    for j in 0..rest.len() {
        let dj = rest[j] as i64;
        let mut t = rest.to_vec();
        t[j] = (k + dj) as u32;
        acc += double_factorial(2 * k + 2 * dj + 1) / double_factorial(2 * dj - 1)
            * psi_intersection(g, &t);
    }
    let half = qi(2).recip();
    for a in 0..k {
        let b = k - 1 - a;
        let w = double_factorial(2 * a + 1) * double_factorial(2 * b + 1) * &half;
        if g >= 1 {
            let mut t = rest.to_vec();
            t.push(a as u32);
            t.push(b as u32);
            acc += &w * psi_intersection(g - 1, &t);
        }
        let m = rest.len();
        for mask in 0u32..(1 << m) {
            let left: Vec<u32> = (0..m)
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| rest[i])
                .collect();
            let right: Vec<u32> = (0..m)
                .filter(|i| mask >> i & 1 == 0)
                .map(|i| rest[i])
                .collect();
            for g1 in 0..=g {
                let mut l = left.clone();
                l.push(a as u32);
                let mut r = right.clone();
                r.push(b as u32);
                let x = psi_intersection(g1, &l);
                if x.is_zero() {
                    continue;
                }
                acc += &w * x * psi_intersection(g - g1, &r);
            }
        }
    }
    acc / double_factorial(2 * k + 3)
}

/// Rewrites `∫_{M̄_{g,n}} ∏ψ_i^{d_i} ∏_j κ_{m_j}` as a signed sum of pure ψ-integrals on
/// `M̄_{g,n+p}`, returned as `(coefficient, exponents)` pairs.
///
/// Uses `π_*(∏ψ^{d} ∏_j ψ_{n+j}^{m_j+1}) = ψ^d Σ_{σ∈S_k} ∏_{cycles c} κ_{m(c)}` and inverts it
/// over set partitions.
pub fn kappa_reduce(psi: &[u32], kappas: &[u32]) -> Vec<(Q, Vec<u32>)> {
    if kappas.is_empty() {
        return vec![(Q::one(), psi.to_vec())];
    }
    let k = kappas.len();
    let mut pushed = psi.to_vec();
    pushed.extend(kappas.iter().map(|m| m + 1));
    let mut out = vec![(Q::one(), pushed)];
    for partition in set_partitions(k) {
        if partition.len() == k {
            continue;
        }
        let mut weight = Q::one();
        let merged: Vec<u32> = partition
            .iter()
            .map(|block| {
                weight *= crate::rational::qb(crate::rational::factorial(block.len() as u64 - 1));
                block.iter().map(|&j| kappas[j]).sum()
            })
            .collect();
        for (c, e) in kappa_reduce(psi, &merged) {
            out.push((-(&weight * c), e));
        }
    }
    out
}

/// `∫_{M̄_{g,n}} ∏ψ_i^{d_i} ∏_j κ_{m_j}`.
pub fn kappa_psi_integral(g: u32, psi: &[u32], kappas: &[u32]) -> Q {
    kappa_reduce(psi, kappas)
        .into_iter()
        .map(|(c, e)| c * psi_intersection(g, &e))
        .sum()
}

/// All set partitions of `{0, …, k−1}` as lists of blocks.
pub fn set_partitions(k: usize) -> Vec<Vec<Vec<usize>>> {
    let mut out: Vec<Vec<Vec<usize>>> = vec![vec![]];
    for i in 0..k {
        let mut next = Vec::new();
        for p in out {
            for b in 0..p.len() {
                let mut q = p.clone();
                q[b].push(i);
                next.push(q);
            }
            let mut q = p.clone();
            q.push(vec![i]);
            next.push(q);
        }
        out = next;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{factorial, q, qb};

    #[test]
    fn known_values() {
        assert_eq!(psi_intersection(0, &[0, 0, 0]), qi(1));
        assert_eq!(psi_intersection(1, &[1]), q(1, 24));
        assert_eq!(psi_intersection(2, &[4]), q(1, 1152));
        assert_eq!(psi_intersection(2, &[2, 3]), q(29, 5760));
        assert_eq!(psi_intersection(2, &[2, 2, 2]), q(7, 240));
        assert_eq!(psi_intersection(0, &[1, 1, 0, 0, 0]), qi(2));
        assert_eq!(psi_intersection(1, &[1, 1]), q(1, 24));
        assert_eq!(psi_intersection(0, &[1, 0, 0]), qi(0));
    }

    #[test]
    fn one_point_closed_form() {
        // ⟨τ_{3g−2}⟩_g = 1/(24^g g!)
        for g in 1..6u32 {
            let expected = (qi(24).recip()).pow(g as i32) / qb(factorial(g as u64));
            assert_eq!(psi_intersection(g, &[3 * g - 2]), expected);
        }
    }

    #[test]
    fn kappa_examples() {
        assert_eq!(kappa_psi_integral(1, &[0], &[1]), q(1, 24));
        assert_eq!(kappa_psi_integral(0, &[0, 0, 0, 0], &[1]), qi(1));
        assert_eq!(set_partitions(3).len(), 5);
        // κ₂ on M̄_{2,1} with one ψ: π_*ψ³ computed directly
        let direct = psi_intersection(2, &[2, 3]);
        assert_eq!(kappa_psi_integral(2, &[2], &[2]), direct);
        // κ₁² = π_*(ψ²ψ²) − κ₂, with two added points
        let two = psi_intersection(2, &[2, 2, 2]) - psi_intersection(2, &[2, 3]);
        assert_eq!(kappa_psi_integral(2, &[2], &[1, 1]), two);
        // pure κ integrals on M̄₂
        assert_eq!(kappa_psi_integral(2, &[], &[3]), q(1, 1152));
    }
}
