//! Quadratic operators `F_{k,l}`, `α_m`, `ℱ_{r+1}` and coefficients of `ℰ_m(z)`.

use num_traits::{One, Zero};

use crate::closed_forms::series::{cosh_half, TruncatedSeries};
use crate::error::{Error, Result};
use crate::partitions::{enumerate_up_to, PartitionClass};
use crate::rational::{binomial, factorial, q, qb, qi, qpow, Q};

use super::{apply_phi, sign, CliffordState};

/// A quadratic operator in the neutral fermions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Operator {
    /// `F_{k,l} = (−1)^k φ_k φ_l`.
    F(i64, i64),
    /// `F̂_{k,l} = (−1)^k (φ_k φ_l − ⟨φ_k φ_l⟩)`.
    FHat(i64, i64),
    /// `α_m`, `m` odd.
    Alpha(i64),
    /// `ℱ_{r+1}`, `r` even.
    CutJoin(u32),
    /// `[z^j] ℰ_m(z)`; for `m = 0` the normally ordered `ℰ̂_0`.
    E { m: i64, j: u32 },
}

fn two_point(k: i64, l: i64) -> Q {
    if k + l != 0 {
        Q::zero()
    } else if l > 0 {
        sign(l % 2 != 0)
    } else if l == 0 {
        q(1, 2)
    } else {
        Q::zero()
    }
}

fn apply_f(k: i64, l: i64, s: &CliffordState) -> CliffordState {
    apply_phi(k, &apply_phi(l, s)).scale(&sign(k % 2 != 0))
}

fn apply_f_hat(k: i64, l: i64, s: &CliffordState) -> CliffordState {
    let c = two_point(k, l) * sign(k % 2 != 0);
    &apply_f(k, l, s) - &s.scale(&c)
}

/// Applies `op` to `s`. Every infinite sum is cut where its terms vanish on `s`.
pub fn apply(op: Operator, s: &CliffordState) -> Result<CliffordState> {
    let bound = s.max_index() as i64;
    match op {
        Operator::F(k, l) => Ok(apply_f(k, l, s)),
        Operator::FHat(k, l) => Ok(apply_f_hat(k, l, s)),
        Operator::Alpha(m) => {
            if m % 2 == 0 {
                return Err(Error::Domain(format!(
                    "α_{m} with even index vanishes identically"
                )));
            }
            // k > −m/2
            let lo = (-m).div_euclid(2) + 1;
            let hi = bound + m.abs() + 1;
            let mut out = CliffordState::zero();
            for k in lo..=hi {
                out = &out - &apply_f(k, -k - m, s);
            }
            Ok(out)
        }
        Operator::CutJoin(r) => {
            if r % 2 == 1 {
                return Err(Error::Domain(format!("ℱ_{} needs even r", r + 1)));
            }
            let mut out = CliffordState::zero();
            for k in 1..=bound {
                let w = qpow(&qi(k), r as i64 + 1);
                out = &out + &apply_f(k, -k, s).scale(&w);
            }
            Ok(out)
        }
        Operator::E { m, j } => {
            let reach = bound + m.abs() + 1;
            let inv = Q::one() / qb(factorial(j as u64)) / qi(2);
            let mut out = CliffordState::zero();
            for k in -reach..=reach {
                let w = qpow(&(qi(k) + q(m, 2)), j as i64) * &inv;
                if w.is_zero() {
                    continue;
                }
                let term = if m == 0 {
                    apply_f_hat(k, -k, s)
                } else {
                    apply_f(k, -k - m, s)
                };
                out = &out + &term.scale(&w);
            }
            Ok(out)
        }
    }
}

pub fn apply_alpha(m: i64, s: &CliffordState) -> Result<CliffordState> {
    apply(Operator::Alpha(m), s)
}

pub fn apply_cutjoin(r: u32, s: &CliffordState) -> Result<CliffordState> {
    apply(Operator::CutJoin(r), s)
}

/// `[z^j] ℰ_m(z)` applied to `s`.
pub fn e_coefficient(m: i64, j: u32, s: &CliffordState) -> Result<CliffordState> {
    apply(Operator::E { m, j }, s)
}

/// Every basis monomial of energy at most `energy`.
pub fn basis_up_to(energy: u32) -> Vec<CliffordState> {
    let mut out = Vec::new();
    for lambda in enumerate_up_to(energy, PartitionClass::Strict) {
        let parts = lambda.parts().to_vec();
        let mut with_zero = parts.clone();
        with_zero.push(0);
        out.push(CliffordState::monomial(parts, Q::one()));
        out.push(CliffordState::monomial(with_zero, Q::one()));
    }
    out
}

/// Coefficients `[y^p] ς(y) = 2 sinh(y/2)`.
fn varsigma_coeff(p: u32) -> Q {
    if p % 2 == 0 {
        Q::zero()
    } else {
        Q::one() / (qb(factorial(p as u64)) * qpow(&qi(2), p as i64 - 1))
    }
}

/// `H_m(y) = ¼ cosh(y/2) ς(m y)/ς(y)`, the scalar part produced by `ℰ_0 = ℰ̂_0 + ¼ coth(z/2)`.
fn central_series(m: i64, order: usize) -> TruncatedSeries {
    let num = TruncatedSeries::from_fn(order, |p| {
        qpow(&qi(m), p as i64 + 1) * varsigma_coeff(p as u32 + 1)
    });
    let den = TruncatedSeries::from_fn(order, |p| varsigma_coeff(p as u32 + 1));
    let quarter = q(1, 4);
    &(&cosh_half(order).scale(&quarter) * &num) * &den.inverse()
}

/// `[z^a w^b] (α w + β z)^p (z + ε w)^t`.
fn bivariate_coeff(alpha: i64, beta: i64, eps: i64, p: u32, t: u32, a: u32, b: u32) -> Q {
    if p + t != a + b {
        return Q::zero();
    }
    let mut acc = Q::zero();
    for i in 0..=p.min(a) {
        // i powers of z from the first factor, a − i from the second
        if a - i > t {
            continue;
        }
        let w_second = t - (a - i);
        let c = qb(binomial(p as i64, i as i64))
            * qpow(&qi(beta), i as i64)
            * qpow(&qi(alpha), (p - i) as i64)
            * qb(binomial(t as i64, (a - i) as i64))
            * qpow(&qi(eps), w_second as i64);
        acc += c;
    }
    acc
}

/// Right side of the commutation relation at `[z^a w^b]`, applied to `s`.
fn commutator_rhs(m: i64, n: i64, a: u32, b: u32, s: &CliffordState) -> Result<CliffordState> {
    let total = a + b;
    let mut out = CliffordState::zero();
    for p in (1..=total).step_by(2) {
        let t = total - p;
        let c = varsigma_coeff(p) / qi(2);
        let first = bivariate_coeff(m, -n, 1, p, t, a, b);
        let second = bivariate_coeff(m, n, -1, p, t, a, b) * sign(n % 2 != 0);
        let weight = c * (first + second);
        if weight.is_zero() {
            continue;
        }
        out = &out + &e_coefficient(m + n, t, s)?.scale(&weight);
    }
    if m + n == 0 && m != 0 {
        let h = central_series(m, total as usize + 1);
        let mut scalar = Q::zero();
        for t in 0..=total {
            let ht = h.coeff(t as usize);
            if ht.is_zero() {
                continue;
            }
            scalar += &ht
                * (bivariate_coeff(0, 0, 1, 0, t, a, b)
                    - sign(n % 2 != 0) * bivariate_coeff(0, 0, -1, 0, t, a, b));
        }
        out = &out + &s.scale(&scalar);
    }
    Ok(out)
}

/// Checks `[ℰ_m(z), ℰ_n(w)]` against the closed commutation relation on every
/// coefficient `z^a w^b` with `a, b ≤ z_order`, on all basis monomials of energy
/// at most `state_bound`.
pub fn commutator_check(m: i64, n: i64, z_order: u32, state_bound: u32) -> Result<bool> {
    for v in basis_up_to(state_bound) {
        for a in 0..=z_order {
            for b in 0..=z_order {
                let left = &e_coefficient(m, a, &e_coefficient(n, b, &v)?)?
                    - &e_coefficient(n, b, &e_coefficient(m, a, &v)?)?;
                let right = commutator_rhs(m, n, a, b, &v)?;
                if left != right {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// `[α_m, α_n] = (m/2) δ_{m+n}` on all monomials of energy at most `state_bound`.
pub fn heisenberg_check(max_index: i64, state_bound: u32) -> Result<bool> {
    let odd: Vec<i64> = (-max_index..=max_index).filter(|k| k % 2 != 0).collect();
    for v in basis_up_to(state_bound) {
        for &m in &odd {
            for &n in &odd {
                let left =
                    &apply_alpha(m, &apply_alpha(n, &v)?)? - &apply_alpha(n, &apply_alpha(m, &v)?)?;
                let right = if m + n == 0 {
                    v.scale(&q(m, 2))
                } else {
                    CliffordState::zero()
                };
                if left != right {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// `ℰ_m(−z) = (−1)^{m+1} ℰ_m(z)`: coefficients of the wrong parity vanish.
pub fn parity_check(m: i64, z_order: u32, state_bound: u32) -> Result<bool> {
    for v in basis_up_to(state_bound) {
        for j in 0..=z_order {
            let wrong = (j as i64 + m + 1) % 2 != 0;
            if wrong && !e_coefficient(m, j, &v)?.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `ℱ_{r+1}` is diagonal with eigenvalue `p_{r+1}` of the nonzero indices.
pub fn cutjoin_eigen_check(r: u32, state_bound: u32) -> Result<bool> {
    for v in basis_up_to(state_bound) {
        let (m, _) = v.terms().iter().next().expect("basis vector");
        let eigen: Q = m.iter().map(|&k| qpow(&qi(k as i64), r as i64 + 1)).sum();
        if apply_cutjoin(r, &v)? != v.scale(&eigen) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::vev;

    #[test]
    fn alpha_examples() {
        let vac = CliffordState::vacuum();
        assert!(apply_alpha(1, &vac).unwrap().is_zero());
        let s = apply_alpha(-1, &vac).unwrap();
        assert_eq!(s, CliffordState::monomial(vec![1, 0], Q::one()));
        let c = &apply_alpha(1, &s).unwrap()
            - &apply_alpha(-1, &apply_alpha(1, &vac).unwrap()).unwrap();
        assert_eq!(c, vac.scale(&q(1, 2)));
        assert!(apply_alpha(2, &vac).is_err());
    }

    #[test]
    fn cutjoin_examples() {
        let vac = CliffordState::vacuum();
        assert!(apply_cutjoin(2, &vac).unwrap().is_zero());
        let v = CliffordState::monomial(vec![3, 1], Q::one());
        assert_eq!(apply_cutjoin(2, &v).unwrap(), v.scale(&qi(28)));
        let v = CliffordState::monomial(vec![2, 1], Q::one());
        assert_eq!(apply_cutjoin(2, &v).unwrap(), v.scale(&qi(9)));
        assert!(cutjoin_eigen_check(4, 6).unwrap());
    }

    #[test]
    fn e_zero_is_normally_ordered_cutjoin() {
        let v = CliffordState::monomial(vec![3, 1, 0], Q::one());
        let e = e_coefficient(0, 3, &v).unwrap();
        assert_eq!(e, v.scale(&(qi(28) / qi(6))));
        assert_eq!(
            vev(&e_coefficient(0, 1, &CliffordState::vacuum()).unwrap()),
            qi(0)
        );
    }

    #[test]
    fn e_at_zero_is_minus_alpha() {
        for v in basis_up_to(4) {
            for m in [-3i64, -1, 1, 3] {
                let a = apply_alpha(m, &v).unwrap();
                let e = e_coefficient(m, 0, &v).unwrap();
                assert_eq!(e, a.scale(&-Q::one()));
            }
        }
    }

    #[test]
    fn relations() {
        assert!(heisenberg_check(5, 5).unwrap());
        assert!(parity_check(2, 5, 4).unwrap());
        assert!(parity_check(-3, 5, 4).unwrap());
        assert!(commutator_check(1, -1, 3, 4).unwrap());
        assert!(commutator_check(0, 0, 3, 4).unwrap());
        assert!(commutator_check(3, -1, 3, 4).unwrap());
        assert!(commutator_check(2, 1, 2, 4).unwrap());
        assert!(commutator_check(2, -2, 3, 4).unwrap());
    }
}
