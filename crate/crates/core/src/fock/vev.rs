//! Hurwitz numbers as vacuum expectation values.

use crate::closed_forms::one_part_single_fd;
use crate::error::{Error, Result};
use crate::hurwitz::{double_b, single_b};
use crate::partitions::{Partition, PartitionClass};
use crate::rational::{factorial, pow2, qb, qi, qpow, Q};

use super::operators::{apply_alpha, apply_cutjoin, e_coefficient};
use super::{vev, CliffordState};

/// `∏ α_{−μ_i} |0⟩`; the coefficient of the monomial of `λ` is `ζ^λ_μ / 2^{ℓ(μ)}`.
pub fn alpha_negative_product_expansion(mu: &Partition) -> Result<CliffordState> {
    mu.require(PartitionClass::Odd)?;
    let mut s = CliffordState::vacuum();
    for &m in mu.parts() {
        s = apply_alpha(-(m as i64), &s)?;
    }
    Ok(s)
}

fn cutjoin_power(r: u32, b: u32, s: CliffordState) -> Result<CliffordState> {
    let mut s = s;
    for _ in 0..b {
        s = apply_cutjoin(r, &s)?;
    }
    Ok(s)
}

/// Disconnected single numbers `2^{1−g}/(b! ∏μ_i (r+1)^b) ⟨e^{α_1} ℱ_{r+1}^b ∏ α_{−μ_i}⟩`.
pub fn vev_spin_single(g: u32, mu: &Partition, r: u32) -> Result<Q> {
    mu.require(PartitionClass::Odd)?;
    let b = single_b(g as i64, mu, r)?;
    let d = mu.size();
    let s = cutjoin_power(r, b, alpha_negative_product_expansion(mu)?)?;
    // α_1 lowers the energy by one, so only α_1^d / d! reaches the vacuum
    let mut s = s.energy_component(d);
    for _ in 0..d {
        s = apply_alpha(1, &s)?;
    }
    let value = vev(&s) / qb(factorial(d as u64));
    let prefactor = pow2(1 - g as i64)
        / (qb(factorial(b as u64)) * qb(mu.product_of_parts()) * qpow(&qi(r as i64 + 1), b as i64));
    Ok(prefactor * value)
}

fn double_prefactor(g: u32, b: u32, mu: &Partition, nu: &Partition) -> Q {
    pow2(1 - g as i64)
        / (qb(factorial(b as u64)) * qb(mu.product_of_parts() * nu.product_of_parts()))
}

fn check_double(mu: &Partition, nu: &Partition) -> Result<()> {
    mu.require(PartitionClass::Odd)?;
    nu.require(PartitionClass::Odd)?;
    if mu.size() != nu.size() {
        return Err(Error::SizeMismatch(mu.size(), nu.size()));
    }
    Ok(())
}

fn close_with_alphas(mu: &Partition, s: CliffordState) -> Result<Q> {
    let mut s = s;
    for &m in mu.parts().iter().rev() {
        s = apply_alpha(m as i64, &s)?;
    }
    Ok(vev(&s))
}

/// Disconnected double numbers `2^{1−g}/(b! ∏μ_i ∏ν_j) ⟨∏ α_{μ_i} (ℱ_{r+1}/(r+1))^b ∏ α_{−ν_j}⟩`.
pub fn vev_spin_double(g: u32, mu: &Partition, nu: &Partition, r: u32) -> Result<Q> {
    check_double(mu, nu)?;
    let b = double_b(g as i64, mu, nu, r)?;
    let s = cutjoin_power(r, b, alpha_negative_product_expansion(nu)?)?;
    let value = close_with_alphas(mu, s)? / qpow(&qi(r as i64 + 1), b as i64);
    Ok(double_prefactor(g, b, mu, nu) * value)
}

/// The same numbers through `(r!)^b [z_1^{r+1}⋯z_b^{r+1}] ⟨∏ ℰ_{μ_i}(0) ∏ ℰ̂_0(z_p) ∏ ℰ_{−ν_j}(0)⟩`,
/// applying the operator coefficients directly; limited to `b ≤ 2`.
pub fn vev_spin_double_via_e0(g: u32, mu: &Partition, nu: &Partition, r: u32) -> Result<Q> {
    check_double(mu, nu)?;
    let b = double_b(g as i64, mu, nu, r)?;
    if b > 2 {
        return Err(Error::Scope(format!(
            "b = {b} exceeds the direct route limit of 2"
        )));
    }
    let mut s = CliffordState::vacuum();
    for &n in nu.parts() {
        s = e_coefficient(-(n as i64), 0, &s)?;
    }
    for _ in 0..b {
        s = e_coefficient(0, r + 1, &s)?;
    }
    for &m in mu.parts().iter().rev() {
        s = e_coefficient(m as i64, 0, &s)?;
    }
    let value = vev(&s) * qpow(&qb(factorial(r as u64)), b as i64);
    Ok(double_prefactor(g, b, mu, nu) * value)
}

/// Compares the finite-difference one-part formula with direct operator application.
pub fn one_part_fd_matches_operator(g: u32, mu: u32, r: u32) -> Result<bool> {
    let fd = one_part_single_fd(g, mu, r)?;
    let op = vev_spin_single(g, &Partition::single(mu), r)?;
    Ok(fd == op)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hurwitz::{spin_double_disconnected, spin_single_disconnected};
    use crate::qschur::character;
    use crate::rational::q;

    fn part(s: &str) -> Partition {
        Partition::parse(s).unwrap()
    }

    #[test]
    fn boson_expansion_matches_characters() {
        for (mu, lam) in [("1", vec![1, 0]), ("1,1,1", vec![3, 0]), ("3", vec![2, 1])] {
            let s = alpha_negative_product_expansion(&part(mu)).unwrap();
            let l = Partition::new(lam.iter().copied().filter(|&x| x > 0).collect()).unwrap();
            let zeta = character(&l, &part(mu)).unwrap();
            assert_eq!(s.coeff(&lam), qb(zeta) / pow2(part(mu).len() as i64));
        }
    }

    #[test]
    fn single_examples() {
        assert_eq!(vev_spin_single(0, &part("1"), 2).unwrap(), q(1, 1));
        assert_eq!(vev_spin_single(1, &part("3"), 2).unwrap(), q(1, 1));
        assert_eq!(vev_spin_single(0, &part("5"), 4).unwrap(), q(1, 5));
        assert_eq!(
            vev_spin_single(1, &part("3,1"), 2).unwrap(),
            spin_single_disconnected(1, &part("3,1"), 2).unwrap()
        );
    }

    #[test]
    fn double_examples() {
        assert_eq!(
            vev_spin_double(0, &part("1"), &part("1"), 2).unwrap(),
            q(1, 1)
        );
        let v = vev_spin_double(0, &part("3"), &part("1,1,1"), 2).unwrap();
        assert_eq!(v / qi(6), q(1, 3));
        let a = vev_spin_double(0, &part("3,1"), &part("3,1"), 2).unwrap();
        assert_eq!(
            a,
            spin_double_disconnected(0, &part("3,1"), &part("3,1"), 2).unwrap()
        );
        assert_eq!(
            a,
            vev_spin_double_via_e0(0, &part("3,1"), &part("3,1"), 2).unwrap()
        );
        let c = vev_spin_double_via_e0(1, &part("3,1,1"), &part("5"), 2).unwrap();
        assert_eq!(
            c,
            spin_double_disconnected(1, &part("3,1,1"), &part("5"), 2).unwrap()
        );
        assert!(vev_spin_double(0, &part("3"), &part("1"), 2).is_err());
    }

    #[test]
    fn finite_difference_route() {
        for r in [2, 4] {
            for m in (1..=7).step_by(2) {
                for g in 0..=2 {
                    if (2 * g + m - 1) % r == 0 {
                        assert!(one_part_fd_matches_operator(g, m, r).unwrap());
                    }
                }
            }
        }
    }
}
