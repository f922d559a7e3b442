//! Spin Hurwitz numbers from Sergeev characters.

mod connected;
mod probes;

pub use connected::{
    connected, connected_double, connected_single, GeneratingSeries, HurwitzQuery,
};
pub use probes::{
    piecewise_polynomiality_probe, quasi_polynomiality_probe, ChamberFit, PiecewiseReport,
    QuasiPolynomialReport,
};

use num_traits::Zero;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::partitions::{enumerate, Partition, PartitionClass};
use crate::qschur;
use crate::rational::{factorial, pow2, qb, qi, qpow, Q};

/// Number of completed-cycle insertions for single numbers.
pub fn single_b(g: i64, mu: &Partition, r: u32) -> Result<u32> {
    b_from(2 * g - 2 + mu.len() as i64 + mu.size() as i64, r)
}

/// Number of completed-cycle insertions for double numbers.
pub fn double_b(g: i64, mu: &Partition, nu: &Partition, r: u32) -> Result<u32> {
    b_from(2 * g - 2 + mu.len() as i64 + nu.len() as i64, r)
}

pub(crate) fn check_r(r: u32) -> Result<()> {
    if r == 0 || r % 2 == 1 {
        return Err(Error::Domain(format!(
            "r = {r} must be a positive even integer"
        )));
    }
    Ok(())
}

fn b_from(num: i64, r: u32) -> Result<u32> {
    check_r(r)?;
    if num < 0 || num % r as i64 != 0 {
        return Err(Error::NoCovers(format!(
            "b = {num}/{r} is not a non-negative integer"
        )));
    }
    Ok((num / r as i64) as u32)
}

/// Gunningham's character formula for a base of Euler characteristic `chi`
/// with a theta characteristic of the given parity.
pub fn gunningham_general(chi: i64, parity: u32, profiles: &[Partition], d: u32) -> Result<Q> {
    if chi % 2 != 0 {
        return Err(Error::Domain(format!("Euler characteristic {chi} is odd")));
    }
    for mu in profiles {
        mu.require(PartitionClass::Odd)?;
        if mu.size() != d {
            return Err(Error::SizeMismatch(mu.size(), d));
        }
    }
    let twice_exp: i64 = profiles
        .iter()
        .map(|m| m.len() as i64 - d as i64)
        .sum::<i64>()
        - d as i64 * chi;
    if twice_exp % 2 != 0 {
        return Err(Error::Domain(format!(
            "2-power exponent {twice_exp}/2 is not integral"
        )));
    }
    let terms: Vec<Q> = enumerate(d, PartitionClass::Strict)
        .par_iter()
        .map(|lambda| -> Result<Q> {
            let delta = lambda.len() as i64 % 2;
            let sign = if parity % 2 == 1 && delta == 1 {
                -qi(1)
            } else {
                qi(1)
            };
            let dim = qb(qschur::dim_v(lambda)?) / qb(factorial(d as u64));
            // (dim / (2^{δ/2} d!))^χ with χ even
            let mut term = sign * qpow(&dim, chi) * pow2(-delta * chi / 2);
            for mu in profiles {
                term *= qschur::central_character(lambda, mu)?;
            }
            Ok(term)
        })
        .collect::<Result<_>>()?;
    let sum: Q = terms.into_iter().sum();
    Ok(pow2(twice_exp / 2) * sum)
}

fn eigenvalue(lambda: &Partition, r: u32) -> Q {
    qb(lambda.power_sum(r + 1)) / qi(r as i64 + 1)
}

/// Genus from the insertion count, `2g − 2 = r b − extra`.
pub(crate) fn genus_from_b(b: u32, extra: i64, r: u32) -> i64 {
    let twice = r as i64 * b as i64 - extra + 2;
    debug_assert!(twice % 2 == 0);
    twice / 2
}

/// Disconnected single numbers indexed by the insertion count; the genus may be negative.
pub(crate) fn single_by_b(b: u32, mu: &Partition, r: u32) -> Result<Q> {
    let d = mu.size();
    let g = genus_from_b(b, mu.len() as i64 + d as i64, r);
    let terms: Vec<Q> = enumerate(d, PartitionClass::Strict)
        .par_iter()
        .map(|lambda| -> Result<Q> {
            let zeta = qschur::character(lambda, mu)?;
            if zeta.is_zero() {
                return Ok(Q::zero());
            }
            let dim = qschur::dim_v(lambda)?;
            let delta = lambda.len() as i64 % 2;
            Ok(qb(zeta * dim)
                * pow2(-(delta + mu.len() as i64 + d as i64))
                * qpow(&eigenvalue(lambda, r), b as i64))
        })
        .collect::<Result<_>>()?;
    let sum: Q = terms.into_iter().sum();
    let prefactor = pow2(1 - g)
        / (qb(factorial(b as u64)) * qb(factorial(d as u64)) * qb(mu.product_of_parts()));
    Ok(prefactor * sum)
}

/// Disconnected double numbers indexed by the insertion count.
pub(crate) fn double_by_b(b: u32, mu: &Partition, nu: &Partition, r: u32) -> Result<Q> {
    let d = mu.size();
    let g = genus_from_b(b, mu.len() as i64 + nu.len() as i64, r);
    let terms: Vec<Q> = enumerate(d, PartitionClass::Strict)
        .par_iter()
        .map(|lambda| -> Result<Q> {
            let zm = qschur::character(lambda, mu)?;
            if zm.is_zero() {
                return Ok(Q::zero());
            }
            let zn = qschur::character(lambda, nu)?;
            let delta = lambda.len() as i64 % 2;
            Ok(qb(zm * zn)
                * pow2(-(delta + mu.len() as i64 + nu.len() as i64))
                * qpow(&eigenvalue(lambda, r), b as i64))
        })
        .collect::<Result<_>>()?;
    let sum: Q = terms.into_iter().sum();
    let prefactor =
        pow2(1 - g) / (qb(factorial(b as u64)) * qb(mu.product_of_parts() * nu.product_of_parts()));
    Ok(prefactor * sum)
}

/// Disconnected spin single Hurwitz numbers `h•_{g;μ}`.
pub fn spin_single_disconnected(g: u32, mu: &Partition, r: u32) -> Result<Q> {
    mu.require(PartitionClass::Odd)?;
    let b = single_b(g as i64, mu, r)?;
    single_by_b(b, mu, r)
}

/// Disconnected spin double Hurwitz numbers `h•_{g;μ,ν}`.
pub fn spin_double_disconnected(g: u32, mu: &Partition, nu: &Partition, r: u32) -> Result<Q> {
    mu.require(PartitionClass::Odd)?;
    nu.require(PartitionClass::Odd)?;
    if mu.size() != nu.size() {
        return Err(Error::SizeMismatch(mu.size(), nu.size()));
    }
    let b = double_b(g as i64, mu, nu, r)?;
    double_by_b(b, mu, nu, r)
}

/// Single numbers from double numbers at `ν = (1^d)`.
pub fn single_from_double(g: u32, mu: &Partition, r: u32) -> Result<Q> {
    let d = mu.size();
    let nu = Partition::ones(d);
    Ok(spin_double_disconnected(g, mu, &nu, r)? / qb(factorial(d as u64)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn part(s: &str) -> Partition {
        Partition::parse(s).unwrap()
    }

    #[test]
    fn single_examples() {
        assert_eq!(spin_single_disconnected(0, &part("3"), 2).unwrap(), q(1, 3));
        assert_eq!(
            spin_single_disconnected(2, &part("7"), 2).unwrap(),
            q(1409387, 2160)
        );
        assert_eq!(
            spin_single_disconnected(1, &part("7"), 4).unwrap(),
            q(35, 2)
        );
        assert!(matches!(
            spin_single_disconnected(0, &part("3"), 4),
            Err(Error::NoCovers(_))
        ));
    }

    #[test]
    fn double_examples() {
        let d = spin_double_disconnected(0, &part("3"), &part("1,1,1"), 2).unwrap();
        assert_eq!(d, q(2, 1));
        assert_eq!(single_from_double(0, &part("3"), 2).unwrap(), q(1, 3));
        let a = spin_double_disconnected(1, &part("5,1"), &part("3,3"), 2).unwrap();
        let b = spin_double_disconnected(1, &part("3,3"), &part("5,1"), 2).unwrap();
        assert_eq!(a, b);
        assert!(matches!(
            spin_double_disconnected(0, &part("3"), &part("1"), 2),
            Err(Error::SizeMismatch(3, 1))
        ));
    }

    #[test]
    fn gunningham_examples() {
        assert_eq!(gunningham_general(2, 0, &[part("1")], 1).unwrap(), q(1, 1));
        assert_eq!(gunningham_general(2, 0, &[], 0).unwrap(), q(1, 1));
        let v = gunningham_general(2, 0, &[part("3"), part("3")], 3).unwrap();
        assert_eq!(v, q(1, 3));
        assert_eq!(
            v,
            spin_double_disconnected(0, &part("3"), &part("3"), 2).unwrap()
        );
    }

    #[test]
    fn connected_examples() {
        assert_eq!(connected_single(0, &part("1,1"), 2).unwrap(), q(1, 1));
        assert_eq!(connected_single(0, &part("3,1"), 2).unwrap(), q(3, 2));
        assert_eq!(connected_single(1, &part("3,1"), 2).unwrap(), q(17, 2));
        assert_eq!(connected_single(0, &part("5,5,5"), 2).unwrap(), q(15625, 2));
        assert_eq!(connected_single(1, &part("3"), 2).unwrap(), q(1, 1));
        assert_eq!(connected_single(1, &part("3,3"), 2).unwrap(), q(99, 2));
    }

    #[test]
    fn quasi_polynomial_fits() {
        let rep = quasi_polynomiality_probe(1, 1, 2, &[0], 6).unwrap();
        assert!(rep.passed());
        assert_eq!(rep.polynomial.eval(&[q(3, 1)]), q(1, 3));
        let rep = quasi_polynomiality_probe(0, 3, 2, &[0, 0, 0], 6).unwrap();
        assert!(rep.passed());
        assert_eq!(rep.polynomial.eval(&[q(5, 1), q(3, 1), q(1, 1)]), q(4, 1));
        assert!(matches!(
            quasi_polynomiality_probe(1, 1, 2, &[0], 2),
            Err(Error::InsufficientSamples(_))
        ));
    }

    #[test]
    fn piecewise_small() {
        let rep = piecewise_polynomiality_probe(1, 1, 1, 2, 15).unwrap();
        assert!(rep.passed());
        assert_eq!(rep.chambers.len(), 1);
        assert_eq!(rep.chambers[0].degrees, vec![0, 2]);
        let rep = piecewise_polynomiality_probe(0, 2, 1, 2, 9).unwrap();
        assert!(rep.empty_domain && rep.passed());
    }
}
