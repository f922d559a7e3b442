//! Closed formulas: one-part numbers, Stirling and finite-difference forms,
//! the genus-one formula and the genus-zero Lambert-W free energies.

pub mod series;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::partitions::{enumerate, Partition, PartitionClass};
use crate::rational::{binomial, factorial, pow2, q, qb, qi, qpow, Q};
pub use series::TruncatedSeries;
use series::{cosh_half, qoppa, script_s};

/// Stirling numbers of the second kind by the triangular recurrence.
pub fn stirling2(n: u32, k: u32) -> BigInt {
    let mut row = vec![BigInt::one()];
    for i in 1..=n as usize {
        let mut next = vec![BigInt::zero(); i + 1];
        for j in 1..=i {
            let keep = if j < i { &row[j] * j } else { BigInt::zero() };
            next[j] = keep + &row[j - 1];
        }
        row = next;
    }
    row.get(k as usize).cloned().unwrap_or_else(BigInt::zero)
}

/// `Δ^ν l^n` evaluated at `l = 1` by explicit differencing.
pub fn forward_difference_of_power(nu: u32, n: u32) -> BigInt {
    let mut values: Vec<BigInt> = (1..=(nu + 1) as u64)
        .map(|l| num_traits::pow(BigInt::from(l), n as usize))
        .collect();
    for _ in 0..nu {
        values = values.windows(2).map(|w| &w[1] - &w[0]).collect();
    }
    values.swap_remove(0)
}

fn half_r(r: u32) -> Result<u32> {
    if r == 0 || r % 2 == 1 {
        return Err(Error::Domain(format!(
            "r = {r} must be a positive even integer"
        )));
    }
    Ok(r / 2)
}

fn integral_b(numerator: i64, r: u32, what: &str) -> Result<u32> {
    if numerator < 0 || numerator % r as i64 != 0 {
        return Err(Error::NoCovers(format!(
            "{what}: b = {numerator}/{r} is not a non-negative integer"
        )));
    }
    Ok((numerator / r as i64) as u32)
}

/// One-part double numbers `h_{g;(d),μ}` from the signed multivariate extraction.
pub fn one_part_double(g: u32, d: u32, mu: &Partition, r: u32) -> Result<Q> {
    half_r(r)?;
    mu.require(PartitionClass::Odd)?;
    if mu.size() != d {
        return Err(Error::SizeMismatch(d, mu.size()));
    }
    if d % 2 == 0 {
        return Err(Error::NoCovers(format!(
            "one-part profile ({d}) is not odd"
        )));
    }
    let n = mu.len() as u32;
    let b = integral_b(2 * g as i64 - 1 + n as i64, r, "one-part double")?;
    let order = (r * b + 1) as usize;
    // G(y) = y^{n−1} ∏ 𝒮(μ_i y)/𝒮(y) · cosh(y/2)/2
    let s_series = script_s(order + n as usize);
    let mut body = cosh_half(order + n as usize).scale(&q(1, 2));
    for &m in mu.parts() {
        body = &body * &s_series.dilate(&qi(m as i64));
    }
    body = &body * &s_series.inverse();
    let g_series = body.shift((n - 1) as usize).truncate(order);
    // weights [z^{r−c}]𝒮(d z) / c! for even c ≤ r
    let s_d = script_s(r as usize + 1).dilate(&qi(d as i64));
    let weights: Vec<(u32, Q)> = (0..=r)
        .step_by(2)
        .map(|c| (c, s_d.coeff((r - c) as usize) / qb(factorial(c as u64))))
        .collect();
    let mut dp = vec![Q::zero(); order];
    dp[0] = Q::one();
    for _ in 0..b {
        let mut next = vec![Q::zero(); order];
        for (j, v) in dp.iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            for (c, w) in &weights {
                let k = j + *c as usize;
                if k < order {
                    next[k] += v * w;
                }
            }
        }
        dp = next;
    }
    let mut total = Q::zero();
    for (j, v) in dp.iter().enumerate() {
        total += v * g_series.coeff(j) * qb(factorial(j as u64));
    }
    total *= pow2(b as i64);
    let prefactor = qpow(&qb(factorial(r as u64)), b as i64) / qb(factorial(b as u64))
        * qpow(&qi(d as i64), b as i64 - 1)
        * pow2(-(b as i64 + g as i64 - 1));
    Ok(prefactor * total)
}

/// Single one-part numbers via the double formula with `μ = (1^d)`, divided by `d!`.
pub fn one_part_single_via_double(g: u32, mu: u32, r: u32) -> Result<Q> {
    Ok(one_part_double(g, mu, &Partition::ones(mu), r)? / qb(factorial(mu as u64)))
}

/// The `b = 1` case: `r!/(2^{g−1} μ!) [z^{2g}] ϙ(z) 𝒮(zμ) 𝒮(z)^{μ−1}`.
pub fn one_part_single_b1(g: u32, mu: u32, r: u32) -> Result<Q> {
    half_r(r)?;
    let b = integral_b(2 * g as i64 - 1 + mu as i64, r, "one-part single")?;
    if b != 1 {
        return Err(Error::Domain(format!(
            "b = {b}, the specialization needs b = 1"
        )));
    }
    let order = 2 * g as usize + 1;
    let s = script_s(order);
    let series = &(&qoppa(order) * &s.dilate(&qi(mu as i64))) * &s.powi(mu - 1);
    Ok(qb(factorial(r as u64)) / qb(factorial(mu as u64))
        * pow2(1 - g as i64)
        * series.coeff(2 * g as usize))
}

/// `[u^{2g−1+μ}] (−Δ)^{μ−1} f(1) / (2^g μ² (μ−1)!)` with
/// `f(l) = exp(u^r (l^{r+1} − (l−μ)^{r+1})/(r+1))`.
pub fn one_part_single_fd(g: u32, mu: u32, r: u32) -> Result<Q> {
    half_r(r)?;
    if mu % 2 == 0 {
        return Err(Error::WrongClass {
            partition: format!("({mu})"),
            expected: "odd",
        });
    }
    let target = (2 * g + mu - 1) as usize;
    if target % r as usize != 0 {
        return Ok(Q::zero());
    }
    let order = target + 1;
    let n = mu - 1;
    let mut acc = TruncatedSeries::zero(order);
    for k in 0..=n {
        let l = 1 + k as i64;
        let exponent = (qpow(&qi(l), r as i64 + 1) - qpow(&qi(l - mu as i64), r as i64 + 1))
            / qi(r as i64 + 1);
        let mut inner = TruncatedSeries::zero(order);
        if (r as usize) < order {
            inner = TruncatedSeries::from_fn(order, |i| {
                if i == r as usize {
                    exponent.clone()
                } else {
                    Q::zero()
                }
            });
        }
        let f = inner.exp();
        let sign = if k % 2 == 0 { qi(1) } else { qi(-1) };
        acc = &acc + &f.scale(&(sign * qb(binomial(n as i64, k as i64))));
    }
    let denom = pow2(g as i64) * qi((mu as i64).pow(2)) * qb(factorial(n as u64));
    Ok(acc.coeff(target) / denom)
}

/// The coefficient `C_a` of the Stirling formula.
pub fn stirling_coefficient(a: u32, g: u32, b: u32, s: u32) -> Q {
    let m = qi(2 * s as i64 * b as i64 - 2 * g as i64 + 1);
    let mut total = Q::zero();
    for lambda in enumerate(a, PartitionClass::All) {
        let len = lambda.len() as u32;
        if len > b {
            continue;
        }
        // multinomial over part multiplicities, i.e. transposed-partition differences
        let mut multinomial = qb(factorial(b as u64)) / qb(factorial((b - len) as u64));
        for (_, mult) in lambda.multiplicities() {
            multinomial /= qb(factorial(mult as u64));
        }
        let mut prod = Q::one();
        for &part in lambda.parts() {
            prod *= qb(binomial(2 * s as i64 + 1, part as i64 + 1)) / qi(2 * s as i64 + 1);
        }
        total += multinomial * prod;
    }
    let sign = if a % 2 == 0 { qi(1) } else { qi(-1) };
    sign * total * qpow(&m, (a + b) as i64)
}

/// `(1/(2^g μ² b!)) Σ_{a=0}^{2g} C_a S(μ+2g−a, μ)`.
pub fn one_part_single_stirling(g: u32, mu: u32, r: u32) -> Result<Q> {
    let s = half_r(r)?;
    if mu % 2 == 0 {
        return Err(Error::WrongClass {
            partition: format!("({mu})"),
            expected: "odd",
        });
    }
    let b = integral_b(2 * g as i64 - 1 + mu as i64, r, "one-part single")?;
    let mut total = Q::zero();
    for a in 0..=2 * g {
        total += stirling_coefficient(a, g, b, s) * qb(stirling2(mu + 2 * g - a, mu));
    }
    Ok(total / (pow2(g as i64) * qi((mu as i64).pow(2)) * qb(factorial(b as u64))))
}

/// Genus one: `h = (s²/12) μ^{b−1}/(b−1)! (μ + 1/s)` for `μ = 2sb − 1`.
pub fn genus_one_closed(mu: u32, r: u32) -> Result<Q> {
    let s = half_r(r)?;
    let b = integral_b(1 + mu as i64, r, "genus-one")?;
    if b == 0 {
        return Err(Error::NoCovers("genus one needs b ≥ 1".into()));
    }
    let s = qi(s as i64);
    let m = qi(mu as i64);
    Ok(&s * &s / qi(12) * qpow(&m, b as i64 - 1) / qb(factorial(b as u64 - 1)) * (m + s.recip()))
}

/// `(W(−t)/(−t))^α = Σ α (m+α)^{m−1} t^m / m!`.
pub fn lambert_power_series(alpha: &Q, order: usize) -> TruncatedSeries {
    TruncatedSeries::from_fn(order, |m| {
        if m == 0 {
            return Q::one();
        }
        let base = qi(m as i64) + alpha;
        let pw = if base.is_zero() {
            if m == 1 {
                Q::one()
            } else {
                Q::zero()
            }
        } else {
            qpow(&base, m as i64 - 1)
        };
        alpha * pw / qb(factorial(m as u64))
    })
}

/// `F_{0,1}` as a series in `X = e^x`: coefficient `(2sb+1)^{b−2}/b!` at `X^{2sb+1}`.
pub fn f01_series(r: u32, order: usize) -> Result<TruncatedSeries> {
    let s = half_r(r)? as usize;
    Ok(TruncatedSeries::from_fn(order, |k| {
        if k % (2 * s) == 1 {
            let b = (k - 1) / (2 * s);
            qpow(&qi(k as i64), b as i64 - 2) / qb(factorial(b as u64))
        } else {
            Q::zero()
        }
    }))
}

/// Coefficient of `e^{μ₁x₁+μ₂x₂}` in `F_{0,2}`:
/// `(2s/(μ₁+μ₂)) ∏ μ_i^{⌊μ_i/2s⌋}/⌊μ_i/2s⌋!` when `2s | μ₁+μ₂`.
pub fn f02_coefficient(r: u32, mu1: u32, mu2: u32) -> Result<Q> {
    let s = half_r(r)?;
    let two_s = 2 * s;
    if (mu1 + mu2) % two_s != 0 || mu1 % 2 == 0 || mu2 % 2 == 0 {
        return Ok(Q::zero());
    }
    let factor = |m: u32| {
        let e = m / two_s;
        qpow(&qi(m as i64), e as i64) / qb(factorial(e as u64))
    };
    Ok(qi(two_s as i64) / qi((mu1 + mu2) as i64) * factor(mu1) * factor(mu2))
}

/// All nonzero `F_{0,2}` coefficients with `μ₁, μ₂ ≤ max_part`.
pub fn f02_series(r: u32, max_part: u32) -> Result<BTreeMap<(u32, u32), Q>> {
    let mut out = BTreeMap::new();
    for m1 in 1..=max_part {
        for m2 in 1..=max_part {
            let c = f02_coefficient(r, m1, m2)?;
            if !c.is_zero() {
                out.insert((m1, m2), c);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stirling_values() {
        assert_eq!(stirling2(4, 2), BigInt::from(7));
        assert_eq!(stirling2(5, 5), BigInt::from(1));
        assert_eq!(stirling2(0, 0), BigInt::from(1));
        assert_eq!(stirling2(3, 0), BigInt::from(0));
    }

    #[test]
    fn fd_examples() {
        assert_eq!(one_part_single_fd(0, 1, 2).unwrap(), qi(1));
        assert_eq!(one_part_single_fd(1, 5, 2).unwrap(), q(25, 4));
        assert_eq!(one_part_single_fd(2, 9, 6).unwrap(), q(11109, 4));
    }

    #[test]
    fn stirling_examples() {
        assert_eq!(one_part_single_stirling(1, 3, 4).unwrap(), q(7, 6));
        assert_eq!(one_part_single_stirling(2, 5, 2).unwrap(), q(5975, 144));
        assert!(one_part_single_stirling(0, 3, 4).is_err());
    }

    #[test]
    fn one_part_double_small() {
        let three = Partition::single(3);
        assert_eq!(one_part_double(0, 3, &three, 2).unwrap(), q(1, 3));
        assert_eq!(one_part_single_via_double(0, 3, 2).unwrap(), q(1, 3));
        assert_eq!(one_part_single_via_double(1, 3, 2).unwrap(), qi(1));
    }

    #[test]
    fn lambert_first_terms() {
        let s = lambert_power_series(&qi(1), 4);
        assert_eq!(s.coeffs(), &[qi(1), qi(1), q(3, 2), q(8, 3)]);
    }

    #[test]
    fn free_energy_examples() {
        let f = f01_series(2, 10).unwrap();
        assert_eq!(f.coeff(1), qi(1));
        assert_eq!(f.coeff(3), q(1, 3));
        assert_eq!(f01_series(4, 10).unwrap().coeff(9), q(1, 2));
        assert_eq!(f02_coefficient(2, 1, 1).unwrap(), qi(1));
        assert_eq!(f02_coefficient(2, 3, 1).unwrap(), q(3, 2));
        assert_eq!(f02_coefficient(4, 7, 1).unwrap(), q(7, 2));
        assert_eq!(f02_coefficient(4, 3, 3).unwrap(), qi(0));
    }
}
