//! Interpolation probes for quasi-polynomiality and strong piecewise polynomiality.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::{design_rank, fit_polynomial, monomials, Fit, MultiPoly};
use crate::partitions::Partition;
use crate::rational::{binomial, factorial, qb, qi, qpow, Q};

use super::{check_r, connected_double, connected_single, spin_double_disconnected};

/// Result of fitting stripped connected single numbers with fixed residues.
#[derive(Clone, Debug)]
pub struct QuasiPolynomialReport {
    pub g: u32,
    pub n: usize,
    pub r: u32,
    pub residues: Vec<u32>,
    pub max_degree: u32,
    pub polynomial: MultiPoly,
    pub fit_points: usize,
    pub holdout_points: usize,
    /// Held-out points where the fit disagrees: (μ, stripped value, prediction).
    pub failures: Vec<(Vec<u32>, Q, Q)>,
}

impl QuasiPolynomialReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.holdout_points > 0
    }
}

/// `μ = r[μ] + r − (2⟨μ⟩ + 1)`.
fn part_from(r: u32, quotient: u32, residue: u32) -> u32 {
    r * quotient + r - (2 * residue + 1)
}

fn strip_factor(mu: u32, quotient: u32) -> Q {
    qpow(&qi(mu as i64), quotient as i64) / qb(factorial(quotient as u64))
}

/// Tuples of non-negative integers with total at most `total`, ordered by total.
fn tuples_up_to(n: usize, total: u32) -> Vec<Vec<u32>> {
    let mut all = monomials(n, total);
    all.sort_by_key(|e| (e.iter().sum::<u32>(), e.clone()));
    all
}

/// Fits connected single numbers `h°_{g;μ}`, divided by `∏ μ_i^{[μ_i]}/[μ_i]!`, by a polynomial
/// of degree `≤ 3g − 3 + n` on points with the given residues, and checks held-out points.
pub fn quasi_polynomiality_probe(
    g: u32,
    n: usize,
    r: u32,
    residues: &[u32],
    sample_size: usize,
) -> Result<QuasiPolynomialReport> {
    check_r(r)?;
    let s = r / 2;
    if 2 * g as i64 - 2 + n as i64 <= 0 {
        return Err(Error::Domain(format!("(g, n) = ({g}, {n}) is unstable")));
    }
    if residues.len() != n || residues.iter().any(|&a| a >= s) {
        return Err(Error::Domain(format!(
            "residues {residues:?} must be {n} values below {s}"
        )));
    }
    let total: i64 = residues.iter().map(|&a| a as i64).sum();
    if (total - (g as i64 - 1)).rem_euclid(s as i64) != 0 {
        return Err(Error::NoCovers(format!(
            "residue sum {total} is not g − 1 mod {s}"
        )));
    }
    let max_degree = 3 * g + n as u32 - 3;
    let needed = binomial(max_degree as i64 + n as i64, n as i64);
    let needed: usize = needed.try_into().expect("small");
    if sample_size <= needed {
        return Err(Error::InsufficientSamples(format!(
            "{sample_size} points cannot fit {needed} coefficients and hold some out"
        )));
    }
    let mut level = max_degree;
    let quotients = loop {
        let t = tuples_up_to(n, level);
        if t.len() >= sample_size {
            break t.into_iter().take(sample_size).collect::<Vec<_>>();
        }
        level += 1;
    };
    let samples: Vec<(Vec<u32>, Q)> = quotients
        .par_iter()
        .map(|qs| -> Result<(Vec<u32>, Q)> {
            let parts: Vec<u32> = qs
                .iter()
                .zip(residues)
                .map(|(&k, &a)| part_from(r, k, a))
                .collect();
            let mu = Partition::new(parts.clone())?;
            let h = connected_single(g, &mu, r)?;
            let strip: Q = qs
                .iter()
                .zip(&parts)
                .map(|(&k, &m)| strip_factor(m, k))
                .product();
            Ok((parts, h / strip))
        })
        .collect::<Result<_>>()?;
    let as_point = |parts: &[u32]| parts.iter().map(|&m| qi(m as i64)).collect::<Vec<Q>>();
    // the first `needed` points form a unisolvent simplex of quotients
    let fit_set: Vec<(Vec<Q>, Q)> = samples[..needed]
        .iter()
        .map(|(p, v)| (as_point(p), v.clone()))
        .collect();
    let polynomial = match fit_polynomial(&fit_set, n, max_degree) {
        Fit::Unique(p) => p,
        Fit::Underdetermined(rk) => {
            return Err(Error::InsufficientSamples(format!(
                "design rank {rk} < {needed}"
            )))
        }
        Fit::Inconsistent => unreachable!("square unisolvent system"),
    };
    let failures = samples[needed..]
        .iter()
        .filter_map(|(p, v)| {
            let pred = polynomial.eval(&as_point(p));
            (pred != *v).then(|| (p.clone(), v.clone(), pred))
        })
        .collect();
    Ok(QuasiPolynomialReport {
        g,
        n,
        r,
        residues: residues.to_vec(),
        max_degree,
        polynomial,
        fit_points: needed,
        holdout_points: samples.len() - needed,
        failures,
    })
}

/// Per-chamber interpolation data.
#[derive(Clone, Debug)]
pub struct ChamberFit {
    /// Signs of `|μ_I| − |ν_J|` over the wall list.
    pub signature: Vec<i8>,
    pub polynomial: Option<MultiPoly>,
    pub fit_points: usize,
    pub holdout_points: usize,
    pub holdout_failures: usize,
    pub degrees: Vec<u32>,
    pub degree_parity_ok: bool,
}

/// Result of the strong piecewise polynomiality probe.
#[derive(Clone, Debug)]
pub struct PiecewiseReport {
    pub g: u32,
    pub m: usize,
    pub n: usize,
    pub r: u32,
    /// `ℓ(μ) + ℓ(ν)` odd: no Riemann–Hurwitz solution, so the domain is empty.
    pub empty_domain: bool,
    pub b: u32,
    pub allowed_degrees: Vec<u32>,
    pub chambers: Vec<ChamberFit>,
    /// Wall points where connected and disconnected numbers differ, and sampled
    /// off-wall points where they differ (must be zero).
    pub off_wall_disconnected_mismatches: usize,
    /// Pairs of fitted chambers, and how many of them admit no common polynomial.
    pub chamber_pairs: usize,
    pub straddling_fits_failing: usize,
}

impl PiecewiseReport {
    pub fn passed(&self) -> bool {
        if self.empty_domain {
            return true;
        }
        let fitted = self
            .chambers
            .iter()
            .filter(|c| c.polynomial.is_some())
            .count();
        fitted > 0
            && self.off_wall_disconnected_mismatches == 0
            && self
                .chambers
                .iter()
                .all(|c| c.polynomial.is_none() || (c.holdout_failures == 0 && c.degree_parity_ok))
            && self.straddling_fits_failing == self.chamber_pairs
    }
}

/// Wall functionals `(I, J)` with `I ⊆ [m]`, `J ⊆ [n]` nonempty and not both full.
fn walls(m: usize, n: usize) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    for i in 1..(1u32 << m) {
        for j in 1..(1u32 << n) {
            if i == (1 << m) - 1 && j == (1 << n) - 1 {
                continue;
            }
            // keep one of each pair (I, J) ~ (I^c, J^c)
            let ic = ((1u32 << m) - 1) ^ i;
            let jc = ((1u32 << n) - 1) ^ j;
            if ic != 0 && jc != 0 && (ic, jc) < (i, j) {
                continue;
            }
            out.push((i, j));
        }
    }
    out
}

fn subset_sum(xs: &[u32], mask: u32) -> i64 {
    xs.iter()
        .enumerate()
        .filter(|(k, _)| mask & (1 << k) != 0)
        .map(|(_, &x)| x as i64)
        .sum()
}

/// Odd tuples of length `len` with every entry below `max_part`.
fn odd_tuples(len: usize, max_part: u32) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|t| {
                (1..=max_part).step_by(2).map(move |x| {
                    let mut u = t.clone();
                    u.push(x);
                    u
                })
            })
            .collect();
    }
    out
}

/// Samples `h°_{g;μ,ν}` on ordered odd tuples with `|μ| ≤ max_size`, fits a polynomial of
/// degree `≤ 2g − 1 + b` in each chamber of the resonance arrangement, checks held-out
/// points and the allowed homogeneous degrees `2g − 1 + b − 2k`, and checks that no single
/// polynomial fits two different chambers.
pub fn piecewise_polynomiality_probe(
    g: u32,
    m: usize,
    n: usize,
    r: u32,
    max_size: u32,
) -> Result<PiecewiseReport> {
    check_r(r)?;
    if m == 0 || n == 0 {
        return Err(Error::Domain("m and n must be positive".into()));
    }
    if g == 0 && m + n == 2 {
        return Err(Error::Domain("(g, m + n) = (0, 2) is excluded".into()));
    }
    let mut report = PiecewiseReport {
        g,
        m,
        n,
        r,
        empty_domain: false,
        b: 0,
        allowed_degrees: Vec::new(),
        chambers: Vec::new(),
        off_wall_disconnected_mismatches: 0,
        chamber_pairs: 0,
        straddling_fits_failing: 0,
    };
    if (m + n) % 2 == 1 {
        report.empty_domain = true;
        return Ok(report);
    }
    let num = 2 * g as i64 - 2 + (m + n) as i64;
    if num <= 0 || num % r as i64 != 0 {
        return Err(Error::NoCovers(format!(
            "b = {num}/{r} is not a positive integer"
        )));
    }
    let b = (num / r as i64) as u32;
    let top = 2 * g + b - 1;
    report.b = b;
    report.allowed_degrees = (0..=g)
        .filter(|k| 2 * k <= top)
        .map(|k| top - 2 * k)
        .collect();
    let wall_list = walls(m, n);

    // points (μ, ν_1..ν_{n−1}) with ν_n determined
    let mut points = Vec::new();
    for mu in odd_tuples(m, max_size) {
        let size: u32 = mu.iter().sum();
        if size > max_size {
            continue;
        }
        for head in odd_tuples(n - 1, size) {
            let used: u32 = head.iter().sum();
            if used >= size || (size - used) % 2 == 0 {
                continue;
            }
            let mut nu = head.clone();
            nu.push(size - used);
            points.push((mu.clone(), nu));
        }
    }
    let values: Vec<(Vec<u32>, Vec<u32>, Vec<i8>, Q, Q)> = points
        .par_iter()
        .map(|(mu, nu)| -> Result<_> {
            let pm = Partition::new(mu.clone())?;
            let pn = Partition::new(nu.clone())?;
            let conn = connected_double(g, &pm, &pn, r)?;
            let disc = spin_double_disconnected(g, &pm, &pn, r)?;
            let sig: Vec<i8> = wall_list
                .iter()
                .map(|&(i, j)| (subset_sum(mu, i) - subset_sum(nu, j)).signum() as i8)
                .collect();
            Ok((mu.clone(), nu.clone(), sig, conn, disc))
        })
        .collect::<Result<_>>()?;

    let coords = |mu: &[u32], nu: &[u32]| -> Vec<Q> {
        mu.iter()
            .chain(&nu[..n - 1])
            .map(|&x| qi(x as i64))
            .collect()
    };
    let nvars = m + n - 1;
    let mut by_chamber: BTreeMap<Vec<i8>, Vec<(Vec<Q>, Q)>> = BTreeMap::new();
    for (mu, nu, sig, conn, disc) in &values {
        if sig.contains(&0) {
            continue;
        }
        if conn != disc {
            report.off_wall_disconnected_mismatches += 1;
        }
        by_chamber
            .entry(sig.clone())
            .or_default()
            .push((coords(mu, nu), conn.clone()));
    }

    let needed = monomials(nvars, top).len();
    let mut fitted: Vec<(usize, Vec<(Vec<Q>, Q)>)> = Vec::new();
    for (sig, pts) in by_chamber {
        let mut chamber = ChamberFit {
            signature: sig,
            polynomial: None,
            fit_points: 0,
            holdout_points: 0,
            holdout_failures: 0,
            degrees: Vec::new(),
            degree_parity_ok: true,
        };
        // greedy unisolvent subset, smallest points first
        let mut order: Vec<usize> = (0..pts.len()).collect();
        order.sort_by(|&a, &b| pts[a].0.cmp(&pts[b].0));
        let mut chosen: Vec<usize> = Vec::new();
        let mut rank = 0;
        for &k in &order {
            if rank == needed {
                break;
            }
            chosen.push(k);
            let xs: Vec<Vec<Q>> = chosen.iter().map(|&c| pts[c].0.clone()).collect();
            let new_rank = design_rank(&xs, nvars, top);
            if new_rank == rank {
                chosen.pop();
            } else {
                rank = new_rank;
            }
        }
        if rank == needed && chosen.len() < pts.len() {
            let fit_set: Vec<(Vec<Q>, Q)> = chosen.iter().map(|&c| pts[c].clone()).collect();
            if let Fit::Unique(poly) = fit_polynomial(&fit_set, nvars, top) {
                let holdout: Vec<&(Vec<Q>, Q)> = (0..pts.len())
                    .filter(|k| !chosen.contains(k))
                    .map(|k| &pts[k])
                    .collect();
                chamber.holdout_points = holdout.len();
                chamber.holdout_failures =
                    holdout.iter().filter(|(x, v)| poly.eval(x) != *v).count();
                chamber.degrees = poly.homogeneous_degrees();
                chamber.degree_parity_ok = chamber
                    .degrees
                    .iter()
                    .all(|d| report.allowed_degrees.contains(d));
                chamber.fit_points = chosen.len();
                chamber.polynomial = Some(poly);
                fitted.push((report.chambers.len(), pts));
            }
        }
        report.chambers.push(chamber);
    }
    // fitted chambers with different polynomials must not share one fit
    for (x, (i, pi)) in fitted.iter().enumerate() {
        for (j, pj) in fitted.iter().skip(x + 1) {
            if report.chambers[*i].polynomial == report.chambers[*j].polynomial {
                continue;
            }
            report.chamber_pairs += 1;
            let union: Vec<(Vec<Q>, Q)> = pi.iter().chain(pj.iter()).cloned().collect();
            if fit_polynomial(&union, nvars, top) == Fit::Inconsistent {
                report.straddling_fits_failing += 1;
            }
        }
    }
    Ok(report)
}
