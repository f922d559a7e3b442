//! Expansion of correlators in the variables `X_i = e^{x_i}` near `z = 0`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::correlator::Correlator;
use super::engine::TrEngine;
use crate::closed_forms::series::TruncatedSeries;
use crate::closed_forms::{f02_coefficient, lambert_power_series};
use crate::error::{Error, Result};
use crate::hurwitz::connected_single;
use crate::partitions::Partition;
use crate::rational::{qi, Q};

/// `z(X)` solving `z e^{−z^{2s}} = X`, modulo `X^order`.
pub fn inverse_curve_series(s: u32, order: usize) -> TruncatedSeries {
    let two_s = 2 * s as usize;
    let alpha = qi(two_s as i64).recip();
    let lam = lambert_power_series(&alpha, order / two_s + 1);
    TruncatedSeries::from_fn(order, |k| {
        if k % two_s == 1 || (two_s == 1 && k >= 1) {
            let m = (k - 1) / two_s;
            lam.coeff(m) * num_traits::pow(qi(two_s as i64), m)
        } else {
            Q::zero()
        }
    })
}

/// All ordered `n`-tuples of positive integers with sum at most `degree`.
pub fn tuples_up_to(n: usize, degree: u32) -> Vec<Vec<u32>> {
    fn rec(n: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        let rest = (n - cur.len() - 1) as u32;
        for k in 1..=left.saturating_sub(rest) {
            cur.push(k);
            rec(n, left - k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if degree as usize >= n {
        rec(n, degree, &mut Vec::new(), &mut out);
    }
    out
}

fn check_r(corr: &Correlator, r: u32) -> Result<u32> {
    if r % 2 == 1 || r / 2 != corr.s {
        return Err(Error::Domain(format!(
            "correlator built for r = {}, asked for r = {r}",
            2 * corr.s
        )));
    }
    Ok(corr.s)
}

/// Coefficients `h_μ` with `ω = Σ h_μ ∏ μ_i e^{μ_i x_i} dx_i`, for every ordered tuple with `|μ| ≤ degree`.
pub fn expand_hurwitz(corr: &Correlator, r: u32, degree: u32) -> Result<BTreeMap<Vec<u32>, Q>> {
    let s = check_r(corr, r)?;
    let order = degree as usize + 1;
    let z = inverse_curve_series(s, order + 1);
    let dz = z.derivative().truncate(order);
    let z = z.truncate(order);
    let d = &TruncatedSeries::one(order) - &z.powi(2 * s).scale(&qi(2 * s as i64));
    let dinv = d.inverse();
    let mut z_powers = vec![TruncatedSeries::one(order)];
    let top = (0..corr.n)
        .map(|i| corr.numerator().degree_in(i))
        .max()
        .unwrap_or(0);
    for p in 0..top as usize {
        z_powers.push(&z_powers[p] * &z);
    }
    let tables: Vec<Vec<TruncatedSeries>> = (0..corr.n)
        .map(|i| {
            let w = &dinv.powi(corr.exponents()[i]) * &dz;
            z_powers.iter().map(|zp| zp * &w).collect()
        })
        .collect();
    let mut out = BTreeMap::new();
    for mu in tuples_up_to(corr.n, degree) {
        let mut total = Q::zero();
        for (e, c) in corr.numerator().terms() {
            let mut term = c.clone();
            for i in 0..corr.n {
                term *= tables[i][e[i] as usize].coeff(mu[i] as usize - 1);
                if term.is_zero() {
                    break;
                }
            }
            total += term;
        }
        let prod: u32 = mu.iter().product();
        out.insert(mu, total / qi(prod as i64));
    }
    Ok(out)
}

/// `F_{0,1}` coefficients `[X^μ] z(X)/μ`.
pub fn expand_disk(r: u32, degree: u32) -> Result<BTreeMap<Vec<u32>, Q>> {
    if r == 0 || r % 2 == 1 {
        return Err(Error::Domain(format!("r = {r} must be positive and even")));
    }
    let z = inverse_curve_series(r / 2, degree as usize + 1);
    Ok((1..=degree)
        .map(|m| (vec![m], z.coeff(m as usize) / qi(m as i64)))
        .collect())
}

/// Dense bivariate series truncated above total degree `deg`.
#[derive(Clone, Debug)]
struct Bivariate {
    deg: usize,
    c: Vec<Vec<Q>>,
}

impl Bivariate {
    fn zero(deg: usize) -> Self {
        Bivariate {
            deg,
            c: vec![vec![Q::zero(); deg + 1]; deg + 1],
        }
    }

    fn mul(&self, o: &Bivariate) -> Bivariate {
        let mut out = Bivariate::zero(self.deg);
        for i in 0..=self.deg {
            for j in 0..=self.deg - i {
                if self.c[i][j].is_zero() {
                    continue;
                }
                for k in 0..=self.deg - i - j {
                    for l in 0..=self.deg - i - j - k {
                        if !o.c[k][l].is_zero() {
                            out.c[i + k][j + l] += &self.c[i][j] * &o.c[k][l];
                        }
                    }
                }
            }
        }
        out
    }

    /// `log` of a series with constant term 1.
    fn log(&self) -> Bivariate {
        let mut u = self.clone();
        u.c[0][0] -= Q::one();
        let mut out = Bivariate::zero(self.deg);
        let mut pw = u.clone();
        for k in 1..=self.deg {
            let w = if k % 2 == 1 {
                qi(k as i64).recip()
            } else {
                -qi(k as i64).recip()
            };
            for i in 0..=self.deg {
                for j in 0..=self.deg - i {
                    out.c[i][j] += &pw.c[i][j] * &w;
                }
            }
            pw = pw.mul(&u);
        }
        out
    }
}

/// `F_{0,2} = ½ log((z₁−z₂)/(X₁−X₂)) − ½ log((z₁+z₂)/(X₁+X₂))` for `μ₁ + μ₂ ≤ degree`.
pub fn expand_cylinder(r: u32, degree: u32) -> Result<BTreeMap<Vec<u32>, Q>> {
    if r == 0 || r % 2 == 1 {
        return Err(Error::Domain(format!("r = {r} must be positive and even")));
    }
    let s = (r / 2) as usize;
    let deg = degree as usize;
    let z = inverse_curve_series(s as u32, deg + 2);
    let mut minus = Bivariate::zero(deg);
    let mut plus = Bivariate::zero(deg);
    for m in 0..=deg / (2 * s) {
        let k = 2 * s * m;
        let c = z.coeff(k + 1);
        for i in 0..=k {
            let j = k - i;
            minus.c[i][j] += &c;
            plus.c[i][j] += if j % 2 == 1 { -c.clone() } else { c.clone() };
        }
    }
    let (lm, lp) = (minus.log(), plus.log());
    let half = qi(2).recip();
    let mut out = BTreeMap::new();
    for mu in tuples_up_to(2, degree) {
        let (i, j) = (mu[0] as usize, mu[1] as usize);
        out.insert(mu, (&lm.c[i][j] - &lp.c[i][j]) * &half);
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjectureCell {
    pub mu: Vec<u32>,
    pub from_recursion: Q,
    pub from_characters: Q,
    /// The closed `F_{0,2}` coefficient, for `(g, n) = (0, 2)` only.
    pub closed_form: Option<Q>,
}

impl ConjectureCell {
    pub fn agrees(&self) -> bool {
        self.from_recursion == self.from_characters
    }
}

#[derive(Clone, Debug)]
pub struct ConjectureReport {
    pub g: u32,
    pub n: usize,
    pub r: u32,
    pub degree: u32,
    pub cells: Vec<ConjectureCell>,
    /// Tuples with an even part whose coefficient is nonzero.
    pub even_part_violations: Vec<Vec<u32>>,
}

impl ConjectureReport {
    pub fn mismatches(&self) -> Vec<&ConjectureCell> {
        self.cells.iter().filter(|c| !c.agrees()).collect()
    }

    pub fn passed(&self) -> bool {
        self.mismatches().is_empty() && self.even_part_violations.is_empty()
    }
}

/// Compares the recursion with the character formula on every odd cell with `|μ| ≤ degree`.
pub fn check_conjecture(g: u32, n: usize, r: u32, degree: u32) -> Result<ConjectureReport> {
    check_conjecture_with(&TrEngine::spin(r)?, g, n, r, degree)
}

pub fn check_conjecture_with(
    engine: &TrEngine,
    g: u32,
    n: usize,
    r: u32,
    degree: u32,
) -> Result<ConjectureReport> {
    if n == 0 {
        return Err(Error::Domain("n must be positive".into()));
    }
    let expansion = match (g, n) {
        (0, 1) => expand_disk(r, degree)?,
        (0, 2) => expand_cylinder(r, degree)?,
        _ => expand_hurwitz(engine.correlator(g, n)?.as_ref(), r, degree)?,
    };
    let mut cells = Vec::new();
    let mut even_part_violations = Vec::new();
    for (mu, value) in &expansion {
        if mu.iter().any(|m| m % 2 == 0) {
            if !value.is_zero() {
                even_part_violations.push(mu.clone());
            }
            continue;
        }
        if mu.windows(2).any(|w| w[0] < w[1]) {
            continue;
        }
        let expected = match connected_single(g, &Partition::new(mu.clone())?, r) {
            Ok(v) => v,
            Err(Error::NoCovers(_)) => Q::zero(),
            Err(e) => return Err(e),
        };
        let closed_form = if (g, n) == (0, 2) {
            Some(f02_coefficient(r, mu[0], mu[1])?)
        } else {
            None
        };
        cells.push(ConjectureCell {
            mu: mu.clone(),
            from_recursion: value.clone(),
            from_characters: expected,
            closed_form,
        });
    }
    Ok(ConjectureReport {
        g,
        n,
        r,
        degree,
        cells,
        even_part_violations,
    })
}
