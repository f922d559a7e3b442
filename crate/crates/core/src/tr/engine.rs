//! The recursion on the spin curve `x = log z − z^{2s}`, `y = z`.

use std::collections::BTreeMap;
use std::sync::{Arc, RwLock};

use num_traits::One;
use rayon::prelude::*;

use super::algebra::AlgebraicScalar;
use super::correlator::Correlator;
use super::local::{LocalSeries, Ring, SpecFn};
use crate::error::{Error, Result};
use crate::poly::MPoly;
use crate::rational::{binomial, qb, qi, Q};

/// Environment variable adding extra local orders on top of the pole bound.
pub const MARGIN_ENV: &str = "SPINH_TRUNCATION_MARGIN";

fn default_margin() -> usize {
    std::env::var(MARGIN_ENV)
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(2)
}

pub type Known = BTreeMap<(u32, usize), Arc<Correlator>>;

#[derive(Clone, Debug)]
pub struct TrConfig {
    pub s: u32,
    /// Multiplier of the bidifferential.
    pub lambda: Q,
    /// Sum only over the representatives `a_0, …, a_{s−1}`.
    pub half_orbit: bool,
    pub margin: usize,
}

impl TrConfig {
    pub fn spin(r: u32) -> Result<Self> {
        Ok(TrConfig {
            s: half(r)?,
            lambda: Q::one(),
            half_orbit: false,
            margin: default_margin(),
        })
    }

    /// The quotient-curve run with doubled bidifferential.
    pub fn reduced(r: u32) -> Result<Self> {
        Ok(TrConfig {
            s: half(r)?,
            lambda: qi(2),
            half_orbit: true,
            margin: default_margin(),
        })
    }
}

fn half(r: u32) -> Result<u32> {
    if r == 0 || r % 2 == 1 {
        return Err(Error::Domain(format!("r = {r} must be positive and even")));
    }
    Ok(r / 2)
}

/// `ξ_j = [ζ^j] x(a+ζ)` for `j ≤ upto`; entries 0 and 1 are zero.
fn x_taylor(s: u32, upto: usize) -> Vec<AlgebraicScalar> {
    let two_s = 2 * s as i64;
    (0..=upto)
        .map(|j| {
            if j < 2 {
                return AlgebraicScalar::zero(s);
            }
            let sign = if j % 2 == 1 { Q::one() } else { -Q::one() };
            let c = sign / qi(j as i64) - qb(binomial(two_s, j as i64)) / qi(two_s);
            AlgebraicScalar::monomial(s, c, -(j as i64))
        })
        .collect()
}

fn mul_trunc(
    f: &[AlgebraicScalar],
    g: &[AlgebraicScalar],
    deg: usize,
    s: u32,
) -> Vec<AlgebraicScalar> {
    let mut out = vec![AlgebraicScalar::zero(s); deg + 1];
    for (i, fi) in f.iter().enumerate().take(deg + 1) {
        if fi.is_zero() {
            continue;
        }
        for (j, gj) in g.iter().enumerate().take(deg + 1 - i) {
            if !gj.is_zero() {
                out[i + j] = &out[i + j] + &(fi * gj);
            }
        }
    }
    out
}

/// Coefficients `σ_0, …, σ_len` of the local involution `ζ ↦ Σ σ_k ζ^k`.
pub fn involution_coefficients(s: u32, len: usize) -> Vec<AlgebraicScalar> {
    let xi = x_taylor(s, len + 1);
    let mut sc = vec![AlgebraicScalar::zero(s); len + 1];
    sc[1] = AlgebraicScalar::from_rational(s, -Q::one());
    let inv = xi[2].scale(&qi(2)).inverse().expect("ξ₂ is a unit");
    for m in 3..=len + 1 {
        let mut pw = sc.clone();
        let mut c = AlgebraicScalar::zero(s);
        for x in xi.iter().take(m + 1).skip(2) {
            pw = mul_trunc(&pw, &sc, m, s);
            c = &c + &(x * &pw[m]);
        }
        sc[m - 1] = &(&c - &xi[m]) * &inv;
    }
    sc
}

/// The involution fixing a ramification point, as a series in `ζ = z − a`.
pub fn involution_series(s: u32, order: usize) -> Result<LocalSeries> {
    if order < 2 {
        return Err(Error::Domain("involution order must be at least 2".into()));
    }
    let ring = Ring::new(s, 0);
    Ok(ring.series_from_scalars(1, &involution_coefficients(s, order)[1..]))
}

/// `x(a + t) − x(a)` for a local series `t`, used to test the involution.
pub fn x_difference(s: u32, t: &LocalSeries) -> LocalSeries {
    let ring = Ring::new(s, 0);
    let len = t.coeffs.len();
    let xi = x_taylor(s, len + 1);
    let coeffs: Vec<SpecFn> = xi.iter().map(|x| ring.scalar(x)).collect();
    ring.substitute(&coeffs, t)
}

/// Local data at `a + t`: powers of `a + t` and `1/D(a + t)`.
struct LocalPoint {
    t: LocalSeries,
    powers: Vec<LocalSeries>,
    dinv: LocalSeries,
}

impl LocalPoint {
    fn new(ring: &Ring, t: LocalSeries, max_degree: u32) -> Result<Self> {
        let len = t.coeffs.len();
        let mut shifted = ring.series_zero(0, len);
        shifted.coeffs[0] = ring.scalar(&AlgebraicScalar::generator(ring.s));
        shifted = ring.series_add(&shifted, &t);
        let top = max_degree.max(2 * ring.s) as usize;
        let mut powers = Vec::with_capacity(top + 1);
        let mut one = ring.series_zero(0, len);
        one.coeffs[0] = ring.constant(Q::one());
        powers.push(one.clone());
        for p in 0..top {
            powers.push(ring.series_mul(&powers[p], &shifted));
        }
        let d = ring.series_sub(
            &one,
            &LocalSeries {
                val: 0,
                coeffs: powers[2 * ring.s as usize]
                    .coeffs
                    .iter()
                    .map(|c| ring.scale(c, &qi(2 * ring.s as i64)))
                    .collect(),
            },
        );
        let dinv = ring.series_inverse(&d)?;
        Ok(LocalPoint { t, powers, dinv })
    }
}

enum Factor {
    Bidifferential(usize),
    Stable(u32, Vec<usize>),
}

struct Step<'a> {
    ring: Ring,
    config: &'a TrConfig,
    known: &'a Known,
    near: LocalPoint,
    far: LocalPoint,
}

impl Step<'_> {
    fn lookup(&self, g: u32, n: usize) -> Result<&Correlator> {
        self.known
            .get(&(g, n))
            .map(|c| c.as_ref())
            .ok_or_else(|| Error::Missing(format!("correlator ({g},{n})")))
    }

    /// Local expansion of a stable correlator with its leading variables at the given points.
    fn expand(
        &self,
        corr: &Correlator,
        points: &[&LocalPoint],
        spectators: &[usize],
    ) -> LocalSeries {
        let ring = &self.ring;
        let m = points.len();
        let nv = ring.nvars();
        let mut den = vec![0; ring.n];
        let mut factor = Q::one();
        for (j, &w) in spectators.iter().enumerate() {
            let e = corr.exponents()[m + j];
            den[w] = e;
            factor *= num_traits::pow(-qi(2 * ring.s as i64).recip(), e as usize);
        }
        let mut groups: BTreeMap<Vec<u32>, MPoly> = BTreeMap::new();
        for (e, c) in corr.numerator().terms() {
            let mut f = vec![0; nv];
            for (j, &w) in spectators.iter().enumerate() {
                f[w + 1] = e[m + j];
            }
            groups
                .entry(e[..m].to_vec())
                .or_insert_with(|| MPoly::zero(nv))
                .add_term(f, c * &factor);
        }
        let len = points[0].t.coeffs.len();
        let mut acc = ring.series_zero(0, len);
        if m == 1 {
            for (k, p) in groups {
                let c = SpecFn {
                    num: p,
                    den: den.clone(),
                };
                acc = ring.series_add(
                    &acc,
                    &ring.series_scale(&points[0].powers[k[0] as usize], &c),
                );
            }
        } else {
            let mut by_first: BTreeMap<u32, Vec<(u32, MPoly)>> = BTreeMap::new();
            for (k, p) in groups {
                by_first.entry(k[0]).or_default().push((k[1], p));
            }
            for (p0, rest) in by_first {
                let mut inner = ring.series_zero(0, len);
                for (p1, c) in rest {
                    let c = SpecFn {
                        num: c,
                        den: den.clone(),
                    };
                    inner = ring.series_add(
                        &inner,
                        &ring.series_scale(&points[1].powers[p1 as usize], &c),
                    );
                }
                acc = ring.series_add(
                    &acc,
                    &ring.series_mul(&points[0].powers[p0 as usize], &inner),
                );
            }
        }
        for (i, pt) in points.iter().enumerate() {
            let e = corr.exponents()[i];
            if e > 0 {
                acc = ring.series_mul(&acc, &ring.series_pow(&pt.dinv, e));
            }
        }
        acc
    }

    /// `λB(a + t, z_w)` expanded in the local coordinate.
    fn bidifferential(&self, pt: &LocalPoint, w: usize, is_near: bool) -> LocalSeries {
        let ring = &self.ring;
        let len = pt.t.coeffs.len();
        let coeffs: Vec<SpecFn> = (0..len)
            .map(|k| {
                let minus = ring.inverse_power_of_difference(w, false, k as u32 + 2);
                let mut plus = ring.inverse_power_of_difference(w, true, k as u32 + 2);
                if k % 2 == 1 {
                    plus = ring.neg(&plus);
                }
                ring.scale(
                    &ring.add(&minus, &plus),
                    &(&self.config.lambda * qi(k as i64 + 1) / qi(2)),
                )
            })
            .collect();
        if is_near {
            LocalSeries { val: 0, coeffs }
        } else {
            ring.substitute(&coeffs, &pt.t)
        }
    }

    fn factor(&self, f: &Factor, pt: &LocalPoint, is_near: bool) -> Result<LocalSeries> {
        match f {
            Factor::Bidifferential(w) => Ok(self.bidifferential(pt, *w, is_near)),
            Factor::Stable(g, spect) => {
                let corr = self.lookup(*g, 1 + spect.len())?;
                Ok(self.expand(corr, &[pt], spect))
            }
        }
    }

    fn factor_for(g: u32, spect: Vec<usize>) -> Factor {
        if g == 0 && spect.len() == 1 {
            Factor::Bidifferential(spect[0])
        } else {
            Factor::Stable(g, spect)
        }
    }
}

fn stable(g: u32, n: usize) -> bool {
    2 * g as i64 - 2 + n as i64 > 0
}

/// Stable correlators needed to compute `ω_{g,n}`.
pub fn prerequisites(g: u32, n: usize) -> Vec<(u32, usize)> {
    let mut out = Vec::new();
    if g >= 1 && stable(g - 1, n + 1) {
        out.push((g - 1, n + 1));
    }
    for g1 in 0..=g {
        for m in 0..n {
            if stable(g1, 1 + m) && (g1, 1 + m) != (g, n) && !out.contains(&(g1, 1 + m)) {
                out.push((g1, 1 + m));
            }
        }
    }
    out
}

/// One application of the recursion: `ω_{g,n}` from the lower correlators in `known`.
pub fn recursion_step(config: &TrConfig, g: u32, n: usize, known: &Known) -> Result<Correlator> {
    if !stable(g, n) {
        return Err(Error::Domain(format!(
            "({g},{n}) is not in the stable range"
        )));
    }
    let s = config.s;
    let pole = 6 * g as usize + 2 * n - 4;
    let order = pole + 2 + config.margin;
    let len = 2 * order;
    let ring = Ring::new(s, n);
    let sc = involution_coefficients(s, len);
    let sigma = ring.series_from_scalars(1, &sc[1..]);
    let zeta = ring.coordinate(len);
    let xi = x_taylor(s, len + 1);
    let dx: Vec<AlgebraicScalar> = (0..len)
        .map(|i| xi[i + 2].scale(&qi(i as i64 + 2)))
        .collect();
    let dx = ring.series_from_scalars(1, &dx);
    let diff = ring.series_sub(&zeta, &sigma);
    let kernel = ring.series_inverse(&ring.series_mul(&diff, &dx))?;
    let dsigma = ring.series_derivative(&sigma);

    let mut max_degree = 0;
    for key in prerequisites(g, n) {
        let c = known
            .get(&key)
            .ok_or_else(|| Error::Missing(format!("correlator {key:?}")))?;
        for i in 0..c.n {
            max_degree = max_degree.max(c.numerator().degree_in(i));
        }
    }
    let near = LocalPoint::new(&ring, zeta.clone(), max_degree)?;
    let far = LocalPoint::new(&ring, sigma.clone(), max_degree)?;
    let step = Step {
        ring,
        config,
        known,
        near,
        far,
    };
    let ring = &step.ring;

    let spectators: Vec<usize> = (1..n).collect();
    let mut pairs: Vec<(Factor, Factor)> = Vec::new();
    for g1 in 0..=g {
        for mask in 0u32..(1 << spectators.len()) {
            let left: Vec<usize> = spectators
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &w)| w)
                .collect();
            let right: Vec<usize> = spectators
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 0)
                .map(|(_, &w)| w)
                .collect();
            let g2 = g - g1;
            if (g1 == 0 && left.is_empty()) || (g2 == 0 && right.is_empty()) {
                continue;
            }
            pairs.push((Step::factor_for(g1, left), Step::factor_for(g2, right)));
        }
    }
    let mut terms: Vec<LocalSeries> = pairs
        .par_iter()
        .map(|(a, b)| -> Result<LocalSeries> {
            let left = step.factor(a, &step.near, true)?;
            let right = step.factor(b, &step.far, false)?;
            Ok(ring.series_mul(&left, &right))
        })
        .collect::<Result<_>>()?;
    if g >= 1 {
        if (g - 1, n + 1) == (0, 2) {
            let inv_diff = ring.series_inverse(&diff)?;
            let mut sum = ring.series_add(&zeta, &sigma);
            sum.val = 0;
            sum.coeffs
                .insert(0, ring.scalar(&AlgebraicScalar::generator(s).scale(&qi(2))));
            sum.coeffs.pop();
            let inv_sum = ring.series_inverse(&sum)?;
            let b = ring.series_add(
                &ring.series_pow(&inv_diff, 2),
                &ring.series_pow(&inv_sum, 2),
            );
            terms.push(ring.series_scale(&b, &ring.constant(&config.lambda / qi(2))));
        } else {
            let corr = step.lookup(g - 1, n + 1)?;
            terms.push(step.expand(corr, &[&step.near, &step.far], &spectators));
        }
    }
    let mut bracket = ring.series_zero(0, len);
    for t in &terms {
        bracket = ring.series_add(&bracket, t);
    }
    let integrand = ring
        .series_mul(&ring.series_mul(&bracket, &dsigma), &kernel)
        .normalized();

    let kmax = (-1 - integrand.val).max(0) as usize;
    let mut sigma_powers = vec![ring.series_pow(&sigma, 0)];
    for k in 1..=kmax {
        sigma_powers.push(ring.series_mul(&sigma_powers[k - 1], &sigma));
    }
    let quarter = &config.lambda / qi(4);
    let pieces: Vec<SpecFn> = (1..=kmax)
        .into_par_iter()
        .map(|k| -> Result<SpecFn> {
            let mut zk = ring.series_zero(k as i64, len);
            zk.coeffs[0] = ring.constant(Q::one());
            let delta = ring.series_sub(&zk, &sigma_powers[k]);
            let res = residue_of_product(ring, &delta, &integrand)?;
            if res.num.is_zero() {
                return Ok(ring.zero());
            }
            let minus = ring.inverse_power_of_difference(0, false, k as u32 + 1);
            let mut plus = ring.inverse_power_of_difference(0, true, k as u32 + 1);
            if k % 2 == 1 {
                plus = ring.neg(&plus);
            }
            let outer = ring.sub_fn(&minus, &plus);
            Ok(ring.scale(&ring.mul(&res, &outer), &quarter))
        })
        .collect::<Result<_>>()?;
    let mut total = ring.zero();
    for p in &pieces {
        total = ring.add(&total, p);
    }

    let weight = if config.half_orbit {
        qi(s as i64)
    } else {
        qi(2 * s as i64)
    };
    let mut num = MPoly::zero(n);
    for (e, c) in total.num.terms() {
        if e[0] == 0 {
            num.add_term(e[1..].to_vec(), c * &weight);
        } else if config.half_orbit && e[0] % 2 == 1 {
            return Err(Error::Domain(
                "half-orbit sum is not rational: odd powers of a survive".into(),
            ));
        }
    }
    let mut factor = Q::one();
    for &e in &total.den {
        factor *= num_traits::pow(-qi(2 * s as i64), e as usize);
    }
    let corr = Correlator::new(g, s, num.scale(&factor), total.den.clone());
    if corr.max_pole_order() as usize > pole {
        return Err(Error::Truncation(format!(
            "ω_({g},{n}) has a pole of order {} above the bound {pole}",
            corr.max_pole_order()
        )));
    }
    Ok(corr)
}

/// Coefficient of `ζ^{−1}` in `f·g`, checking that every needed coefficient is known.
fn residue_of_product(ring: &Ring, f: &LocalSeries, g: &LocalSeries) -> Result<SpecFn> {
    if f.precision() <= -1 - g.val || g.precision() <= -1 - f.val {
        return Err(Error::Truncation(
            "local expansion too short for the residue".into(),
        ));
    }
    let mut acc = ring.zero();
    for i in f.val..f.precision() {
        let j = -1 - i;
        if j < g.val {
            break;
        }
        let fi = f.coeff_or_zero(ring, i);
        if fi.num.is_zero() {
            continue;
        }
        acc = ring.add(&acc, &ring.mul(&fi, &g.coeff_or_zero(ring, j)));
    }
    Ok(acc)
}

/// Correlators computed on demand and cached by `(g, n)`.
pub struct TrEngine {
    config: TrConfig,
    cache: RwLock<Known>,
}

impl TrEngine {
    pub fn new(config: TrConfig) -> Self {
        TrEngine {
            config,
            cache: RwLock::new(BTreeMap::new()),
        }
    }

    pub fn spin(r: u32) -> Result<Self> {
        Ok(Self::new(TrConfig::spin(r)?))
    }

    pub fn config(&self) -> &TrConfig {
        &self.config
    }

    pub fn correlator(&self, g: u32, n: usize) -> Result<Arc<Correlator>> {
        if let Some(c) = self.cache.read().expect("cache lock").get(&(g, n)) {
            return Ok(c.clone());
        }
        for (g1, n1) in prerequisites(g, n) {
            self.correlator(g1, n1)?;
        }
        let known = self.cache.read().expect("cache lock").clone();
        let corr = Arc::new(recursion_step(&self.config, g, n, &known)?);
        self.cache
            .write()
            .expect("cache lock")
            .insert((g, n), corr.clone());
        Ok(corr)
    }
}

/// `ω̂_{g,n}` from the half-orbit run with bidifferential `2B`.
pub fn reduced_correlator(r: u32, g: u32, n: usize) -> Result<Arc<Correlator>> {
    TrEngine::new(TrConfig::reduced(r)?).correlator(g, n)
}
