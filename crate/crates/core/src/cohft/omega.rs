//! The spin CohFT as a sum over stable graphs, and the spin ELSV formula.

use num_traits::{One, Zero};
use rayon::prelude::*;

use super::graphs::{enumerate_spin_weightings, enumerate_stable_graphs, StableGraph};
use super::intersection::kappa_psi_integral;
use crate::error::{Error, Result};
use crate::partitions::{Partition, PartitionClass};
use crate::poly::MPoly;
use crate::rational::{binomial, factorial, pow2, qb, qi, qpow, Q};

/// Bernoulli numbers `B_0, …, B_n` with `B_1 = −1/2`.
pub fn bernoulli_numbers(n: usize) -> Vec<Q> {
    let mut b = vec![Q::one()];
    for m in 1..=n {
        let acc: Q = (0..m)
            .map(|k| qb(binomial(m as i64 + 1, k as i64)) * &b[k])
            .sum();
        b.push(-acc / qi(m as i64 + 1));
    }
    b
}

pub fn bernoulli_polynomial(n: usize, x: &Q) -> Q {
    let b = bernoulli_numbers(n);
    (0..=n)
        .map(|k| qb(binomial(n as i64, k as i64)) * &b[k] * qpow(x, (n - k) as i64))
        .sum()
}

/// `(−1)^m B_{m+1}(x)/(m(m+1))`.
fn bernoulli_weight(m: usize, x: &Q) -> Q {
    let sign = if m % 2 == 0 { Q::one() } else { -Q::one() };
    sign * bernoulli_polynomial(m + 1, x) / qi((m * (m + 1)) as i64)
}

/// Polynomial ring for one graph: ψ of every half-edge, then κ_1..κ_{dim v} per vertex.
struct GraphRing<'a> {
    graph: &'a StableGraph,
    dims: Vec<u32>,
    kappa_offset: Vec<usize>,
    nvars: usize,
    /// Vertex and weight of each variable.
    weight: Vec<(usize, u32)>,
}

impl<'a> GraphRing<'a> {
    fn new(graph: &'a StableGraph) -> Self {
        let h = graph.num_half_edges();
        let dims: Vec<u32> = (0..graph.num_vertices())
            .map(|v| graph.vertex_dimension(v))
            .collect();
        let mut weight: Vec<(usize, u32)> = (0..h).map(|x| (graph.vertex_of(x), 1)).collect();
        let mut kappa_offset = Vec::new();
        for (v, &d) in dims.iter().enumerate() {
            kappa_offset.push(weight.len());
            for m in 1..=d {
                weight.push((v, m));
            }
        }
        GraphRing {
            graph,
            dims,
            kappa_offset,
            nvars: weight.len(),
            weight,
        }
    }

    fn fits(&self, e: &[u32]) -> bool {
        let mut deg = vec![0u32; self.dims.len()];
        for (i, &k) in e.iter().enumerate() {
            let (v, w) = self.weight[i];
            deg[v] += k * w;
        }
        deg.iter().zip(&self.dims).all(|(a, b)| a <= b)
    }

    fn truncate(&self, p: MPoly) -> MPoly {
        let mut out = MPoly::zero(self.nvars);
        for (e, c) in p.terms() {
            if self.fits(e) {
                out.add_term(e.clone(), c.clone());
            }
        }
        out
    }

    fn mul(&self, a: &MPoly, b: &MPoly) -> MPoly {
        self.truncate(a.mul(b))
    }

    /// `exp(x)` for `x` without constant term.
    fn exp(&self, x: &MPoly) -> MPoly {
        let top: u32 = self.dims.iter().sum();
        let mut acc = MPoly::one(self.nvars);
        let mut pw = MPoly::one(self.nvars);
        for j in 1..=top {
            pw = self.mul(&pw, x).scale(&qi(j as i64).recip());
            if pw.is_zero() {
                break;
            }
            acc = acc.add(&pw);
        }
        acc
    }

    fn psi(&self, h: usize, k: u32) -> MPoly {
        let mut e = vec![0; self.nvars];
        e[h] = k;
        MPoly::monomial(e, Q::one())
    }

    fn kappa(&self, v: usize, m: u32) -> MPoly {
        let mut e = vec![0; self.nvars];
        e[self.kappa_offset[v] + m as usize - 1] = 1;
        MPoly::monomial(e, Q::one())
    }

    /// `(1 − exp(−Σ c_m (ψ_h^m − (−ψ_{h'})^m))) / (ψ_h + ψ_{h'})`.
    fn edge_factor(&self, h: usize, hp: usize, x: &Q) -> MPoly {
        let top =
            (self.dims[self.graph.vertex_of(h)] + self.dims[self.graph.vertex_of(hp)]) as usize + 1;
        let mut arg = MPoly::zero(2);
        for m in 1..=top {
            let c = bernoulli_weight(m, x);
            let sign = if m % 2 == 0 { Q::one() } else { -Q::one() };
            arg.add_term(vec![m as u32, 0], -c.clone());
            arg.add_term(vec![0, m as u32], c * sign);
        }
        let keep = |e: &[u32]| (e[0] + e[1]) as usize <= top;
        let mut expo = MPoly::one(2);
        let mut pw = MPoly::one(2);
        for j in 1..=top {
            let mut next = MPoly::zero(2);
            for (e, c) in pw.mul(&arg).terms() {
                if keep(e) {
                    next.add_term(e.clone(), c / qi(j as i64));
                }
            }
            pw = next;
            expo = expo.add(&pw);
        }
        let numerator = MPoly::one(2).sub(&expo);
        let divisor = MPoly::var(2, 0).add(&MPoly::var(2, 1));
        let quotient = numerator
            .div_exact_in(&divisor, 0)
            .expect("edge numerator is divisible by ψ_h + ψ_h'");
        let mut mapping = vec![h, hp];
        if h == hp {
            mapping = vec![h, h];
        }
        self.truncate(quotient.embed(self.nvars, &mapping))
    }

    /// Evaluates a polynomial by integrating each vertex's part.
    fn integrate(&self, p: &MPoly) -> Q {
        let mut total = Q::zero();
        for (e, c) in p.terms() {
            let mut deg = vec![0u32; self.dims.len()];
            for (i, &k) in e.iter().enumerate() {
                let (v, w) = self.weight[i];
                deg[v] += k * w;
            }
            if deg != self.dims {
                continue;
            }
            let mut value = c.clone();
            for v in 0..self.dims.len() {
                let psi: Vec<u32> = self.graph.half_edges_at(v).iter().map(|&h| e[h]).collect();
                let mut kappas = Vec::new();
                for m in 1..=self.dims[v] {
                    for _ in 0..e[self.kappa_offset[v] + m as usize - 1] {
                        kappas.push(m);
                    }
                }
                value *= kappa_psi_integral(self.graph.genera[v], &psi, &kappas);
                if value.is_zero() {
                    break;
                }
            }
            total += value;
        }
        total
    }
}

fn half(r: u32) -> Result<u32> {
    if r == 0 || r % 2 == 1 {
        return Err(Error::Domain(format!("r = {r} must be positive and even")));
    }
    Ok(r / 2)
}

/// `∫_{M̄_{g,n}} Ω(v_{a_1}⊗⋯⊗v_{a_n}) ∏_i P_i(ψ_i)` with `P_i` given by its coefficients.
pub fn omega_integral_with_insertions(
    g: u32,
    a: &[u32],
    r: u32,
    insertions: &[Vec<Q>],
) -> Result<Q> {
    let s = half(r)?;
    let n = a.len();
    if insertions.len() != n {
        return Err(Error::Domain("one insertion per marked point".into()));
    }
    if a.iter().any(|&x| x >= s) {
        return Err(Error::Domain(format!("residues must lie in 0..{s}")));
    }
    let total: i64 = a.iter().map(|&x| x as i64).sum();
    if (total - g as i64 + 1).rem_euclid(s as i64) != 0 {
        return Ok(Q::zero());
    }
    let graphs = enumerate_stable_graphs(g, n)?;
    let sq = qi(s as i64);
    let two_s = qi(2 * s as i64);
    let vertex_x = two_s.recip();
    let contributions: Vec<Q> = graphs
        .par_iter()
        .map(|graph| {
            let ring = GraphRing::new(graph);
            let mut base = MPoly::one(ring.nvars);
            for v in 0..graph.num_vertices() {
                let mut arg = MPoly::zero(ring.nvars);
                for m in 1..=ring.dims[v] {
                    arg = arg.add(
                        &ring
                            .kappa(v, m)
                            .scale(&bernoulli_weight(m as usize, &vertex_x)),
                    );
                }
                base = ring.mul(&base, &ring.exp(&arg));
            }
            for (i, ins) in insertions.iter().enumerate() {
                let dim = ring.dims[graph.leaves[i]];
                let x = (qi(2 * a[i] as i64) + Q::one()) / &two_s;
                let mut arg = MPoly::zero(ring.nvars);
                for m in 1..=dim {
                    arg = arg.add(&ring.psi(i, m).scale(&-bernoulli_weight(m as usize, &x)));
                }
                let mut p = MPoly::zero(ring.nvars);
                for (k, c) in ins.iter().enumerate().take(dim as usize + 1) {
                    p = p.add(&ring.psi(i, k as u32).scale(c));
                }
                base = ring.mul(&ring.mul(&base, &ring.exp(&arg)), &p);
            }
            let mut sum = Q::zero();
            for w in enumerate_spin_weightings(graph, a, s) {
                let mut p = base.clone();
                for e in 0..graph.edges.len() {
                    let h = n + 2 * e;
                    let x = (qi(2 * w[h] as i64) + Q::one()) / &two_s;
                    p = ring.mul(&p, &ring.edge_factor(h, h + 1, &x));
                }
                sum += ring.integrate(&p);
            }
            let h1 = graph.h1() as i64;
            sum * qpow(&sq, 2 * g as i64 - 1 - h1) / qi(graph.aut_order() as i64)
        })
        .collect();
    Ok(contributions.into_iter().sum::<Q>() * pow2(2 * g as i64 - 2))
}

/// `∫_{M̄_{g,n}} Ω(v_{a_1}⊗⋯⊗v_{a_n}) ∏ψ_i^{k_i}`.
pub fn omega_integral(g: u32, a: &[u32], r: u32, psi_powers: &[u32]) -> Result<Q> {
    let insertions: Vec<Vec<Q>> = psi_powers
        .iter()
        .map(|&k| {
            let mut v = vec![Q::zero(); k as usize + 1];
            v[k as usize] = Q::one();
            v
        })
        .collect();
    omega_integral_with_insertions(g, a, r, &insertions)
}

/// `(⟨μ⟩, [μ])` with `μ = r[μ] + r − (2⟨μ⟩ + 1)`.
pub fn residue_decomposition(mu: u32, r: u32) -> (u32, u32) {
    let twice = (r - (mu + 1) % r) % r;
    assert!(twice % 2 == 0, "odd parts decompose");
    let a = twice / 2;
    (a, (mu + 2 * a + 1) / r - 1)
}

/// The spin ELSV formula for `h_{g;μ}` with `(r+1)`-completed cycles.
///
/// Unstable `(0,1)` and `(0,2)` use the vertex value `1/(4s)` with
/// `∫ 1/(1−xψ) = 1/x²` and `∫ 1/((1−x₁ψ₁)(1−x₂ψ₂)) = 1/(x₁+x₂)`.
pub fn spin_elsv(g: u32, mu: &Partition, r: u32) -> Result<Q> {
    let s = half(r)?;
    mu.require(PartitionClass::Odd)?;
    let n = mu.len();
    if n == 0 {
        return Err(Error::InvalidPartition("empty partition".into()));
    }
    let d = mu.size() as i64;
    let euler = 2 * g as i64 - 2 + n as i64;
    let num = (r as i64 + 1) * euler + d;
    if num % r as i64 != 0 {
        return Err(Error::NoCovers(format!(
            "({r}+1)(2g−2+n) + |μ| is not divisible by r = {r}"
        )));
    }
    let rq = qi(r as i64);
    let mut prefactor = pow2(1 - g as i64) * qpow(&rq, num / r as i64);
    let mut residues = Vec::new();
    let mut weights = Vec::new();
    for &m in mu.parts() {
        let (a, br) = residue_decomposition(m, r);
        let x = qi(m as i64) / &rq;
        prefactor *= qpow(&x, br as i64) / qb(factorial(br as u64));
        residues.push(a);
        weights.push(x);
    }
    let total: i64 = residues.iter().map(|&x| x as i64).sum();
    let modular = (total - g as i64 + 1).rem_euclid(s as i64) == 0;
    let integral = match (g, n) {
        (0, 1) | (0, 2) => {
            if !modular {
                Q::zero()
            } else {
                let vertex = qi(4 * s as i64).recip();
                if n == 1 {
                    vertex / (&weights[0] * &weights[0])
                } else {
                    vertex / (&weights[0] + &weights[1])
                }
            }
        }
        _ => {
            let dim = (3 * g as i64 - 3 + n as i64) as usize;
            let insertions: Vec<Vec<Q>> = weights
                .iter()
                .map(|x| (0..=dim).map(|k| qpow(x, k as i64)).collect())
                .collect();
            omega_integral_with_insertions(g, &residues, r, &insertions)?
        }
    };
    Ok(prefactor * integral)
}
