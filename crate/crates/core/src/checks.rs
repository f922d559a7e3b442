//! Invariant and route-equivalence sweeps shared by the command line and the acceptance suite.

use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::closed_forms::{f02_coefficient, one_part_single_fd, one_part_single_stirling};
use crate::cohft::spin_elsv;
use crate::error::{Error, Result};
use crate::fock::{commutator_check, cutjoin_eigen_check, heisenberg_check, parity_check};
use crate::hurwitz::{connected_double, connected_single, single_b};
use crate::partitions::{enumerate, enumerate_up_to, Partition, PartitionClass};
use crate::qschur::character;
use crate::rational::{factorial, pow2, qb, Q};
use crate::tr::{check_conjecture_with, reduced_correlator, TrEngine};

/// Outcome of one sweep: how many cases ran and a description of every failure.
#[derive(Clone, Debug, Serialize)]
pub struct CheckOutcome {
    pub name: String,
    pub cases: usize,
    pub failures: Vec<String>,
}

impl CheckOutcome {
    fn new(name: impl Into<String>) -> Self {
        CheckOutcome {
            name: name.into(),
            cases: 0,
            failures: Vec::new(),
        }
    }

    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn absorb(&mut self, other: CheckOutcome) {
        self.cases += other.cases;
        self.failures.extend(other.failures);
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.cases > 0
    }
}

/// Treats "no covers" as the zero number.
fn or_zero(v: Result<Q>) -> Result<Q> {
    match v {
        Err(Error::NoCovers(_)) => Ok(Q::zero()),
        other => other,
    }
}

fn character_q(lambda: &Partition, mu: &Partition) -> Result<Q> {
    Ok(qb(character(lambda, mu)?))
}

/// `Σ_{μ odd} 2^{−ℓ(μ)} z_μ^{−1} ζ^ρ_μ ζ^σ_μ = 2^{δ(ρ)} δ_{ρσ}` for strict `ρ, σ ⊢ d`.
pub fn row_orthogonality(max_d: u32) -> Result<CheckOutcome> {
    let mut out = CheckOutcome::new("character orthogonality (rows)");
    for d in 1..=max_d {
        let strict = enumerate(d, PartitionClass::Strict);
        let odd = enumerate(d, PartitionClass::Odd);
        for rho in &strict {
            for sigma in &strict {
                let mut sum = Q::zero();
                for mu in &odd {
                    sum +=
                        character_q(rho, mu)? * character_q(sigma, mu)? * pow2(-(mu.len() as i64))
                            / qb(mu.z_factor());
                }
                let expected = if rho == sigma {
                    pow2(rho.parity_delta()? as i64)
                } else {
                    Q::zero()
                };
                out.record(sum == expected, || {
                    format!("ρ={rho} σ={sigma}: {sum} ≠ {expected}")
                });
            }
        }
    }
    Ok(out)
}

/// `Σ_{ρ strict} 2^{−δ(ρ)} ζ^ρ_μ ζ^ρ_ν = 2^{ℓ(μ)} z_μ δ_{μν}` for odd `μ, ν ⊢ d`.
pub fn column_orthogonality(max_d: u32) -> Result<CheckOutcome> {
    let mut out = CheckOutcome::new("character orthogonality (columns)");
    for d in 1..=max_d {
        let strict = enumerate(d, PartitionClass::Strict);
        let odd = enumerate(d, PartitionClass::Odd);
        for mu in &odd {
            for nu in &odd {
                let mut sum = Q::zero();
                for rho in &strict {
                    sum += character_q(rho, mu)?
                        * character_q(rho, nu)?
                        * pow2(-(rho.parity_delta()? as i64));
                }
                let expected = if mu == nu {
                    pow2(mu.len() as i64) * qb(mu.z_factor())
                } else {
                    Q::zero()
                };
                out.record(sum == expected, || {
                    format!("μ={mu} ν={nu}: {sum} ≠ {expected}")
                });
            }
        }
    }
    Ok(out)
}

/// Odd and strict partitions are equinumerous in every size.
pub fn euler_counts(max_d: u32) -> CheckOutcome {
    let mut out = CheckOutcome::new("odd and strict partition counts");
    for d in 0..=max_d {
        let odd = enumerate(d, PartitionClass::Odd).len();
        let strict = enumerate(d, PartitionClass::Strict).len();
        out.record(odd == strict, || {
            format!("d={d}: {odd} odd vs {strict} strict")
        });
    }
    out
}

/// Heisenberg relations, the commutation relation and parity of the vertex-operator modes,
/// and the cut-and-join eigenvalues.
pub fn fock_algebra(z_order: u32, state_bound: u32) -> Result<CheckOutcome> {
    let mut out = CheckOutcome::new("fermionic operator algebra");
    out.record(heisenberg_check(7, state_bound)?, || {
        "Heisenberg relations".into()
    });
    for m in -3i64..=3 {
        out.record(parity_check(m, z_order, state_bound)?, || {
            format!("parity of mode {m}")
        });
        for n in -3i64..=3 {
            out.record(commutator_check(m, n, z_order, state_bound)?, || {
                format!("commutator of modes {m}, {n}")
            });
        }
    }
    for r in [2u32, 4, 6] {
        out.record(cutjoin_eigen_check(r, state_bound)?, || {
            format!("cut-and-join eigenvalues for r={r}")
        });
    }
    Ok(out)
}

/// Finite-difference, Stirling and character routes on one-part numbers with an integral
/// insertion count.
pub fn one_part_routes(max_g: u32, max_mu: u32, rs: &[u32]) -> Result<CheckOutcome> {
    let cells: Vec<(u32, u32, u32)> = rs
        .iter()
        .flat_map(|&r| {
            (0..=max_g).flat_map(move |g| (1..=max_mu).step_by(2).map(move |m| (r, g, m)))
        })
        .filter(|&(r, g, m)| single_b(g as i64, &Partition::single(m), r).is_ok())
        .collect();
    let results = cells
        .par_iter()
        .map(|&(r, g, m)| -> Result<(String, bool)> {
            let fd = one_part_single_fd(g, m, r)?;
            let stirling = one_part_single_stirling(g, m, r)?;
            let chars = connected_single(g, &Partition::single(m), r)?;
            let ok = fd == stirling && fd == chars;
            Ok((
                format!("r={r} g={g} μ={m}: fd {fd}, Stirling {stirling}, characters {chars}"),
                ok,
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut out = CheckOutcome::new("one-part closed forms vs characters");
    for (what, ok) in results {
        out.record(ok, || what);
    }
    Ok(out)
}

/// The closed two-point genus-zero coefficients against connected double numbers at `ν = (1^d)`.
pub fn two_point_genus_zero(max_part: u32, rs: &[u32]) -> Result<CheckOutcome> {
    let mut out = CheckOutcome::new("two-point genus-zero series vs connected double numbers");
    for &r in rs {
        for a in (1..=max_part).step_by(2) {
            for b in (1..=a).step_by(2) {
                let mu = Partition::new(vec![a, b])?;
                let d = a + b;
                let closed = f02_coefficient(r, a, b)?;
                let double = or_zero(connected_double(0, &mu, &Partition::ones(d), r))?
                    / qb(factorial(d as u64));
                out.record(closed == double, || {
                    format!("r={r} μ=({a},{b}): {closed} ≠ {double}")
                });
            }
        }
    }
    Ok(out)
}

/// Spin ELSV against characters on every odd `μ` with `ℓ(μ) ≤ max_n`, `|μ| ≤ max_size`.
pub fn elsv_vs_characters(
    max_g: u32,
    max_n: usize,
    max_size: u32,
    rs: &[u32],
) -> Result<CheckOutcome> {
    let cells: Vec<(u32, u32, Partition)> = rs
        .iter()
        .flat_map(|&r| {
            (0..=max_g).flat_map(move |g| {
                enumerate_up_to(max_size, PartitionClass::Odd)
                    .into_iter()
                    .filter(move |mu| !mu.is_empty() && mu.len() <= max_n)
                    .map(move |mu| (r, g, mu))
            })
        })
        .collect();
    let results = cells
        .par_iter()
        .map(|(r, g, mu)| -> Result<(String, bool)> {
            let elsv = or_zero(spin_elsv(*g, mu, *r))?;
            let chars = or_zero(connected_single(*g, mu, *r))?;
            Ok((
                format!("r={r} g={g} μ={mu}: ELSV {elsv}, characters {chars}"),
                elsv == chars,
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut out = CheckOutcome::new("spin ELSV vs characters");
    for (what, ok) in results {
        out.record(ok, || what);
    }
    Ok(out)
}

/// Recursion expansions against characters; each entry is `(g, n, r, max |μ|)`.
pub fn recursion_vs_characters(grid: &[(u32, usize, u32, u32)]) -> Result<CheckOutcome> {
    let mut out = CheckOutcome::new("topological recursion vs characters");
    let mut engines: Vec<(u32, TrEngine)> = Vec::new();
    for &(g, n, r, degree) in grid {
        if !engines.iter().any(|(x, _)| *x == r) {
            engines.push((r, TrEngine::spin(r)?));
        }
        let engine = &engines.iter().find(|(x, _)| *x == r).expect("engine").1;
        let report = check_conjecture_with(engine, g, n, r, degree)?;
        let mut part = CheckOutcome::new("");
        for cell in &report.cells {
            part.record(cell.agrees(), || {
                format!(
                    "r={r} g={g} μ={:?}: recursion {}, characters {}",
                    cell.mu, cell.from_recursion, cell.from_characters
                )
            });
        }
        for mu in &report.even_part_violations {
            part.failures.push(format!(
                "r={r} g={g} μ={mu:?}: nonzero coefficient with an even part"
            ));
        }
        out.absorb(part);
    }
    Ok(out)
}

/// `ω_{g,n} = 2^{1−g−n} ω̂_{g,n}` with `ω̂` from the half-orbit run with doubled bidifferential.
pub fn reduced_curve_law(r: u32, cases: &[(u32, usize)]) -> Result<CheckOutcome> {
    let engine = TrEngine::spin(r)?;
    let mut out = CheckOutcome::new("reduced-curve law");
    for &(g, n) in cases {
        let full = engine.correlator(g, n)?;
        let reduced = reduced_correlator(r, g, n)?;
        let ok = reduced
            .scale(&pow2(1 - g as i64 - n as i64))
            .same_function(&full)
            && !full.is_zero();
        out.record(ok, || format!("r={r} (g,n)=({g},{n})"));
    }
    Ok(out)
}

/// Preset sizes for [`crosscheck`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Grid {
    Quick,
    Full,
}

/// Runs every sweep on the chosen grid.
pub fn crosscheck(grid: Grid) -> Result<Vec<CheckOutcome>> {
    let full = grid == Grid::Full;
    let ortho_d = if full { 10 } else { 7 };
    let mut out = vec![
        row_orthogonality(ortho_d)?,
        column_orthogonality(ortho_d)?,
        euler_counts(30),
        fock_algebra(4, if full { 6 } else { 4 })?,
        one_part_routes(2, if full { 19 } else { 11 }, &[2, 4, 6])?,
        two_point_genus_zero(9, &[2, 4])?,
        elsv_vs_characters(2, 2, if full { 9 } else { 7 }, &[2, 4])?,
    ];
    let tr_grid: Vec<(u32, usize, u32, u32)> = if full {
        vec![
            (0, 1, 2, 9),
            (1, 1, 2, 9),
            (2, 1, 2, 9),
            (0, 2, 2, 10),
            (1, 2, 2, 10),
            (0, 3, 2, 15),
            (0, 1, 4, 19),
            (1, 1, 4, 19),
        ]
    } else {
        vec![
            (0, 1, 2, 7),
            (1, 1, 2, 7),
            (0, 2, 2, 6),
            (0, 3, 2, 9),
            (1, 1, 4, 11),
        ]
    };
    out.push(recursion_vs_characters(&tr_grid)?);
    let reduced: &[(u32, usize)] = if full {
        &[(0, 3), (1, 1), (1, 2), (2, 1)]
    } else {
        &[(0, 3), (1, 1)]
    };
    out.push(reduced_curve_law(2, reduced)?);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_sweeps_pass() {
        assert!(row_orthogonality(6).unwrap().passed());
        assert!(column_orthogonality(6).unwrap().passed());
        assert!(euler_counts(20).passed());
        assert!(two_point_genus_zero(7, &[2, 4]).unwrap().passed());
        assert!(one_part_routes(1, 9, &[2, 4]).unwrap().passed());
    }
}
