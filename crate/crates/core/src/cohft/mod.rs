//! The spin cohomological field theory and the spin ELSV formula.

pub mod graphs;
pub mod intersection;
pub mod omega;

pub use graphs::{enumerate_spin_weightings, enumerate_stable_graphs, StableGraph};
pub use intersection::{kappa_psi_integral, kappa_reduce, psi_intersection, set_partitions};
pub use omega::{
    bernoulli_numbers, bernoulli_polynomial, omega_integral, omega_integral_with_insertions,
    residue_decomposition, spin_elsv,
};

#[cfg(test)]
mod tests;
