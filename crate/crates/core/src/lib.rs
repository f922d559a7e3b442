//! Spin Hurwitz numbers with completed cycles over exact rational arithmetic.
//!
//! The crate computes the same numbers along several independent routes:
//! Sergeev characters ([`hurwitz`]), neutral-fermion vacuum expectations
//! ([`fock`]), closed formulas ([`closed_forms`]), topological recursion on
//! the spin spectral curve ([`tr`]) and the spin ELSV formula ([`cohft`]).

pub mod checks;
pub mod closed_forms;
pub mod cohft;
pub mod error;
pub mod fock;
pub mod golden;
pub mod hurwitz;
pub mod linalg;
pub mod partitions;
pub mod poly;
pub mod qschur;
pub mod rational;
pub mod routes;
pub mod tr;

pub use error::{Error, Result};
pub use partitions::{Partition, PartitionClass};
pub use rational::Q;
