//! Topological recursion on the spin spectral curve.
//!
//! All `2s` ramification points are handled through one generic point `a`
//! with `a^{2s} = 1/(2s)`; sums over them become a trace.

pub mod algebra;
pub mod correlator;
pub mod engine;
pub mod expand;
pub mod local;

pub use algebra::AlgebraicScalar;
pub use correlator::{omega_11_closed_form, Correlator};
pub use engine::{
    involution_coefficients, involution_series, prerequisites, recursion_step, reduced_correlator,
    x_difference, Known, TrConfig, TrEngine, MARGIN_ENV,
};
pub use expand::{
    check_conjecture, check_conjecture_with, expand_cylinder, expand_disk, expand_hurwitz,
    inverse_curve_series, ConjectureCell, ConjectureReport,
};
pub use local::{LocalSeries, Ring, SpecFn};
