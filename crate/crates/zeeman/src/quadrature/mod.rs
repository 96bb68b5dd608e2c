//! Deterministic tensor-product Gauss-Hermite quadrature on `R^N`.
//!
//! Integrals of `prefactor(x) · exp(E(x))` with `E` quadratic are evaluated on
//! a rule adapted to the Gaussian envelope of `E`. For a complex symmetric
//! envelope matrix the nodes are moved into `C^N` along
//! `x = c + M v`, `Mᵀ A M = I` (valid when `Re A` is positive definite), which
//! removes oscillatory chirps from the remaining integrand.

pub mod envelope;
pub mod hermite_rule;
pub mod reduce;

pub use envelope::{EnvelopeBuilder, GaussianEnvelope, LogValue, QuadRule, Slot};
pub use hermite_rule::{gauss_hermite_rule, GaussHermite};
pub use reduce::tree_sum;

/// Largest number of tensor nodes a single rule may have.
pub const MAX_NODES: u128 = 400_000_000;
/// Largest integration dimension for dense rules.
pub const MAX_DIM: usize = 8;
