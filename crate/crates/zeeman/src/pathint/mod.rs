//! Time-sliced cylinder functionals for the zonal Wiener-Kac and Feynman path
//! measures, Feynman-Kac weights and Radon-Nikodym factors.
//!
//! A sliced path is `m_0 = x, m_1, …, m_n` at times `t_j = jT/n`. A pinned
//! slicing fixes `m_n = y`; a free one integrates it. All integrals are flat
//! Lebesgue integrals, flattened into one tensor quadrature.

pub mod chain;
pub mod checks;
pub mod slicing;
pub mod weights;

pub use chain::{chain_value, cylinder_value, nu_cylinder_value, PathFn};
pub use checks::{
    discrete_feynman_kac, divergence_demo, probability_conservation, radon_nikodym_consistency,
    uniform_bound_check, BoundReport, DivergenceRow, FeynmanKacRow, RadonNikodymReport,
};
pub use slicing::{CylinderFunctional, TimeSlicing};
pub use weights::{feynman_kac_weight, radon_nikodym_weight, ActionRule, WeightConvention};
