//! Zonal partition functions, their trace and spectral-sum oracles, zonal
//! zeta functions and the Riemann/Hurwitz reference functions.

pub mod partition;
pub mod zeta;

pub use partition::{
    mehler_bound, partition, partition_by_trace, partition_irreducible, partition_variant,
    spectral_partition, spectral_tail_bound, TraceSource,
};
pub use zeta::{hurwitz_residuals, hurwitz_zeta, riemann_zeta, zeta_zonal, HurwitzResidual};
