//! Closed-form and quadrature kernels: zonal projections (point-spread
//! kernels), global and zonal Wiener-Kac / Dirac-Feynman kernels, the Mehler
//! oscillator kernel and the torus-bundle lift.
//!
//! Every kernel is stored in the flat gauge as
//! `amplitude · poly(X, Y) · exp(form(X, Y))`, where `form` is a per-block
//! complex quadratic. Convolutions are plain Lebesgue integrals.

pub mod closed;
pub mod flow;
pub mod kernel;
pub mod mehler;
pub mod numeric;
pub mod pde;
pub mod spectral;

pub use closed::{
    dominant_kernel, global_kernel, irreducible_projection_kernel, projection_kernel,
    zonal_kernel_closed,
};
pub use flow::{check_time, singular_times, variant_time_factor, Flow, SINGULAR_TOLERANCE};
pub use kernel::{BlockForm, Kernel, KernelPoly, KernelValue, ZonalPart};
pub use mehler::{lift_kernels, mehler_kernel};
pub use numeric::{convolve, convolve_ladder, zonal_kernel_numeric, DEFAULT_LADDER};
pub use pde::{apply_zeeman_x, evolution_residual};
pub use spectral::spectral_series_kernel;
