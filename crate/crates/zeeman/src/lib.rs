//! Spectral theory of Zeeman operators on `R^k` with a block-diagonal complex
//! structure: exact spectra and eigenfunctions, zonal projection kernels,
//! heat (Wiener-Kac) and Schrödinger (Dirac-Feynman) kernels, partition and
//! zeta functions, and time-sliced path integrals, plus a verification
//! harness that checks the identities numerically or exactly.
//!
//! Floating-point code is generic over [`Real`] (`f32` or `f64`); the exact
//! oracles use arbitrary-precision rationals. Concrete aliases for the common
//! instantiations live at the crate root.

// `!(x > 0.0)` style guards are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod core_math;
pub mod error;
pub mod kernels;
pub mod pathint;
pub mod quadrature;
pub mod spectrum;
pub mod thermo;
pub mod verify;

pub use error::{Error, Result};

use num_traits::{Float, FloatConst, FromPrimitive};
use std::fmt::{Debug, Display};

/// Floating-point scalar used by the numeric layers.
pub trait Real:
    Float + FloatConst + FromPrimitive + Debug + Display + Default + Send + Sync + 'static
{
    /// Lossless-enough conversion from `f64` constants.
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable")
    }
}
impl Real for f32 {}
impl Real for f64 {}

/// Complex number over a [`Real`] scalar.
pub type Cx<T> = num_complex::Complex<T>;
/// Double-precision complex number.
pub type C64 = num_complex::Complex<f64>;
/// Exact rational number.
pub type Rational = num_rational::BigRational;
/// Exact complex rational number (Gaussian rational).
pub type CRational = num_complex::Complex<Rational>;

pub use core_math::params::{Block, MagneticParams};
pub use core_math::poly::{UniPoly, ZonePoly};
pub use kernels::{Flow, Kernel, KernelValue};
pub use spectrum::{
    FieldConstantMode, HamiltonianKind, HamiltonianVariant, SpectrumEntry, ZoneIndex,
};
