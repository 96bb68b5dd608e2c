//! Special functions, complex pairings, Gaussian integrals and the exact
//! polynomial algebra used as an oracle by the other modules.

pub mod boxop;
pub mod exact;
pub mod gaussian;
pub mod hermite;
pub mod identities;
pub mod laguerre;
pub mod pairing;
pub mod params;
pub mod poly;

pub use gaussian::{gauss_density, gaussian_moment_integral};
pub use hermite::{hermite, hermite_exact, scaled_hermite_exact};
pub use laguerre::{laguerre, laguerre_exact};
pub use pairing::{jdot, pairing, ComplexPairing};
