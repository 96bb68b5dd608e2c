//! Explicit spectra, multiplicities, zones and exact eigenfunctions.

pub mod eigen;
pub mod levels;
pub mod radial;
pub mod variant;

pub use eigen::{build_eigenfunction, split_by_magnetic, vandermonde_split};
pub use levels::{
    eigenvalue, eigenvalue_exact, multiplicity, spectrum_table, zone_count, zone_of, SpectrumEntry,
    ZoneIndex,
};
pub use radial::{radial_eigenpoly, radial_operator};
pub use variant::{FieldConstantMode, HamiltonianKind, HamiltonianVariant};
