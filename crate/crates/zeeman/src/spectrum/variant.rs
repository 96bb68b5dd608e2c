//! Which operator a spectrum refers to.

use crate::MagneticParams;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HamiltonianKind {
    /// `Box = Δ + 2iD - λ²|X|² - 2c_f` (non-positive spectrum).
    BoxLaplacian,
    /// `H_Z = -½(Box + 2c_f)`.
    ClassicalZeeman,
    /// `H_Zf = H_Z + c_f`.
    FieldZeeman,
}

/// How the field constant `c_f` is chosen.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "mode", content = "value")]
pub enum FieldConstantMode {
    /// `c_f = Σ 2λ_i² k_i`, the value that puts `-Σ4λ_i²k_i` into Box.
    BoxConstant,
    /// `c_f = 2Σλ_i²`, the value used by the torus-bundle lift.
    Lift,
    /// Any non-negative constant.
    Custom(f64),
}

impl FieldConstantMode {
    pub fn value(&self, params: &MagneticParams) -> f64 {
        match *self {
            Self::BoxConstant => params
                .blocks()
                .iter()
                .map(|b| 2.0 * b.lambda * b.lambda * b.k as f64)
                .sum(),
            Self::Lift => params
                .blocks()
                .iter()
                .map(|b| 2.0 * b.lambda * b.lambda)
                .sum(),
            Self::Custom(c) => c,
        }
    }
}

/// Operator variant with its resolved field constant.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct HamiltonianVariant {
    pub kind: HamiltonianKind,
    pub field_constant: f64,
}

impl HamiltonianVariant {
    pub fn new(kind: HamiltonianKind, mode: FieldConstantMode, params: &MagneticParams) -> Self {
        Self {
            kind,
            field_constant: mode.value(params),
        }
    }

    pub fn classical() -> Self {
        Self {
            kind: HamiltonianKind::ClassicalZeeman,
            field_constant: 0.0,
        }
    }
}
