//! The two flows and their singular times.

use crate::spectrum::{HamiltonianKind, HamiltonianVariant};
use crate::{Cx, Error, MagneticParams, Real, Result, C64};
use serde::{Deserialize, Serialize};

/// Distance from `nπ/λ` below which a Dirac-Feynman time is rejected.
pub const SINGULAR_TOLERANCE: f64 = 1e-9;

/// `σ = 1` (heat, Wiener-Kac) or `σ = i` (Schrödinger, Dirac-Feynman).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Flow {
    #[serde(rename = "wk")]
    WienerKac,
    #[serde(rename = "df")]
    DiracFeynman,
}

impl Flow {
    pub fn sigma<T: Real>(self) -> Cx<T> {
        match self {
            Flow::WienerKac => Cx::new(T::one(), T::zero()),
            Flow::DiracFeynman => Cx::new(T::zero(), T::one()),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Flow::WienerKac => "wk",
            Flow::DiracFeynman => "df",
        }
    }

    pub fn both() -> [Flow; 2] {
        [Flow::WienerKac, Flow::DiracFeynman]
    }
}

impl std::str::FromStr for Flow {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "wk" | "WK" | "heat" => Ok(Flow::WienerKac),
            "df" | "DF" | "schrodinger" => Ok(Flow::DiracFeynman),
            other => Err(Error::InvalidParams(format!(
                "unknown flow `{other}` (expected wk or df)"
            ))),
        }
    }
}

impl std::fmt::Display for Flow {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Validates a time for `flow`. Negative or non-finite times are rejected;
/// `t = 0` only when `allow_zero`. Dirac-Feynman times within
/// [`SINGULAR_TOLERANCE`] of `nπ/λ_i`, `n ≥ 1`, are rejected.
pub fn check_time(flow: Flow, t: f64, params: &MagneticParams, allow_zero: bool) -> Result<()> {
    if !t.is_finite() || t < 0.0 || (t == 0.0 && !allow_zero) {
        return Err(Error::Domain(format!(
            "time must be {} and finite, got {t}",
            if allow_zero { "≥ 0" } else { "> 0" }
        )));
    }
    if flow == Flow::DiracFeynman {
        for b in params.blocks() {
            let n = (b.lambda * t / std::f64::consts::PI).round();
            if n >= 1.0 && (t - n * std::f64::consts::PI / b.lambda).abs() < SINGULAR_TOLERANCE {
                return Err(Error::SingularTime {
                    t,
                    lambda: b.lambda,
                });
            }
        }
    }
    Ok(())
}

/// Effective `H_Z` time and scalar factor for the flow of `variant`: `H_Zf`
/// multiplies by `e^{-σ t c_f}`; the Box flow `e^{σ t Box}` uses time `2t`
/// and `e^{-2σ t c_f}`.
pub fn variant_time_factor(flow: Flow, t: f64, variant: &HamiltonianVariant) -> (f64, C64) {
    let sigma = flow.sigma::<f64>();
    let cf = variant.field_constant;
    match variant.kind {
        HamiltonianKind::ClassicalZeeman => (t, C64::new(1.0, 0.0)),
        HamiltonianKind::FieldZeeman => (t, (-sigma * (t * cf)).exp()),
        HamiltonianKind::BoxLaplacian => (2.0 * t, (-sigma * (2.0 * t * cf)).exp()),
    }
}

/// All `nπ/λ_i` in `(0, horizon]`, sorted.
pub fn singular_times(params: &MagneticParams, horizon: f64) -> Vec<f64> {
    let mut out = Vec::new();
    for b in params.blocks() {
        let step = std::f64::consts::PI / b.lambda;
        let mut n = 1.0;
        while n * step <= horizon {
            out.push(n * step);
            n += 1.0;
        }
    }
    out.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
    out
}
