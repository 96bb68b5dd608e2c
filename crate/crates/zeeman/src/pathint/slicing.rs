//! Time grids and cylinder functionals.

use super::chain::PathFn;
use crate::kernels::{check_time, Flow};
use crate::{Error, MagneticParams, Result};
use std::sync::Arc;

/// `n` slices of width `T/n` from `x`, optionally pinned at `y`.
#[derive(Clone, Debug, PartialEq)]
pub struct TimeSlicing {
    pub horizon: f64,
    pub slices: usize,
    pub start: Vec<f64>,
    pub end: Option<Vec<f64>>,
}

impl TimeSlicing {
    pub fn new(
        horizon: f64,
        slices: usize,
        start: Vec<f64>,
        end: Option<Vec<f64>>,
    ) -> Result<Self> {
        if !(horizon > 0.0 && horizon.is_finite()) {
            return Err(Error::Domain(format!(
                "horizon must be positive, got {horizon}"
            )));
        }
        if slices == 0 {
            return Err(Error::Domain("at least one slice is required".into()));
        }
        if let Some(y) = &end {
            if y.len() != start.len() {
                return Err(Error::DimensionMismatch {
                    expected: start.len(),
                    got: y.len(),
                });
            }
        }
        Ok(Self {
            horizon,
            slices,
            start,
            end,
        })
    }

    pub fn pinned(&self) -> bool {
        self.end.is_some()
    }

    pub fn width(&self) -> f64 {
        self.horizon / self.slices as f64
    }

    /// `t_j = jT/n` for `j = 0..=n`.
    pub fn times(&self) -> Vec<f64> {
        (0..=self.slices).map(|j| j as f64 * self.width()).collect()
    }

    /// Number of integrated path points.
    pub fn free_points(&self) -> usize {
        if self.pinned() {
            self.slices - 1
        } else {
            self.slices
        }
    }

    /// Checks dimensions and, for the Dirac-Feynman flow, that the slice
    /// width avoids the singular times.
    pub fn validate(&self, flow: Flow, params: &MagneticParams) -> Result<()> {
        params.check_point(self.start.len())?;
        if let Some(y) = &self.end {
            params.check_point(y.len())?;
        }
        check_time(flow, self.width(), params, false)?;
        check_time(flow, self.horizon, params, false)
    }
}

/// A slicing with an integrand on the sliced path and its declared sup norm.
/// `func = None` is the constant 1. `quadratic[j]` adds
/// `exp(quadratic[j] · m_j·m_j)` to the integrand; these Gaussian factors are
/// folded into the quadrature envelope.
#[derive(Clone)]
pub struct CylinderFunctional {
    pub slicing: TimeSlicing,
    pub func: Option<Arc<PathFn>>,
    pub quadratic: Vec<crate::C64>,
    pub constant: crate::C64,
    pub sup_norm: f64,
}

impl CylinderFunctional {
    /// `F ≡ 1`.
    pub fn one(slicing: TimeSlicing) -> Self {
        let n = slicing.slices + 1;
        Self {
            slicing,
            func: None,
            quadratic: vec![crate::C64::new(0.0, 0.0); n],
            constant: crate::C64::new(1.0, 0.0),
            sup_norm: 1.0,
        }
    }

    /// `F ≡ 0`.
    pub fn zero(slicing: TimeSlicing) -> Self {
        let mut f = Self::one(slicing);
        f.constant = crate::C64::new(0.0, 0.0);
        f.sup_norm = 0.0;
        f
    }

    /// A general integrand with a declared bound on real paths.
    pub fn new(slicing: TimeSlicing, func: Arc<PathFn>, sup_norm: f64) -> Self {
        let mut f = Self::one(slicing);
        f.func = Some(func);
        f.sup_norm = sup_norm;
        f
    }
}

impl std::fmt::Debug for CylinderFunctional {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("CylinderFunctional")
            .field("slicing", &self.slicing)
            .field("func", &self.func.as_ref().map(|_| "<fn>"))
            .field("quadratic", &self.quadratic)
            .field("constant", &self.constant)
            .field("sup_norm", &self.sup_norm)
            .finish()
    }
}
