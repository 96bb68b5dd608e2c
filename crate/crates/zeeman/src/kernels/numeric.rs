//! Kernel convolutions by envelope-adapted Gauss-Hermite quadrature.

use super::flow::Flow;
use super::kernel::Kernel;
use crate::quadrature::{EnvelopeBuilder, QuadRule, Slot};
use crate::{Cx, Error, MagneticParams, Real, Result};

/// Degrees compared by the convergence ladder for planar integrals.
pub const DEFAULT_LADDER: [usize; 3] = [20, 30, 40];

/// `∫ A(X, U) B(U, Y) dU` over `R^k` at one degree.
pub fn convolve<T: Real>(
    a: &Kernel<T>,
    x: &[Cx<T>],
    b: &Kernel<T>,
    y: &[Cx<T>],
    degree: usize,
) -> Result<Cx<T>> {
    let k = a.dim();
    if b.dim() != k || x.len() != k || y.len() != k {
        return Err(Error::DimensionMismatch {
            expected: k,
            got: b.dim().min(x.len()).min(y.len()),
        });
    }
    let mut env = EnvelopeBuilder::new(1, k);
    a.add_to_envelope(&mut env, Slot::Fixed(x), Slot::Var(0));
    b.add_to_envelope(&mut env, Slot::Var(0), Slot::Fixed(y));
    let rule = QuadRule::new(&env.build(), degree)?;
    rule.integrate(|u| a.log_value(x, u) * b.log_value(u, y))
}

/// [`convolve`] over a degree ladder; `NonConvergence` when successive
/// degrees differ by more than `tol·(1 + |value|)`.
pub fn convolve_ladder<T: Real>(
    a: &Kernel<T>,
    x: &[Cx<T>],
    b: &Kernel<T>,
    y: &[Cx<T>],
    degrees: &[usize],
    tol: T,
) -> Result<Cx<T>> {
    let mut prev: Option<Cx<T>> = None;
    for &d in degrees {
        let v = convolve(a, x, b, y, d)?;
        if let Some(p) = prev {
            let spread = (v - p).norm();
            if spread > tol * (T::one() + v.norm()) {
                return Err(Error::NonConvergence {
                    spread: spread.to_f64().unwrap_or(f64::NAN),
                    tolerance: tol.to_f64().unwrap_or(f64::NAN),
                });
            }
        }
        prev = Some(v);
    }
    prev.ok_or_else(|| Error::Domain("empty degree ladder".into()))
}

/// `d_σ^{(a)}(t, X, Y) = ∫ δ^{(a)}(X, U) d_σ(t, U, Y) dU` for any zone.
#[allow(clippy::too_many_arguments)]
pub fn zonal_kernel_numeric<T: Real>(
    flow: Flow,
    a: usize,
    t: f64,
    x: &[T],
    y: &[T],
    params: &MagneticParams,
    degrees: &[usize],
    tol: T,
) -> Result<Cx<T>> {
    params.check_point(x.len())?;
    params.check_point(y.len())?;
    let proj = Kernel::projection(a, params);
    let glob = Kernel::global(flow, t, params)?;
    let xc: Vec<Cx<T>> = x.iter().map(|&v| Cx::new(v, T::zero())).collect();
    let yc: Vec<Cx<T>> = y.iter().map(|&v| Cx::new(v, T::zero())).collect();
    convolve_ladder(&proj, &xc, &glob, &yc, degrees, tol)
}
