//! The complex pairing `Z·W̄ = <X,Y> + i<X,J(Y)>`.

use crate::{Cx, MagneticParams, Real, Result};
use std::ops::{Add, Mul, Sub};

/// `<X, J(Y)>` with `J(x, y) = (-y, x)` on consecutive coordinate planes.
/// Works for real or complex entries (bilinear, no conjugation).
pub fn jdot<S>(x: &[S], y: &[S]) -> S
where
    S: Copy + Add<Output = S> + Sub<Output = S> + Mul<Output = S>,
{
    debug_assert_eq!(x.len(), y.len());
    debug_assert!(x.len().is_multiple_of(2) && !x.is_empty());
    let mut acc = x[1] * y[0] - x[0] * y[1];
    for p in 1..x.len() / 2 {
        acc = acc + (x[2 * p + 1] * y[2 * p] - x[2 * p] * y[2 * p + 1]);
    }
    acc
}

/// Bilinear dot product.
pub fn dot<S>(x: &[S], y: &[S]) -> S
where
    S: Copy + Add<Output = S> + Mul<Output = S>,
{
    debug_assert_eq!(x.len(), y.len());
    let mut acc = x[0] * y[0];
    for i in 1..x.len() {
        acc = acc + x[i] * y[i];
    }
    acc
}

/// `J` applied to a vector.
pub fn apply_j<S: Copy + std::ops::Neg<Output = S>>(y: &[S]) -> Vec<S> {
    let mut out = Vec::with_capacity(y.len());
    for p in 0..y.len() / 2 {
        out.push(-y[2 * p + 1]);
        out.push(y[2 * p]);
    }
    out
}

/// Real and `J`-twisted parts of the pairing; `value = dot + i*jdot`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ComplexPairing<T> {
    pub dot: T,
    pub jdot: T,
}

impl<T: Real> ComplexPairing<T> {
    pub fn value(&self) -> Cx<T> {
        Cx::new(self.dot, self.jdot)
    }
}

/// `Σ_i λ_i (<X_i,Y_i> + i<X_i,J(Y_i)>)` over the blocks of `params`.
pub fn pairing<T: Real>(x: &[T], y: &[T], params: &MagneticParams) -> Result<ComplexPairing<T>> {
    params.check_point(x.len())?;
    params.check_point(y.len())?;
    let mut out = ComplexPairing {
        dot: T::zero(),
        jdot: T::zero(),
    };
    for (r, b) in params.ranges().into_iter().zip(params.blocks()) {
        let l = T::lit(b.lambda);
        out.dot = out.dot + l * dot(&x[r.clone()], &y[r.clone()]);
        out.jdot = out.jdot + l * jdot(&x[r.clone()], &y[r]);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p2() -> MagneticParams {
        MagneticParams::single(1.0, 2).unwrap()
    }

    #[test]
    fn examples() {
        let v = pairing(&[1.0, 0.0], &[1.0, 0.0], &p2()).unwrap().value();
        assert_eq!(v, Cx::new(1.0, 0.0));
        let v = pairing(&[1.0, 0.0], &[0.0, 1.0], &p2()).unwrap().value();
        assert_eq!(v, Cx::new(0.0, -1.0));
        let v = pairing(&[0.0, 0.0], &[0.0, 0.0], &p2()).unwrap().value();
        assert_eq!(v, Cx::new(0.0, 0.0));
        assert!(pairing(&[0.0; 3], &[0.0; 2], &p2()).is_err());
    }

    proptest! {
        #[test]
        fn matches_complex_coordinates(a in -3.0..3.0f64, b in -3.0..3.0f64, c in -3.0..3.0f64, d in -3.0..3.0f64) {
            // z * conj(w) with z = a + ib, w = c + id
            let zw = Cx::new(a, b) * Cx::new(c, d).conj();
            let v = pairing(&[a, b], &[c, d], &p2()).unwrap().value();
            prop_assert!((zw - v).norm() < 1e-12);
            // J is skew: <X, J X> = 0
            prop_assert!(jdot(&[a, b], &[a, b]).abs() < 1e-12);
        }
    }
}
