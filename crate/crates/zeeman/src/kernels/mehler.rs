//! The oscillator (Mehler) kernel and the torus-bundle lift.

use super::flow::Flow;
use crate::{Cx, Error, Real, Result};

/// `exp{B/sinh(2Bt)·[-½cosh(2Bt)(|X|²+|Y|²) + ⟨X,Y⟩]} / (2π sinh 2Bt)^{k/2}`
/// on `R^k`.
pub fn mehler_kernel<T: Real>(t: T, x: &[T], y: &[T], b: T, k: usize) -> Result<T> {
    if !(t > T::zero()) || !(b > T::zero()) {
        return Err(Error::Domain("Mehler kernel needs t > 0 and B > 0".into()));
    }
    if x.len() != k || y.len() != k {
        return Err(Error::DimensionMismatch {
            expected: k,
            got: x.len().min(y.len()),
        });
    }
    let two = T::lit(2.0);
    let s = (two * b * t).sinh();
    let ch = (two * b * t).cosh();
    let nx: T = x.iter().fold(T::zero(), |a, &v| a + v * v);
    let ny: T = y.iter().fold(T::zero(), |a, &v| a + v * v);
    let xy: T = x.iter().zip(y).fold(T::zero(), |a, (&u, &v)| a + u * v);
    let e = b / s * (-(ch * (nx + ny)) / two + xy);
    Ok(e.exp() / (two * T::PI() * s).powf(T::lit(k as f64 / 2.0)))
}

/// Lifts `d = d_σ(t)` to the torus bundle: `p = e^{-2tσ|Z_γ|²} d` and
/// `b = p · e^{2i⟨Z_γ, Z_x - Z_y⟩}`.
pub fn lift_kernels<T: Real>(
    flow: Flow,
    base: Cx<T>,
    t: T,
    zx: &[T],
    zy: &[T],
    zgamma: &[T],
) -> Result<(Cx<T>, Cx<T>)> {
    if zx.len() != zgamma.len() || zy.len() != zgamma.len() {
        return Err(Error::DimensionMismatch {
            expected: zgamma.len(),
            got: zx.len().min(zy.len()),
        });
    }
    let norm2 = zgamma.iter().fold(T::zero(), |a, &v| a + v * v);
    let p = base * (-flow.sigma::<T>() * (T::lit(2.0) * t * norm2)).exp();
    let phase = zgamma
        .iter()
        .zip(zx.iter().zip(zy))
        .fold(T::zero(), |a, (&g, (&u, &v))| a + g * (u - v));
    let b = p * Cx::new(T::zero(), T::lit(2.0) * phase).exp();
    Ok((p, b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn mehler_examples() {
        let v = mehler_kernel(0.5, &[0.0, 0.0], &[0.0, 0.0], 1.3, 2).unwrap();
        assert!((v - 1.0 / (2.0 * PI * 1.3f64.sinh())).abs() < 1e-15f64);
        let x = [0.2, -0.5, 0.9];
        let y = [1.0, 0.1, -0.3];
        let a = mehler_kernel(0.8, &x, &y, 0.7, 3).unwrap();
        let b = mehler_kernel(0.8, &y, &x, 0.7, 3).unwrap();
        assert_eq!(a, b);
        assert!(mehler_kernel(-0.1, &x, &y, 0.7, 3).is_err());
    }

    #[test]
    fn lift_examples() {
        let d = Cx::new(0.3f64, -0.2);
        let (p, b) = lift_kernels(Flow::WienerKac, d, 0.5, &[1.0], &[0.0], &[0.0]).unwrap();
        assert_eq!(p, d);
        assert_eq!(b, d);
        let (p, b) = lift_kernels(
            Flow::DiracFeynman,
            d,
            0.5,
            &[1.0, 2.0],
            &[1.0, 2.0],
            &[0.3, 0.4],
        )
        .unwrap();
        assert!((b - p).norm() < 1e-16);
        let (p, b) = lift_kernels(
            Flow::WienerKac,
            d,
            0.5,
            &[1.0, 2.0],
            &[0.0, 2.5],
            &[0.3, 0.4],
        )
        .unwrap();
        assert!((p.norm() - b.norm()).abs() < 1e-16);
        assert!((p.norm() - d.norm() * (-0.25f64).exp()).abs() < 1e-15);
    }
}
