//! Gauss density and the closed-form complex Gaussian integral.

use crate::{Cx, Error, MagneticParams, Real, Result};

/// `η(X) = exp(-Σ λ_i |X_i|²)`.
pub fn gauss_density<T: Real>(x: &[T], params: &MagneticParams) -> Result<T> {
    params.check_point(x.len())?;
    let mut e = T::zero();
    for (r, b) in params.ranges().into_iter().zip(params.blocks()) {
        let s = x[r].iter().fold(T::zero(), |acc, &v| acc + v * v);
        e = e + T::lit(b.lambda) * s;
    }
    Ok((-e).exp())
}

/// `∫_{R^k} exp(-A|Z|²/2 + C·Z) dZ = (2π/A)^{k/2} exp(C·C / (2A))` for `Re A > 0`,
/// with `k = C.len()`. The power is taken as `(A^{1/2})^k` using the principal
/// square root, which is the value of the product of `k` one-dimensional
/// integrals.
pub fn gaussian_moment_integral<T: Real>(a: Cx<T>, c: &[Cx<T>]) -> Result<Cx<T>> {
    if !(a.re > T::zero()) {
        return Err(Error::Domain(format!(
            "Re(A) must be positive, got {:?}",
            a.re
        )));
    }
    let k = c.len() as i32;
    let cc = c
        .iter()
        .fold(Cx::new(T::zero(), T::zero()), |acc, &v| acc + v * v);
    let two_pi = T::lit(2.0) * T::PI();
    let root = (Cx::new(two_pi, T::zero()) / a).sqrt();
    Ok(root.powi(k) * (cc / (a * T::lit(2.0))).exp())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    #[test]
    fn density_examples() {
        let p1 = MagneticParams::single(1.0, 2).unwrap();
        let p2 = MagneticParams::single(2.0, 2).unwrap();
        assert_eq!(gauss_density(&[0.0, 0.0], &p1).unwrap(), 1.0);
        assert_relative_eq!(gauss_density(&[1.0, 0.0], &p1).unwrap(), (-1.0f64).exp());
        assert_relative_eq!(gauss_density(&[1.0, 0.0], &p2).unwrap(), (-2.0f64).exp());
    }

    #[test]
    fn moment_examples() {
        let z = Cx::new(0.0, 0.0);
        let v = gaussian_moment_integral(Cx::new(1.0, 0.0), &[z]).unwrap();
        assert_relative_eq!(v.re, (2.0 * PI).sqrt(), epsilon = 1e-14);
        let v = gaussian_moment_integral(Cx::new(2.0, 0.0), &[z, z]).unwrap();
        assert_relative_eq!(v.re, PI, epsilon = 1e-14);
        let v = gaussian_moment_integral(Cx::new(1.0, 0.0), &[Cx::new(1.0, 0.0), z]).unwrap();
        assert_relative_eq!(v.re, 2.0 * PI * 0.5f64.exp(), epsilon = 1e-12);
        assert!(gaussian_moment_integral(Cx::new(0.0, 1.0), &[z]).is_err());
    }

    #[test]
    fn branch_for_large_k() {
        // A = e^{i 0.4π}: the product of k one-dimensional integrals.
        let a = Cx::from_polar(1.0, 0.4 * PI);
        let c = vec![Cx::new(0.0, 0.0); 6];
        let v = gaussian_moment_integral(a, &c).unwrap();
        let one_d = (Cx::new(2.0 * PI, 0.0) / a).sqrt();
        assert!((v - one_d.powi(6)).norm() < 1e-12);
    }
}
