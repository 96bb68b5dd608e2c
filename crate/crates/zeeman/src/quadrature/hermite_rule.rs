//! One-dimensional Gauss-Hermite rules for the weight `e^{-x²}`.

use crate::{Error, Real, Result};

/// Nodes (ascending) and positive weights.
#[derive(Clone, Debug, PartialEq)]
pub struct GaussHermite<T> {
    pub nodes: Vec<T>,
    pub weights: Vec<T>,
}

/// Rule with `degree` nodes, exact for polynomials of degree `2·degree - 1`.
/// Nodes come from Sturm-sequence bisection on the Jacobi matrix with a
/// Newton polish, computed in binary64 and then converted.
pub fn gauss_hermite_rule<T: Real>(degree: usize) -> Result<GaussHermite<T>> {
    if !(1..=200).contains(&degree) {
        return Err(Error::Domain(format!(
            "Gauss-Hermite degree must be in 1..=200, got {degree}"
        )));
    }
    let n = degree;
    let pim4 = std::f64::consts::PI.powf(-0.25);
    // roots are the eigenvalues of the Jacobi matrix with off-diagonals sqrt(j/2)
    let off2: Vec<f64> = (1..n).map(|j| j as f64 / 2.0).collect();
    let below = |z: f64| -> usize {
        let mut count = 0;
        let mut q = -z;
        if q < 0.0 {
            count += 1;
        }
        for &b2 in &off2 {
            let prev = if q == 0.0 { f64::MIN_POSITIVE } else { q };
            q = -z - b2 / prev;
            if q < 0.0 {
                count += 1;
            }
        }
        count
    };
    let bound = (2.0 * n as f64).sqrt() + 1.0;
    let mut x = vec![0.0f64; n];
    let mut w = vec![0.0f64; n];
    for (i, xi) in x.iter_mut().enumerate() {
        let (mut lo, mut hi) = (-bound, bound);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if below(mid) > i {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        let mut z = 0.5 * (lo + hi);
        for _ in 0..3 {
            let (p, d) = orthonormal(n, z, pim4);
            let step = p / d;
            if step.is_finite() && (z - step) > lo - 1e-12 && (z - step) < hi + 1e-12 {
                z -= step;
            }
        }
        *xi = z;
    }
    if n % 2 == 1 {
        x[n / 2] = 0.0;
    }
    for i in 0..n / 2 {
        let s = 0.5 * (x[n - 1 - i] - x[i]);
        x[i] = -s;
        x[n - 1 - i] = s;
    }
    for (xi, wi) in x.iter().zip(w.iter_mut()) {
        let (_, d) = orthonormal(n, *xi, pim4);
        *wi = 2.0 / (d * d);
    }
    if w.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite {
            count: w.iter().filter(|v| !v.is_finite()).count(),
        });
    }
    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|&a, &b| x[a].partial_cmp(&x[b]).expect("finite nodes"));
    Ok(GaussHermite {
        nodes: idx.iter().map(|&i| T::lit(x[i])).collect(),
        weights: idx.iter().map(|&i| T::lit(w[i])).collect(),
    })
}

/// Orthonormal Hermite function value `p_n(z)` and the derivative factor
/// `sqrt(2n) p_{n-1}(z)`.
fn orthonormal(n: usize, z: f64, pim4: f64) -> (f64, f64) {
    let mut p1 = pim4;
    let mut p2 = 0.0;
    for j in 0..n {
        let p3 = p2;
        p2 = p1;
        let jf = j as f64;
        p1 = z * (2.0 / (jf + 1.0)).sqrt() * p2 - (jf / (jf + 1.0)).sqrt() * p3;
    }
    (p1, (2.0 * n as f64).sqrt() * p2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    /// Γ(m + 1/2) = √π Π_{j=1}^{m} (j - 1/2)
    fn half_gamma(m: usize) -> f64 {
        (1..=m).fold(PI.sqrt(), |acc, j| acc * (j as f64 - 0.5))
    }

    #[test]
    fn examples() {
        let r = gauss_hermite_rule::<f64>(1).unwrap();
        assert_eq!(r.nodes, vec![0.0]);
        assert!((r.weights[0] - PI.sqrt()).abs() < 1e-15);
        let r = gauss_hermite_rule::<f64>(2).unwrap();
        let m2: f64 = r.nodes.iter().zip(&r.weights).map(|(x, w)| w * x * x).sum();
        assert!((m2 - PI.sqrt() / 2.0).abs() < 1e-15);
        assert!(gauss_hermite_rule::<f64>(0).is_err());
        assert!(gauss_hermite_rule::<f64>(201).is_err());
    }

    #[test]
    fn high_moment_degree_40() {
        let r = gauss_hermite_rule::<f64>(40).unwrap();
        let m: f64 = r
            .nodes
            .iter()
            .zip(&r.weights)
            .map(|(x, w)| w * x.powi(78))
            .sum();
        let exact = half_gamma(39);
        assert!(((m - exact) / exact).abs() < 1e-12, "{m} vs {exact}");
    }

    #[test]
    fn structure_all_degrees() {
        for n in 1..=200 {
            let r = gauss_hermite_rule::<f64>(n).unwrap();
            let mass: f64 = r.weights.iter().sum();
            assert!((mass - PI.sqrt()).abs() < 1e-12, "degree {n}: mass {mass}");
            assert!(r.weights.iter().all(|&w| w >= 0.0));
            for i in 0..n {
                assert!((r.nodes[i] + r.nodes[n - 1 - i]).abs() < 1e-12);
            }
            assert!(r.nodes.windows(2).all(|p| p[0] < p[1]));
            if n >= 4 {
                let m4: f64 = r
                    .nodes
                    .iter()
                    .zip(&r.weights)
                    .map(|(x, w)| w * x.powi(4))
                    .sum();
                assert!((m4 - 0.75 * PI.sqrt()).abs() < 1e-11, "degree {n}");
            }
        }
    }

    #[test]
    fn single_precision() {
        let r = gauss_hermite_rule::<f32>(10).unwrap();
        let mass: f32 = r.weights.iter().sum();
        assert!((mass - PI.sqrt() as f32).abs() < 1e-5);
    }
}
