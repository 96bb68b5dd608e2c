//! Zonal kernels from the exact eigenbasis (planar case).

use super::flow::{check_time, Flow};
use crate::core_math::exact::{rat_from_f64, rat_to_f64};
use crate::core_math::poly::eta_inner;
use crate::spectrum::eigen::eigen_components;
use crate::{Error, MagneticParams, Result, C64};

/// `Σ_{p ≤ max_level} e^{-σ t μ_p} φ_p(X) conj(φ_p(Y))` over the normalized
/// eigenfunctions of zone `a` (`k = 2`), with `μ_p = λ(2p + 1)` the `H_Z`
/// eigenvalue. The eigenfunctions come from the exact Hermite construction.
pub fn spectral_series_kernel(
    flow: Flow,
    a: usize,
    t: f64,
    x: &[f64],
    y: &[f64],
    params: &MagneticParams,
    max_level: usize,
) -> Result<C64> {
    if params.dim() != 2 {
        return Err(Error::Unsupported(
            "spectral series kernel is planar only".into(),
        ));
    }
    check_time(flow, t, params, true)?;
    params.check_point(x.len())?;
    params.check_point(y.len())?;
    let lambda = params.blocks()[0].lambda;
    let lr = rat_from_f64(lambda);
    let sigma = flow.sigma::<f64>();
    let gauss = (-(lambda / 2.0) * (x[0] * x[0] + x[1] * x[1] + y[0] * y[0] + y[1] * y[1])).exp();
    let mut acc = C64::new(0.0, 0.0);
    for p in 0..=max_level {
        let comps = eigen_components(&[p + a, 0], params, 0.0)?;
        let phi = comps
            .into_iter()
            .find(|c| c.p == p as u64 && c.upsilon == a as u64)
            .ok_or_else(|| Error::Domain(format!("no eigen component for p={p}, zone {a}")))?
            .poly;
        let norm2 = rat_to_f64(&eta_inner(&phi, &phi, &lr).re) * std::f64::consts::PI;
        let mu = lambda * (2 * p + 1) as f64;
        let term = (-sigma * (t * mu)).exp() * phi.eval(x) * phi.eval(y).conj() / norm2;
        acc += term;
    }
    Ok(acc * gauss)
}

#[cfg(test)]
mod tests {
    use super::super::closed::zonal_kernel_closed;
    use super::*;

    #[test]
    fn series_matches_closed() {
        for lambda in [1.0, 2.0] {
            let p = MagneticParams::single(lambda, 2).unwrap();
            let x = [0.4, -0.3];
            let y = [-0.2, 0.5];
            for flow in Flow::both() {
                for a in 0..2 {
                    let s = spectral_series_kernel(flow, a, 0.5, &x, &y, &p, 12).unwrap();
                    let c = zonal_kernel_closed(flow, a, 0.5, &x, &y, &p).unwrap().value;
                    assert!(
                        (s - c).norm() < 1e-10,
                        "λ={lambda} {flow} a={a}: {s} vs {c}"
                    );
                }
            }
        }
    }
}
