//! Executable path-integral statements: the uniform bound, the discrete
//! Feynman-Kac chain, Radon-Nikodym consistency, probability conservation and
//! the divergence of the global Schrödinger convolution.

use super::chain::{chain_value, cylinder_value};
use super::slicing::{CylinderFunctional, TimeSlicing};
use super::weights::{ActionRule, WeightConvention};
use crate::kernels::{convolve, global_kernel, Flow, Kernel};
use crate::quadrature::{GaussianEnvelope, QuadRule};
use crate::{Error, MagneticParams, Result, C64};
use serde::{Deserialize, Serialize};

/// `|W| ≤ (2π)^{k/2} ‖F‖` for one functional.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub value_re: f64,
    pub value_im: f64,
    pub modulus: f64,
    pub bound: f64,
    pub within: bool,
}

/// Evaluates the zone-0 Schrödinger cylinder value and compares it with
/// `(2π)^{k/2}·sup_norm`.
pub fn uniform_bound_check(
    functional: &CylinderFunctional,
    params: &MagneticParams,
    degree: usize,
) -> Result<BoundReport> {
    let v = cylinder_value(Flow::DiracFeynman, 0, functional, params, degree)?;
    let bound = (2.0 * std::f64::consts::PI).powf(params.dim() as f64 / 2.0) * functional.sup_norm;
    Ok(BoundReport {
        value_re: v.re,
        value_im: v.im,
        modulus: v.norm(),
        bound,
        within: v.norm() <= bound * (1.0 + 1e-12),
    })
}

fn single_block(params: &MagneticParams) -> Result<(f64, usize)> {
    match params.blocks() {
        [b] => Ok((b.lambda, b.k)),
        _ => Err(Error::Unsupported(
            "weighted point-spread chains need a single block".into(),
        )),
    }
}

/// Adds the Feynman-Kac weight of `flow` (times `extra`, a second weight
/// exponent scale for the Radon-Nikodym factor) to a functional.
fn weighted(
    base: &CylinderFunctional,
    flow: Flow,
    params: &MagneticParams,
    convention: WeightConvention,
    rule: ActionRule,
    extra: Option<C64>,
) -> Result<CylinderFunctional> {
    let (lambda, k) = single_block(params)?;
    let sl = &base.slicing;
    let (c0, c1) = convention.parts(lambda, k, sl.horizon);
    let mut scale = flow.sigma::<f64>();
    if let Some(e) = extra {
        scale += e;
    }
    let mut f = base.clone();
    f.constant = base.constant * (scale * c0).exp();
    for (q, w) in f
        .quadratic
        .iter_mut()
        .zip(rule.coefficients(sl.slices, sl.horizon))
    {
        *q += scale * (c1 * w);
    }
    Ok(f)
}

/// One row of the discrete Feynman-Kac study.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FeynmanKacRow {
    pub slices: usize,
    pub value_re: f64,
    pub value_im: f64,
    pub target_re: f64,
    pub target_im: f64,
    pub residual: f64,
}

/// Chains `δ^{(0)}` with the Feynman-Kac weight for each slice count and
/// compares with `d_σ^{(0)}(T, x, y)`.
#[allow(clippy::too_many_arguments)]
pub fn discrete_feynman_kac(
    flow: Flow,
    horizon: f64,
    x: &[f64],
    y: &[f64],
    slice_counts: &[usize],
    params: &MagneticParams,
    convention: WeightConvention,
    rule: ActionRule,
    degree: usize,
) -> Result<Vec<FeynmanKacRow>> {
    let target = crate::kernels::zonal_kernel_closed(flow, 0, horizon, x, y, params)?.value;
    let delta = Kernel::projection(0, params);
    slice_counts
        .iter()
        .map(|&n| {
            let sl = TimeSlicing::new(horizon, n, x.to_vec(), Some(y.to_vec()))?;
            let f = weighted(
                &CylinderFunctional::one(sl),
                flow,
                params,
                convention,
                rule,
                None,
            )?;
            let v = chain_value(&delta, &f, degree)?;
            Ok(FeynmanKacRow {
                slices: n,
                value_re: v.re,
                value_im: v.im,
                target_re: target.re,
                target_im: target.im,
                residual: (v - target).norm(),
            })
        })
        .collect()
}

/// Both sides of `∫F dw_i = ∫F·(dw_i/dw_1) dw_1` on one slice grid, each
/// path measure built from the `δ^{(0)}` chain and its Feynman-Kac weight.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RadonNikodymReport {
    pub slices: usize,
    pub lhs_re: f64,
    pub lhs_im: f64,
    pub rhs_re: f64,
    pub rhs_im: f64,
    pub residual: f64,
}

pub fn radon_nikodym_consistency(
    functional: &CylinderFunctional,
    params: &MagneticParams,
    convention: WeightConvention,
    rule: ActionRule,
    degree: usize,
) -> Result<RadonNikodymReport> {
    let delta = Kernel::projection(0, params);
    let lhs_f = weighted(
        functional,
        Flow::DiracFeynman,
        params,
        convention,
        rule,
        None,
    )?;
    // heat weight times exp((1-i)(-exponent)) = weight with flow factor 1 + (i - 1)
    let rhs_f = weighted(
        functional,
        Flow::WienerKac,
        params,
        convention,
        rule,
        Some(C64::new(-1.0, 1.0)),
    )?;
    let lhs = chain_value(&delta, &lhs_f, degree)?;
    let rhs = chain_value(&delta, &rhs_f, degree)?;
    Ok(RadonNikodymReport {
        slices: functional.slicing.slices,
        lhs_re: lhs.re,
        lhs_im: lhs.im,
        rhs_re: rhs.re,
        rhs_im: rhs.im,
        residual: (lhs - rhs).norm(),
    })
}

/// `‖ψ(t)‖` for `ψ(0) = δ^{(0)}(·, x0)/sqrt(δ^{(0)}(x0, x0))` evolved by the
/// global Schrödinger kernel. The evolution is an inner quadrature at each
/// node of an outer real rule with weight `e^{-λ|X|²}`.
pub fn probability_conservation(
    t: f64,
    x0: &[f64],
    params: &MagneticParams,
    outer_degree: usize,
    inner_degree: usize,
) -> Result<f64> {
    params.check_point(x0.len())?;
    let glob = Kernel::<f64>::global(Flow::DiracFeynman, t, params)?;
    let delta = Kernel::<f64>::projection(0, params);
    let xc: Vec<C64> = x0.iter().map(|&v| C64::new(v, 0.0)).collect();
    let norm0 = delta.log_value(&xc, &xc).value().re.sqrt();
    let scales: Vec<f64> = params
        .plane_lambdas()
        .iter()
        .flat_map(|&l| [l, l])
        .collect();
    let outer = QuadRule::new(&GaussianEnvelope::real_diagonal(&scales), outer_degree)?;
    let mut inner_err: Option<Error> = None;
    let err_slot = std::sync::Mutex::new(&mut inner_err);
    let total = outer.integrate_weighted(|x| {
        let psi = convolve(&glob, x, &delta, &xc, inner_degree);
        match psi {
            Ok(p) => {
                let real_sq: f64 = x.iter().zip(&scales).map(|(v, s)| s * v.re * v.re).sum();
                C64::new((p / norm0).norm_sqr() * real_sq.exp(), 0.0)
            }
            Err(e) => {
                **err_slot.lock().expect("error slot") = Some(e);
                C64::new(f64::NAN, 0.0)
            }
        }
    });
    if let Some(e) = inner_err {
        return Err(e);
    }
    Ok(total?.re.sqrt())
}

/// `∫_{[-R,R]^k} |d_i(s,X,U) d_i(t,U,Y)| dU` for one box.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DivergenceRow {
    pub radius: f64,
    pub integral: f64,
}

/// Midpoint sums of the modulus of the global Schrödinger convolution
/// integrand over growing boxes (planar only). The modulus is constant in
/// `U`, so the integrals grow like `R^k`: the convolution is not absolutely
/// convergent.
pub fn divergence_demo(
    s: f64,
    t: f64,
    x: &[f64],
    y: &[f64],
    params: &MagneticParams,
    radii: &[f64],
    cells_per_unit: usize,
) -> Result<Vec<DivergenceRow>> {
    if params.dim() != 2 {
        return Err(Error::Unsupported(
            "divergence demonstration is planar only".into(),
        ));
    }
    radii
        .iter()
        .map(|&r| {
            let m = ((2.0 * r) * cells_per_unit as f64).ceil() as usize;
            let h = 2.0 * r / m as f64;
            let mut acc = 0.0;
            for i in 0..m {
                for j in 0..m {
                    let u = [-r + (i as f64 + 0.5) * h, -r + (j as f64 + 0.5) * h];
                    let a = global_kernel(Flow::DiracFeynman, s, x, &u, params)?;
                    let b = global_kernel(Flow::DiracFeynman, t, &u, y, params)?;
                    acc += (a * b).norm() * h * h;
                }
            }
            Ok(DivergenceRow {
                radius: r,
                integral: acc,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::LogValue;
    use std::sync::Arc;

    fn pr() -> MagneticParams {
        MagneticParams::single(1.0, 2).unwrap()
    }

    #[test]
    fn corrected_chain_at_origin() {
        let rows = discrete_feynman_kac(
            Flow::WienerKac,
            1.0,
            &[0.0, 0.0],
            &[0.0, 0.0],
            &[1, 2, 3, 4],
            &pr(),
            WeightConvention::Corrected,
            ActionRule::LeftRiemann,
            8,
        )
        .unwrap();
        let e_over_pi = 1f64.exp() / std::f64::consts::PI;
        // the chain at the origin is (e/π)(n/(n+2))^{n-1}, tending to e^{-1}/π
        for row in &rows {
            let n = row.slices as f64;
            let e = (n / (n + 2.0)).powf(n - 1.0);
            assert!((row.value_re - e_over_pi * e).abs() < 1e-12, "{row:?}");
        }
        assert!(rows.windows(2).all(|w| w[1].residual < w[0].residual));
    }

    #[test]
    fn bound_and_rn() {
        let sl = TimeSlicing::new(1.0, 2, vec![0.2, -0.1], None).unwrap();
        let rep = uniform_bound_check(&CylinderFunctional::one(sl.clone()), &pr(), 10).unwrap();
        assert!(rep.within);
        let phase: Arc<super::super::chain::PathFn> = Arc::new(|p: &[C64], k: usize| {
            LogValue::new(
                C64::new(1.0, 0.0),
                C64::new(0.0, 0.7) * (p[k] - p[2 * k + 1] * 0.4),
            )
        });
        let f = CylinderFunctional::new(sl, phase, 1.0);
        let rep = uniform_bound_check(&f, &pr(), 16).unwrap();
        assert!(rep.within);
        let rn = radon_nikodym_consistency(
            &f,
            &pr(),
            WeightConvention::Corrected,
            ActionRule::LeftRiemann,
            16,
        )
        .unwrap();
        assert!(rn.residual < 1e-10, "{rn:?}");
    }

    #[test]
    fn rn_single_free_slice_oracle() {
        // F ≡ 1, one free slice: ∫δ⁰(x,y)dy = 2e^{-λ|x|²/2}, times the
        // left-point weight at x
        let x = [0.3, -0.5];
        let sl = TimeSlicing::new(0.6, 1, x.to_vec(), None).unwrap();
        let rep = radon_nikodym_consistency(
            &CylinderFunctional::one(sl),
            &pr(),
            WeightConvention::Uncorrected,
            ActionRule::LeftRiemann,
            8,
        )
        .unwrap();
        let r2 = x[0] * x[0] + x[1] * x[1];
        let w = (C64::new(0.0, 1.0) * (-0.6 - 2.0 * 0.6 * r2)).exp();
        let expect = w * 2.0 * (-r2 / 2.0).exp();
        assert!((C64::new(rep.lhs_re, rep.lhs_im) - expect).norm() < 1e-13);
        assert!(rep.residual < 1e-13);
    }

    #[test]
    fn conservation() {
        for x0 in [[0.0, 0.0], [0.4, -0.3]] {
            let n = probability_conservation(0.7, &x0, &pr(), 30, 6).unwrap();
            assert!((n - 1.0).abs() < 1e-10, "{n}");
        }
    }

    #[test]
    fn divergence_grows() {
        let rows = divergence_demo(
            0.3,
            0.4,
            &[0.1, 0.0],
            &[0.0, 0.2],
            &pr(),
            &[1.0, 2.0, 4.0],
            4,
        )
        .unwrap();
        assert!((rows[1].integral / rows[0].integral - 4.0).abs() < 1e-9);
        assert!((rows[2].integral / rows[1].integral - 4.0).abs() < 1e-9);
    }
}
