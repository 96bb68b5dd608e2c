//! Time-sliced zonal path integrals.

use super::{rel_err, Recorder, VerifyConfig};
use crate::kernels::{projection_kernel, zonal_kernel_closed};
use crate::pathint::{
    cylinder_value, discrete_feynman_kac, nu_cylinder_value, probability_conservation,
    radon_nikodym_consistency, uniform_bound_check, ActionRule, CylinderFunctional, PathFn,
    TimeSlicing, WeightConvention,
};
use crate::quadrature::LogValue;
use crate::{Flow, MagneticParams, Result, C64};
use serde_json::json;
use std::sync::Arc;

fn planar() -> Result<MagneticParams> {
    MagneticParams::single(1.0, 2)
}

/// `F(path) = exp(i·(c₁·x₁(t₁) - c₂·x₂(t_last)))`, sup norm 1 on real paths.
fn phase_functional(slicing: TimeSlicing) -> CylinderFunctional {
    let n = slicing.slices;
    let f: Arc<PathFn> = Arc::new(move |p: &[C64], k: usize| {
        LogValue::new(
            C64::new(1.0, 0.0),
            C64::new(0.0, 0.7) * (p[k] - p[n * k + 1] * 0.4),
        )
    });
    CylinderFunctional::new(slicing, f, 1.0)
}

pub(super) fn run(rec: &mut Recorder, cfg: &VerifyConfig) {
    let tol = cfg.tolerances.clone();
    let degree = cfg.path_degree;
    let slices: Vec<usize> = (1..=cfg.max_slices).collect();
    let ends = cfg.points("pathint/ends", 2, 2, 0.6);
    let (x, y) = (ends[0].clone(), ends[1].clone());

    for flow in Flow::both() {
        for &horizon in &cfg.horizons {
            let pj = json!({ "flow": flow.name(), "lambda": 1.0, "k": 2, "horizon": horizon, "slices": slices, "degree": degree });
            rec.check("pathint.slicing_invariance", pj, tol.slicing, || {
                let params = planar()?;
                let target = zonal_kernel_closed(flow, 0, horizon, &x, &y, &params)?.value;
                let mut worst: f64 = 0.0;
                for &n in &slices {
                    let sl = TimeSlicing::new(horizon, n, x.clone(), Some(y.clone()))?;
                    let w = cylinder_value(flow, 0, &CylinderFunctional::one(sl), &params, degree)?;
                    worst = worst.max(rel_err(w, target));
                }
                Ok(worst)
            });
        }
    }

    rec.check(
        "pathint.nu_chain",
        json!({ "lambda": 1.0, "k": 2, "slices": slices, "degree": degree }),
        tol.slicing,
        || {
            let params = planar()?;
            let target = projection_kernel(0, &x, &y, &params)?;
            let mut worst: f64 = 0.0;
            for &n in &slices {
                let sl = TimeSlicing::new(1.0, n, x.clone(), Some(y.clone()))?;
                worst = worst.max(rel_err(
                    nu_cylinder_value(&CylinderFunctional::one(sl), &params, degree)?,
                    target,
                ));
            }
            Ok(worst)
        },
    );

    for n in 1..=cfg.max_slices.min(3) {
        rec.check(
            "pathint.uniform_bound",
            json!({ "lambda": 1.0, "k": 2, "slices": n, "horizon": 1.0, "degree": degree }),
            0.0,
            || {
                let params = planar()?;
                let sl = TimeSlicing::new(1.0, n, x.clone(), None)?;
                let mut worst: f64 = 0.0;
                for f in [CylinderFunctional::one(sl.clone()), phase_functional(sl)] {
                    let rep = uniform_bound_check(&f, &params, degree)?;
                    worst = worst.max((rep.modulus / rep.bound - 1.0).max(0.0));
                }
                Ok(worst)
            },
        );
    }

    for t in [0.3, 0.7] {
        rec.check(
            "pathint.probability_conservation",
            json!({ "lambda": 1.0, "k": 2, "t": t, "outer_degree": 30, "inner_degree": 6 }),
            tol.conservation,
            || {
                let params = planar()?;
                let mut worst: f64 = 0.0;
                for x0 in [[0.0, 0.0], [0.4, -0.3]] {
                    worst =
                        worst.max((probability_conservation(t, &x0, &params, 30, 6)? - 1.0).abs());
                }
                Ok(worst)
            },
        );
    }

    for flow in Flow::both() {
        let pj = json!({ "flow": flow.name(), "lambda": 1.0, "k": 2, "horizon": 1.0, "slices": slices, "convention": "corrected" });
        rec.check("pathint.feynman_kac_decrease", pj, 0.0, || {
            let rows = discrete_feynman_kac(
                flow,
                1.0,
                &x,
                &y,
                &slices,
                &planar()?,
                WeightConvention::Corrected,
                ActionRule::LeftRiemann,
                degree,
            )?;
            Ok(rows
                .windows(2)
                .map(|w| (w[1].residual - w[0].residual).max(0.0))
                .sum())
        });
        rec.observe(
            "pathint.feynman_kac_uncorrected",
            json!({ "flow": flow.name(), "horizon": 1.0, "slices": slices }),
            || {
                let rows = discrete_feynman_kac(
                    flow,
                    1.0,
                    &x,
                    &y,
                    &slices,
                    &planar()?,
                    WeightConvention::Uncorrected,
                    ActionRule::LeftRiemann,
                    degree,
                )?;
                Ok(serde_json::to_value(rows).unwrap_or_default())
            },
        );
    }

    for n in 1..=2usize {
        rec.check(
            "pathint.radon_nikodym",
            json!({ "lambda": 1.0, "k": 2, "slices": n, "horizon": 1.0 }),
            tol.radon_nikodym,
            || {
                let sl = TimeSlicing::new(1.0, n, x.clone(), None)?;
                let rep = radon_nikodym_consistency(
                    &phase_functional(sl),
                    &planar()?,
                    WeightConvention::Corrected,
                    ActionRule::LeftRiemann,
                    degree,
                )?;
                Ok(rep.residual / C64::new(rep.rhs_re, rep.rhs_im).norm().max(1.0))
            },
        );
    }
}
