//! Zonal heat or Schrödinger kernels for zones 0 and 1.

use super::global::chapman_kolmogorov;
use super::{rel_err, Recorder, VerifyConfig};
use crate::kernels::{
    projection_kernel, spectral_series_kernel, zonal_kernel_closed, zonal_kernel_numeric, ZonalPart,
};
use crate::{Block, Flow, Kernel, MagneticParams, Result};
use serde_json::json;

const SPECTRAL_LEVELS: usize = 12;

fn sup_distance_to_projection(
    flow: Flow,
    a: usize,
    t: f64,
    params: &MagneticParams,
    pairs: &[Vec<f64>],
) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for p in pairs.chunks(2) {
        let v = zonal_kernel_closed(flow, a, t, &p[0], &p[1], params)?.value;
        worst = worst.max((v - projection_kernel(a, &p[0], &p[1], params)?).norm());
    }
    Ok(worst)
}

pub(super) fn run(rec: &mut Recorder, cfg: &VerifyConfig, flow: Flow) {
    let prefix = format!("zonal_{}", flow.name());
    let id = |name: &str| format!("{prefix}.{name}");
    let tol = cfg.tolerances.clone();
    for (lambda, k) in [(1.0, 2usize), (2.0, 2), (1.0, 4)] {
        let degree = if k <= 2 {
            cfg.quad_degree
        } else {
            cfg.wide_degree
        };
        for a in 0..=1usize {
            for &(s, t) in &cfg.ck_pairs {
                let pj =
                    json!({ "lambda": lambda, "k": k, "a": a, "s": s, "t": t, "degree": degree });
                rec.check(
                    &id("chapman_kolmogorov"),
                    pj,
                    tol.chapman_kolmogorov,
                    || {
                        let params = MagneticParams::single(lambda, k)?;
                        chapman_kolmogorov(
                            cfg,
                            |u| Kernel::zonal(flow, a, u, &params, ZonalPart::Full),
                            |u, x, y| Ok(zonal_kernel_closed(flow, a, u, x, y, &params)?.value),
                            s,
                            t,
                            k,
                            degree,
                            &format!("{prefix}-ck/{lambda}/{k}/{a}/{s}/{t}"),
                        )
                    },
                );
            }
        }
    }

    let multi = || {
        MagneticParams::new(vec![
            Block { lambda: 1.0, k: 2 },
            Block { lambda: 1.7, k: 2 },
        ])
    };
    for &t in &cfg.times {
        for a in 0..=1usize {
            for (label, k) in [("single", 2usize), ("two_blocks", 4)] {
                let ladder = if k <= 2 {
                    cfg.ladder.clone()
                } else {
                    vec![cfg.wide_degree - 2, cfg.wide_degree]
                };
                let pj = json!({ "params": label, "a": a, "t": t, "ladder": ladder });
                rec.check(&id("closed_vs_numeric"), pj, tol.numeric_kernel, || {
                    let params = if k == 2 {
                        MagneticParams::single(1.0, 2)?
                    } else {
                        multi()?
                    };
                    let pts = cfg.points(&format!("{prefix}-numeric/{label}/{a}/{t}"), 4, k, 1.0);
                    let mut worst: f64 = 0.0;
                    for p in pts.chunks(2) {
                        let closed = zonal_kernel_closed(flow, a, t, &p[0], &p[1], &params)?.value;
                        let numeric = zonal_kernel_numeric(
                            flow,
                            a,
                            t,
                            &p[0],
                            &p[1],
                            &params,
                            &ladder,
                            tol.numeric_kernel,
                        )?;
                        worst = worst.max(rel_err(numeric, closed));
                    }
                    Ok(worst)
                });
            }
        }
    }

    for a in 0..=1usize {
        let times = cfg.delta_times.clone();
        let pj = json!({ "lambda": 1.0, "k": 2, "a": a, "t": times, "samples": cfg.samples });
        rec.check(&id("delta_limit"), pj, 0.0, || {
            let params = MagneticParams::single(1.0, 2)?;
            let pts = cfg.points(&format!("{prefix}-delta/{a}"), 2 * cfg.samples, 2, 1.0);
            let sups: Vec<f64> = times
                .iter()
                .map(|&t| sup_distance_to_projection(flow, a, t, &params, &pts))
                .collect::<Result<_>>()?;
            // residual: total increase along the decreasing time sequence
            Ok(sups.windows(2).map(|w| (w[1] - w[0]).max(0.0)).sum())
        });
    }

    for (lambda, k) in [(1.0, 2usize), (2.0, 4)] {
        rec.check(
            &id("long_term_at_zero"),
            json!({ "lambda": lambda, "k": k, "a": 1 }),
            0.0,
            || {
                let params = MagneticParams::single(lambda, k)?;
                let lt = Kernel::<f64>::zonal(flow, 1, 0.0, &params, ZonalPart::LongTerm)?;
                let mut worst: f64 = 0.0;
                for p in cfg
                    .points(&format!("{prefix}-lt0/{k}"), 6, k, 1.0)
                    .chunks(2)
                {
                    worst = worst.max(lt.eval(&p[0], &p[1])?.norm());
                }
                Ok(worst)
            },
        );
    }

    for &t in cfg.times.iter().filter(|&&t| t >= 0.5) {
        for a in 0..=1usize {
            let pj = json!({ "lambda": 1.0, "k": 2, "a": a, "t": t, "levels": SPECTRAL_LEVELS });
            rec.check(&id("spectral_series"), pj, tol.spectral_series, || {
                let params = MagneticParams::single(1.0, 2)?;
                let mut worst: f64 = 0.0;
                for p in cfg
                    .points(&format!("{prefix}-series/{a}/{t}"), 6, 2, 0.6)
                    .chunks(2)
                {
                    let series =
                        spectral_series_kernel(flow, a, t, &p[0], &p[1], &params, SPECTRAL_LEVELS)?;
                    let closed = zonal_kernel_closed(flow, a, t, &p[0], &p[1], &params)?.value;
                    worst = worst.max(rel_err(series, closed));
                }
                Ok(worst)
            });
        }
    }
}
