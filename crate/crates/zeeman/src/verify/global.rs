//! Global heat and Schrödinger kernels: evolution equations,
//! Chapman-Kolmogorov for the heat kernel, and the divergence of the naive
//! Schrödinger convolution.

use super::{rel_err, Recorder, VerifyConfig};
use crate::kernels::{convolve, evolution_residual, global_kernel, Kernel};
use crate::pathint::divergence_demo;
use crate::{Flow, MagneticParams, Result, C64};
use rand::Rng;
use serde_json::json;

const PDE_GRID: [(f64, usize); 3] = [(1.0, 2), (2.0, 2), (0.5, 4)];
const FD_STEP: f64 = 1e-4;

fn pde_worst(cfg: &VerifyConfig, flow: Flow, lambda: f64, k: usize) -> Result<f64> {
    let params = MagneticParams::single(lambda, k)?;
    let mut rng = cfg.rng(&format!("pde/{flow}/{lambda}/{k}"));
    let mut worst: f64 = 0.0;
    for _ in 0..cfg.pde_points {
        let t = rng.gen_range(0.4..=1.2);
        let x: Vec<f64> = (0..k).map(|_| rng.gen_range(-0.6..=0.6)).collect();
        let y: Vec<f64> = (0..k).map(|_| rng.gen_range(-0.6..=0.6)).collect();
        worst = worst.max(evolution_residual(flow, t, &x, &y, &params, FD_STEP)?);
    }
    Ok(worst)
}

#[allow(clippy::too_many_arguments)]
pub(super) fn chapman_kolmogorov(
    cfg: &VerifyConfig,
    make: impl Fn(f64) -> Result<Kernel<f64>>,
    closed: impl Fn(f64, &[f64], &[f64]) -> Result<C64>,
    s: f64,
    t: f64,
    k: usize,
    degree: usize,
    salt: &str,
) -> Result<f64> {
    let (ks, kt) = (make(s)?, make(t)?);
    let pts = cfg.points(salt, 6, k, 1.0);
    let mut worst: f64 = 0.0;
    for pair in pts.chunks(2) {
        let (x, y) = (&pair[0], &pair[1]);
        let xc: Vec<C64> = x.iter().map(|&v| C64::new(v, 0.0)).collect();
        let yc: Vec<C64> = y.iter().map(|&v| C64::new(v, 0.0)).collect();
        let got = convolve(&ks, &xc, &kt, &yc, degree)?;
        worst = worst.max(rel_err(got, closed(s + t, x, y)?));
    }
    Ok(worst)
}

pub(super) fn run(rec: &mut Recorder, cfg: &VerifyConfig) {
    let tol = cfg.tolerances.clone();
    for (id, flow) in [
        ("global.heat_equation", Flow::WienerKac),
        ("global.schrodinger_equation", Flow::DiracFeynman),
    ] {
        for (lambda, k) in PDE_GRID {
            let pj = json!({ "lambda": lambda, "k": k, "points": cfg.pde_points, "t": [0.4, 1.2], "fd_step": FD_STEP });
            rec.check(id, pj, tol.pde, || pde_worst(cfg, flow, lambda, k));
        }
    }
    for (lambda, k) in [(1.0, 2usize), (2.0, 2), (1.0, 4)] {
        let degree = if k <= 2 {
            cfg.quad_degree
        } else {
            cfg.wide_degree
        };
        for &(s, t) in &cfg.ck_pairs {
            let pj =
                json!({ "flow": "wk", "lambda": lambda, "k": k, "s": s, "t": t, "degree": degree });
            rec.check(
                "global.chapman_kolmogorov",
                pj,
                tol.chapman_kolmogorov,
                || {
                    let params = MagneticParams::single(lambda, k)?;
                    chapman_kolmogorov(
                        cfg,
                        |u| Kernel::global(Flow::WienerKac, u, &params),
                        |u, x, y| global_kernel(Flow::WienerKac, u, x, y, &params),
                        s,
                        t,
                        k,
                        degree,
                        &format!("global-ck/{lambda}/{k}/{s}/{t}"),
                    )
                },
            );
        }
    }
    let radii = [1.0, 2.0, 4.0, 8.0];
    rec.observe(
        "global.df_convolution_divergence",
        json!({ "s": 0.3, "t": 0.4, "lambda": 1.0, "k": 2, "radii": radii }),
        || {
            let params = MagneticParams::single(1.0, 2)?;
            let rows = divergence_demo(0.3, 0.4, &[0.1, 0.0], &[0.0, 0.2], &params, &radii, 4)?;
            Ok(json!({
                "note": "integral of |d_i(s,X,U) d_i(t,U,Y)| over the box [-R,R]^2 grows like R^2",
                "rows": serde_json::to_value(rows).unwrap_or_default(),
            }))
        },
    );
}
