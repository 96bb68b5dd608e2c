//! Point-spread projection kernels as integral operators, and the quadrature
//! properties (degree ladder, non-convergence flag, thread determinism).

use super::{rel_err, Recorder, VerifyConfig};
use crate::kernels::{convolve, irreducible_projection_kernel, projection_kernel, Kernel};
use crate::quadrature::envelope::integrate_ladder;
use crate::quadrature::{EnvelopeBuilder, LogValue, QuadRule, Slot};
use crate::spectrum::ZoneIndex;
use crate::{Error, MagneticParams, Result, C64};
use serde_json::json;

fn cx(p: &[f64]) -> Vec<C64> {
    p.iter().map(|&v| C64::new(v, 0.0)).collect()
}

/// Degree used for convolutions in dimension `k`.
fn degree_for(cfg: &VerifyConfig, k: usize) -> usize {
    if k <= 2 {
        cfg.quad_degree
    } else {
        cfg.wide_degree
    }
}

/// Worst relative error of `∫δ^{(a)}(X,U)δ^{(b)}(U,Y)dU` against the expected
/// value (`δ^{(a)}(X,Y)` if `a = b`, else 0) over the sample pairs.
fn composition(
    params: &MagneticParams,
    a: usize,
    b: usize,
    pairs: &[(Vec<f64>, Vec<f64>)],
    degree: usize,
) -> Result<f64> {
    let ka = Kernel::<f64>::projection(a, params);
    let kb = Kernel::<f64>::projection(b, params);
    let mut worst: f64 = 0.0;
    for (x, y) in pairs {
        let got = convolve(&ka, &cx(x), &kb, &cx(y), degree)?;
        let want = if a == b {
            projection_kernel(a, x, y, params)?
        } else {
            C64::new(0.0, 0.0)
        };
        worst = worst.max(rel_err(got, want));
    }
    Ok(worst)
}

fn holomorphic_monomials(planes: usize, max_degree: u32) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for _ in 0..planes {
        let mut next = Vec::new();
        for e in &out {
            let used: u32 = e.iter().sum();
            for d in 0..=max_degree - used {
                let mut f = e.clone();
                f.push(d);
                next.push(f);
            }
        }
        out = next;
    }
    out
}

fn monomial_at(exps: &[u32], x: &[C64]) -> C64 {
    exps.iter()
        .enumerate()
        .fold(C64::new(1.0, 0.0), |acc, (j, &e)| {
            acc * (x[2 * j] + C64::i() * x[2 * j + 1]).powu(e)
        })
}

/// `∫δ^{(0)}(X,U) h(U) e^{-λ|U|²/2} dU` against `h(X) e^{-λ|X|²/2}` for all
/// holomorphic monomials `h` of degree ≤ 4.
fn reproducing(
    params: &MagneticParams,
    lambda: f64,
    points: &[Vec<f64>],
    degree: usize,
) -> Result<f64> {
    let k = params.dim();
    let delta = Kernel::<f64>::projection(0, params);
    let xs: Vec<Vec<C64>> = points.iter().map(|p| cx(p)).collect();
    let mut worst: f64 = 0.0;
    for x in &xs {
        let mut b = EnvelopeBuilder::new(1, k);
        delta.add_to_envelope(&mut b, Slot::Fixed(x), Slot::Var(0));
        b.add_dot(
            C64::new(-lambda / 2.0, 0.0),
            Slot::Var(0),
            Slot::Var(0),
            0..k,
        );
        let rule = QuadRule::new(&b.build(), degree)?;
        for h in holomorphic_monomials(k / 2, 4) {
            let got = rule.integrate(|u| {
                let uu: C64 = u.iter().map(|v| v * v).sum();
                delta.log_value(x, u) * LogValue::new(monomial_at(&h, u), uu * (-lambda / 2.0))
            })?;
            let xx: C64 = x.iter().map(|v| v * v).sum();
            let want = monomial_at(&h, x) * (xx * (-lambda / 2.0)).exp();
            worst = worst.max(rel_err(got, want));
        }
    }
    Ok(worst)
}

fn pairs(cfg: &VerifyConfig, salt: &str, count: usize, dim: usize) -> Vec<(Vec<f64>, Vec<f64>)> {
    let pts = cfg.points(salt, 2 * count, dim, 1.0);
    pts.chunks(2)
        .map(|c| (c[0].clone(), c[1].clone()))
        .collect()
}

pub(super) fn run(rec: &mut Recorder, cfg: &VerifyConfig) {
    let tol = cfg.tolerances.clone();
    let grid: [(f64, usize, usize); 4] = [(1.0, 2, 3), (2.0, 2, 3), (1.0, 4, 2), (2.0, 4, 2)];
    for (lambda, k, max_a) in grid {
        let params = MagneticParams::single(lambda, k);
        let degree = degree_for(cfg, k);
        let sample = pairs(cfg, &format!("projections/{lambda}/{k}"), 3, k);
        for a in 0..=max_a {
            rec.check(
                "projections.idempotency",
                json!({ "lambda": lambda, "k": k, "a": a, "degree": degree }),
                tol.projection,
                || composition(&params.clone()?, a, a, &sample, degree),
            );
        }
        for a in 0..=max_a {
            for b in a + 1..=max_a {
                rec.check(
                    "projections.zone_orthogonality",
                    json!({ "lambda": lambda, "k": k, "a": a, "b": b, "degree": degree }),
                    tol.projection,
                    || composition(&params.clone()?, a, b, &sample, degree),
                );
            }
        }
        let pts: Vec<Vec<f64>> = sample.iter().map(|p| p.0.clone()).collect();
        rec.check(
            "projections.reproducing",
            json!({ "lambda": lambda, "k": k, "max_degree": 4, "degree": degree }),
            tol.projection,
            || reproducing(&params.clone()?, lambda, &pts, degree),
        );
    }
    for a in 0..=2u64 {
        rec.check(
            "projections.irreducible_sum",
            json!({ "lambda": [1.0, 1.5], "k": [2, 2], "a": a }),
            1e-12,
            || {
                let params = MagneticParams::new(vec![
                    crate::Block { lambda: 1.0, k: 2 },
                    crate::Block { lambda: 1.5, k: 2 },
                ])?;
                let mut worst: f64 = 0.0;
                for (x, y) in pairs(cfg, "projections/irreducible", 3, 4) {
                    let gross = projection_kernel(a as usize, &x, &y, &params)?;
                    let mut sum = C64::new(0.0, 0.0);
                    for t in ZoneIndex::enumerate(a, 2) {
                        let t: Vec<usize> = t.iter().map(|&v| v as usize).collect();
                        sum += irreducible_projection_kernel(&t, &x, &y, &params)?;
                    }
                    worst = worst.max(rel_err(sum, gross));
                }
                Ok(worst)
            },
        );
    }
    quadrature_checks(rec, cfg);
}

fn quadrature_checks(rec: &mut Recorder, cfg: &VerifyConfig) {
    let ladder = cfg.ladder.clone();
    for lambda in [1.0, 2.0] {
        rec.check(
            "quadrature.convergence_ladder",
            json!({ "lambda": lambda, "k": 2, "max_a": 3, "ladder": ladder }),
            cfg.tolerances.ladder,
            || {
                let params = MagneticParams::single(lambda, 2)?;
                let mut worst: f64 = 0.0;
                for (x, y) in pairs(cfg, &format!("ladder/{lambda}"), 2, 2) {
                    for a in 0..=3 {
                        let kern = Kernel::<f64>::projection(a, &params);
                        let vals: Vec<C64> = ladder
                            .iter()
                            .map(|&d| convolve(&kern, &cx(&x), &kern, &cx(&y), d))
                            .collect::<Result<_>>()?;
                        for w in vals.windows(2) {
                            worst = worst.max((w[1] - w[0]).norm() / (1.0 + w[1].norm()));
                        }
                    }
                }
                Ok(worst)
            },
        );
    }
    rec.check(
        "quadrature.nonconvergence_flag",
        json!({ "integrand": "cos(6x) e^{-x^2}", "ladder": [2, 3] }),
        0.0,
        || {
            let mut b = EnvelopeBuilder::new(1, 1);
            b.add_dot(C64::new(-1.0, 0.0), Slot::Var(0), Slot::Var(0), 0..1);
            let env = b.build();
            let r = integrate_ladder(&env, &[2, 3], 1e-8, |x| {
                LogValue::new((x[0] * 6.0).cos(), -x[0] * x[0])
            });
            Ok(if matches!(r, Err(Error::NonConvergence { .. })) {
                0.0
            } else {
                1.0
            })
        },
    );
    rec.check(
        "quadrature.thread_determinism",
        json!({ "threads": [1, 3], "degree": cfg.quad_degree }),
        0.0,
        || {
            let params = MagneticParams::single(1.0, 2)?;
            let kern = Kernel::<f64>::projection(2, &params);
            let (x, y) = (cx(&[0.3, -0.2]), cx(&[-0.1, 0.4]));
            let run = |threads: usize| -> Result<C64> {
                let pool = rayon::ThreadPoolBuilder::new()
                    .num_threads(threads)
                    .build()
                    .map_err(|e| Error::Domain(e.to_string()))?;
                pool.install(|| convolve(&kern, &x, &kern, &y, cfg.quad_degree))
            };
            let (a, b) = (run(1)?, run(3)?);
            let same = a.re.to_bits() == b.re.to_bits() && a.im.to_bits() == b.im.to_bits();
            Ok(if same { 0.0 } else { 1.0 })
        },
    );
}
