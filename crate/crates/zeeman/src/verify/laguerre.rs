//! Laguerre identities and the complex Gaussian integral.

use super::{Recorder, VerifyConfig};
use crate::core_math::exact::{rat, rat_to_f64};
use crate::core_math::gaussian_moment_integral;
use crate::core_math::identities as id;
use crate::core_math::laguerre::{laguerre, laguerre_exact};
use crate::quadrature::{EnvelopeBuilder, LogValue, QuadRule, Slot};
use crate::{Result, C64};
use serde_json::json;

const MAX_ALPHA: i64 = 3;
const MAX_ORDER: usize = 8;

fn exact_family(rec: &mut Recorder, name: &str, max_order: usize, f: fn(i64, usize) -> f64) {
    for alpha in 0..=MAX_ALPHA {
        rec.check(
            name,
            json!({ "alpha": alpha, "max_n": max_order }),
            0.0,
            || Ok((0..=max_order).map(|n| f(alpha, n)).fold(0.0, f64::max)),
        );
    }
}

fn float_vs_exact() -> f64 {
    let mut worst: f64 = 0.0;
    for alpha in 0..=4 {
        for n in 0..=12 {
            let exact = laguerre_exact(alpha, n);
            for i in 0..=40 {
                // grid points are exact binary fractions, so the reference is
                // the rational value rounded once
                let t = 0.25 * i as f64;
                let reference = rat_to_f64(&exact.eval(&rat(i, 4)));
                let v = laguerre(alpha, n, t);
                worst = worst.max((v - reference).abs() / (1.0 + reference.abs()));
            }
        }
    }
    worst
}

/// Relative error for a linear term `C` of Euclidean norm `norm`.
fn moment_vs_quadrature(a: C64, k: usize, norm: f64) -> Result<f64> {
    let raw: Vec<C64> = (0..k)
        .map(|i| C64::new(0.7 - 0.45 * i as f64, 0.3 * i as f64 - 0.5))
        .collect();
    let len = raw.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
    let c: Vec<C64> = raw.iter().map(|&v| v * (norm / len)).collect();
    let mut b = EnvelopeBuilder::new(1, k);
    for (i, &ci) in c.iter().enumerate() {
        b.add_dot(-a / 2.0, Slot::Var(0), Slot::Var(0), i..i + 1);
        b.add_linear(0, i, ci);
    }
    let rule = QuadRule::new(&b.build(), 12)?;
    let got = rule.integrate(|x| {
        let e = x
            .iter()
            .zip(&c)
            .fold(C64::new(0.0, 0.0), |acc, (&xi, &ci)| {
                acc - a * xi * xi / 2.0 + ci * xi
            });
        LogValue::new(C64::new(1.0, 0.0), e)
    })?;
    let want = gaussian_moment_integral(a, &c)?;
    Ok((got - want).norm() / want.norm())
}

pub(super) fn run(rec: &mut Recorder, cfg: &VerifyConfig) {
    let tol = &cfg.tolerances;
    rec.check(
        "laguerre.recurrence_vs_explicit",
        json!({ "max_alpha": 4, "max_n": 12, "t": "0..10 step 0.25" }),
        tol.laguerre_float,
        || Ok(float_vs_exact()),
    );
    exact_family(
        rec,
        "laguerre.three_term_recurrence",
        MAX_ORDER,
        id::recurrence_residual,
    );
    exact_family(rec, "laguerre.rodrigues", 5, id::rodrigues_residual);
    exact_family(
        rec,
        "laguerre.derivative_identity",
        MAX_ORDER,
        id::derivative_identity_residual,
    );
    exact_family(
        rec,
        "laguerre.sum_identity",
        MAX_ORDER,
        id::sum_identity_residual,
    );
    exact_family(
        rec,
        "laguerre.degree_derivative_identity",
        MAX_ORDER,
        id::rec3_residual,
    );
    exact_family(
        rec,
        "laguerre.differential_equation",
        MAX_ORDER,
        id::eigen_residual,
    );
    exact_family(
        rec,
        "laguerre.composition",
        MAX_ORDER,
        id::composition_residual,
    );
    exact_family(
        rec,
        "laguerre.simple_composition",
        MAX_ORDER,
        id::simple_composition_residual,
    );
    for a in [C64::new(1.0, 0.0), C64::new(1.0, 0.5), C64::new(2.0, -1.0)] {
        for k in 1..=4usize {
            rec.check(
                "core.gaussian_moment_vs_quadrature",
                json!({ "a_re": a.re, "a_im": a.im, "k": k }),
                tol.gaussian_moment,
                || Ok(moment_vs_quadrature(a, k, 1.0)?.max(moment_vs_quadrature(a, k, 2.0)?)),
            );
        }
    }
    rec.observe("laguerre.unshifted_recurrence", json!({ "max_alpha": MAX_ALPHA, "max_n": MAX_ORDER }), || {
        let rows: Vec<_> = (0..=MAX_ALPHA)
            .map(|alpha| {
                let r: Vec<f64> = (0..=MAX_ORDER).map(|n| id::unshifted_recurrence_residual(alpha, n)).collect();
                json!({ "alpha": alpha, "residual_by_n": r })
            })
            .collect();
        Ok(json!({ "note": "last term uses a instead of a+alpha; exact only for alpha = 0", "rows": rows }))
    });
}
