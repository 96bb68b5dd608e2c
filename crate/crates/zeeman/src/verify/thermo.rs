//! Partition functions, traces, spectral sums and zonal zeta functions.

use super::{rel_err, Recorder, VerifyConfig};
use crate::kernels::ZonalPart;
use crate::thermo::{
    hurwitz_residuals, mehler_bound, partition, partition_by_trace, riemann_zeta,
    spectral_partition, spectral_tail_bound, zeta_zonal, TraceSource,
};
use crate::{Flow, HamiltonianVariant, MagneticParams, Result, C64};
use serde_json::json;

const LEVELS: usize = 200;
const ZETA_TRUNCATION: usize = 400;

pub(super) fn run(rec: &mut Recorder, cfg: &VerifyConfig) {
    let tol = cfg.tolerances.clone();
    let ladder = cfg.trace_ladder.clone();
    for flow in Flow::both() {
        for k in [2usize, 4] {
            for &t in &cfg.times {
                for a in 0..=2usize {
                    let pj = json!({ "flow": flow.name(), "lambda": 1.0, "k": k, "a": a, "t": t, "ladder": ladder });
                    let source = if a <= 1 {
                        TraceSource::Closed(ZonalPart::Full)
                    } else {
                        TraceSource::Numeric
                    };
                    rec.check("thermo.partition_vs_trace", pj.clone(), tol.trace, || {
                        let params = MagneticParams::single(1.0, k)?;
                        let closed = partition::<f64>(flow, a, t, &params)?;
                        let trace =
                            partition_by_trace(flow, a, t, &params, source, &ladder, tol.trace)?;
                        Ok(rel_err(trace, closed))
                    });
                    rec.check("thermo.dominant_trace", pj, tol.trace, || {
                        let params = MagneticParams::single(1.0, k)?;
                        let closed = partition::<f64>(flow, a, t, &params)?;
                        let trace = partition_by_trace(
                            flow,
                            a,
                            t,
                            &params,
                            TraceSource::Dominant,
                            &ladder,
                            tol.trace,
                        )?;
                        Ok(rel_err(trace, closed))
                    });
                }
                let pj = json!({ "flow": flow.name(), "lambda": 1.0, "k": k, "a": 1, "t": t, "ladder": ladder });
                rec.check("thermo.long_term_trace", pj, tol.trace, || {
                    let params = MagneticParams::single(1.0, k)?;
                    let lt = partition_by_trace::<f64>(
                        flow,
                        1,
                        t,
                        &params,
                        TraceSource::Closed(ZonalPart::LongTerm),
                        &ladder,
                        tol.trace,
                    )?;
                    Ok(lt.norm())
                });
            }
        }
    }

    for k in [2usize, 4] {
        for &t in cfg.times.iter().filter(|&&t| t >= 0.5) {
            for a in 0..=2usize {
                let pj = json!({ "flow": "wk", "lambda": 1.0, "k": k, "a": a, "t": t, "levels": LEVELS });
                rec.check(
                    "thermo.partition_vs_spectral_sum",
                    pj,
                    tol.spectral_sum,
                    || {
                        let params = MagneticParams::single(1.0, k)?;
                        let closed = partition::<f64>(Flow::WienerKac, a, t, &params)?;
                        let sum = spectral_partition(Flow::WienerKac, a, t, &params, LEVELS)?;
                        Ok(rel_err(sum, closed))
                    },
                );
            }
        }
    }
    rec.observe("thermo.df_spectral_sum", json!({ "lambda": 1.0, "k": 2, "a": 0, "t": 0.5 }), || {
        let params = MagneticParams::single(1.0, 2)?;
        let closed = partition::<f64>(Flow::DiracFeynman, 0, 0.5, &params)?;
        let partials: Vec<_> = [50usize, 100, 199, 200, 201]
            .iter()
            .map(|&n| spectral_partition(Flow::DiracFeynman, 0, 0.5, &params, n).map(|s| json!({ "levels": n, "re": s.re, "im": s.im })))
            .collect::<Result<_>>()?;
        Ok(json!({
            "note": "terms have unit modulus, so the partial sums do not converge to the closed form",
            "closed": { "re": closed.re, "im": closed.im },
            "tail_bound_available": spectral_tail_bound(Flow::DiracFeynman, 0, 0.5, &params, LEVELS).is_some(),
            "partial_sums": partials,
        }))
    });

    for a in 0..=1usize {
        for s in [2.0, 2.5, 3.0, 4.0] {
            let pj =
                json!({ "lambda": 1.0, "k": 2, "a": a, "s": s, "operator": "classical_zeeman" });
            rec.check("thermo.riemann_relation", pj, tol.zeta, || {
                let params = MagneticParams::single(1.0, 2)?;
                let sc = C64::new(s, 0.0);
                let z = zeta_zonal(
                    a,
                    sc,
                    &params,
                    &HamiltonianVariant::classical(),
                    ZETA_TRUNCATION,
                    true,
                )?;
                let want = riemann_zeta(sc)? * (1.0 - 2f64.powf(-s));
                Ok((z - want).norm())
            });
        }
    }

    for a in 0..=2usize {
        let times = [0.05, 0.3, 1.0, 3.0];
        rec.check(
            "thermo.mehler_bound",
            json!({ "lambda": 1.0, "k": 2, "a": a, "t": times }),
            0.0,
            || {
                let params = MagneticParams::single(1.0, 2)?;
                let mut violations = 0usize;
                for t in times {
                    let (z, bound) = mehler_bound(a, t, &params)?;
                    if !(z > 0.0 && z < bound) {
                        violations += 1;
                    }
                }
                Ok(violations as f64)
            },
        );
    }

    for s in [2.0, 3.0] {
        rec.observe(
            "thermo.hurwitz_relation",
            json!({ "a": 0, "s": s, "truncation": ZETA_TRUNCATION }),
            || {
                Ok(
                    serde_json::to_value(hurwitz_residuals(0, s, ZETA_TRUNCATION)?)
                        .unwrap_or_default(),
                )
            },
        );
    }
}
