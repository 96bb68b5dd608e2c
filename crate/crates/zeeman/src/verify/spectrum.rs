//! Exact eigenfunction, zone and multiplicity checks.

use super::{Recorder, VerifyConfig};
use crate::core_math::exact::{rat_from_f64, rat_to_f64};
use crate::core_math::laguerre::laguerre_exact;
use crate::core_math::poly::{eta_inner, UniPoly};
use crate::spectrum::eigen::{eigen_residuals, order_tuples};
use crate::spectrum::radial::radial_eigenpoly_by_recursion;
use crate::spectrum::{
    build_eigenfunction, radial_eigenpoly, spectrum_table, split_by_magnetic, vandermonde_split,
    zone_of, HamiltonianVariant,
};
use crate::{MagneticParams, Result};
use num_traits::Signed;
use serde_json::json;
use std::collections::BTreeMap;

const GRID: [(f64, usize); 4] = [(1.0, 2), (2.0, 2), (1.0, 4), (2.0, 4)];
const MAX_ORDER: usize = 4;

fn eigen_residual_count(params: &MagneticParams, lambda: f64, k: usize) -> Result<f64> {
    let cf = 2.0 * lambda * lambda * k as f64;
    let mut bad = 0usize;
    for t in order_tuples(k, MAX_ORDER) {
        bad += eigen_residuals(&t, params, cf)?
            .iter()
            .filter(|r| !r.is_zero())
            .count();
    }
    Ok(bad as f64)
}

fn split_mismatches(params: &MagneticParams, k: usize) -> Result<f64> {
    let mut bad = 0usize;
    for t in order_tuples(k, MAX_ORDER) {
        let hp = build_eigenfunction(&t, params)?;
        let l = t.iter().sum();
        if vandermonde_split(&hp, l, params)? != split_by_magnetic(&hp) {
            bad += 1;
        }
    }
    Ok(bad as f64)
}

/// Largest `|⟨φ_m, φ_m'⟩_η|` over distinct magnetic components.
fn component_overlap(params: &MagneticParams, lambda: f64, k: usize) -> Result<f64> {
    let lam = rat_from_f64(lambda);
    let mut worst: f64 = 0.0;
    for t in order_tuples(k, MAX_ORDER) {
        let parts = split_by_magnetic(&build_eigenfunction(&t, params)?);
        let comps: Vec<_> = parts.values().collect();
        for i in 0..comps.len() {
            for j in i + 1..comps.len() {
                let v = eta_inner(comps[i], comps[j], &lam);
                worst = worst.max(rat_to_f64(&v.re.abs()) + rat_to_f64(&v.im.abs()));
            }
        }
    }
    Ok(worst)
}

/// Spread of eigenvalues among table rows sharing the holomorphic tuple.
fn upsilon_spread(params: &MagneticParams) -> Result<f64> {
    let rows = spectrum_table(params, &HamiltonianVariant::classical(), 6, 3)?;
    let mut by_p: BTreeMap<Vec<u64>, (f64, f64)> = BTreeMap::new();
    for r in &rows {
        let e = by_p
            .entry(r.p_blocks.clone())
            .or_insert((r.eigenvalue, r.eigenvalue));
        e.0 = e.0.min(r.eigenvalue);
        e.1 = e.1.max(r.eigenvalue);
    }
    Ok(by_p.values().map(|(lo, hi)| hi - lo).fold(0.0, f64::max))
}

/// 0 when zones 0 and 1 have the same eigenvalue set and their multiplicity
/// vectors are equal exactly when `k = 2`.
fn isochromatic(params: &MagneticParams, k: usize) -> Result<f64> {
    let rows = spectrum_table(params, &HamiltonianVariant::classical(), 6, 1)?;
    let zone = |a: u64| -> (Vec<f64>, Vec<u128>) {
        rows.iter()
            .filter(|r| r.zone == a)
            .map(|r| (r.eigenvalue, r.multiplicity))
            .unzip()
    };
    let (e0, m0) = zone(0);
    let (e1, m1) = zone(1);
    let same_set = e0 == e1 && !e0.is_empty();
    let mult_equal = m0 == m1;
    Ok(if same_set && mult_equal == (k == 2) {
        0.0
    } else {
        1.0
    })
}

fn zone_of_mismatches() -> f64 {
    let mut bad = 0usize;
    for l in 0..=8u64 {
        for p in 0..=l {
            if zone_of(l, 2 * p as i64 - l as i64).ok() != Some(l - p) {
                bad += 1;
            }
        }
    }
    bad as f64
}

fn proportional(a: &UniPoly, b: &UniPoly) -> bool {
    if a.is_zero() || b.is_zero() {
        return a.is_zero() && b.is_zero();
    }
    let r = a.leading() / b.leading();
    (a - &b.scale(&r)).is_zero()
}

pub(super) fn run(rec: &mut Recorder, _cfg: &VerifyConfig) {
    for (lambda, k) in GRID {
        let params = MagneticParams::single(lambda, k);
        let pj = json!({ "lambda": lambda, "k": k, "max_order": MAX_ORDER });
        rec.check("spectrum.eigen_residual", pj.clone(), 0.0, || {
            eigen_residual_count(&params.clone()?, lambda, k)
        });
        rec.check("spectrum.vandermonde_split", pj.clone(), 0.0, || {
            split_mismatches(&params.clone()?, k)
        });
        rec.check("spectrum.component_orthogonality", pj, 0.0, || {
            component_overlap(&params.clone()?, lambda, k)
        });
    }
    for (lambda, k) in GRID {
        let pj = json!({ "lambda": lambda, "k": k, "max_p": 6, "max_zone": 3 });
        rec.check("spectrum.upsilon_independence", pj, 0.0, || {
            upsilon_spread(&MagneticParams::single(lambda, k)?)
        });
    }
    for k in [2usize, 4, 6] {
        rec.check(
            "spectrum.isochromatic_zones",
            json!({ "lambda": 1.0, "k": k }),
            0.0,
            || isochromatic(&MagneticParams::single(1.0, k)?, k),
        );
    }
    rec.check("spectrum.zone_of", json!({ "max_l": 8 }), 0.0, || {
        Ok(zone_of_mismatches())
    });
    for k in [2usize, 4] {
        rec.check(
            "spectrum.radial_laguerre",
            json!({ "k": k, "max_n": 6, "max_l_tilde": 3 }),
            0.0,
            || {
                let mut bad = 0usize;
                for lt in 0..=3 {
                    for n in 0..=6 {
                        if !proportional(
                            &radial_eigenpoly(n, lt, k),
                            &laguerre_exact((k / 2 + lt) as i64 - 1, n),
                        ) {
                            bad += 1;
                        }
                    }
                }
                Ok(bad as f64)
            },
        );
    }
    rec.observe("spectrum.coefficient_recursion", json!({ "k": [2, 4], "max_n": 6, "max_l_tilde": 3 }), || {
        let mut rows = Vec::new();
        for k in [2usize, 4] {
            for lt in 0..=3 {
                let ok: Vec<bool> = (0..=6)
                    .map(|n| proportional(&radial_eigenpoly_by_recursion(n, lt, k), &laguerre_exact((k / 2 + lt) as i64 - 1, n)))
                    .collect();
                rows.push(json!({ "k": k, "l_tilde": lt, "proportional_by_n": ok }));
            }
        }
        Ok(json!({ "note": "coefficient recursion; proportional to the Laguerre polynomial only for n = 0", "rows": rows }))
    });
}
