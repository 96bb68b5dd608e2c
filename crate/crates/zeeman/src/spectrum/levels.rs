//! Eigenvalues, multiplicities, zone bookkeeping and spectrum tables.

use super::variant::{HamiltonianKind, HamiltonianVariant};
use crate::core_math::exact::{binomial_u128, rat_from_f64, rat_int, rat_to_f64};
use crate::{Error, MagneticParams, Rational, Result};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Exact eigenvalue for per-block holomorphic degrees `p_blocks`.
pub fn eigenvalue_exact(
    p_blocks: &[u64],
    params: &MagneticParams,
    variant: &HamiltonianVariant,
) -> Result<Rational> {
    if p_blocks.len() != params.blocks().len() {
        return Err(Error::DimensionMismatch {
            expected: params.blocks().len(),
            got: p_blocks.len(),
        });
    }
    let mut base = rat_int(0);
    for (p, b) in p_blocks.iter().zip(params.blocks()) {
        base += rat_from_f64(b.lambda) * rat_int(4 * *p as i64 + b.k as i64);
    }
    let cf = rat_from_f64(variant.field_constant);
    Ok(match variant.kind {
        HamiltonianKind::BoxLaplacian => -base - cf * rat_int(2),
        HamiltonianKind::ClassicalZeeman => base / rat_int(2),
        HamiltonianKind::FieldZeeman => base / rat_int(2) + cf,
    })
}

pub fn eigenvalue(
    p_blocks: &[u64],
    params: &MagneticParams,
    variant: &HamiltonianVariant,
) -> Result<f64> {
    eigenvalue_exact(p_blocks, params, variant).map(|r| rat_to_f64(&r))
}

/// `Π_i C(p_i + k_i/2 - 1, p_i) C(υ_i + k_i/2 - 1, υ_i)`.
pub fn multiplicity(p_blocks: &[u64], v_blocks: &[u64], params: &MagneticParams) -> Result<u128> {
    let nb = params.blocks().len();
    if p_blocks.len() != nb || v_blocks.len() != nb {
        return Err(Error::DimensionMismatch {
            expected: nb,
            got: p_blocks.len().min(v_blocks.len()),
        });
    }
    let mut m: u128 = 1;
    for ((p, v), b) in p_blocks.iter().zip(v_blocks).zip(params.blocks()) {
        let h = b.k as u64 / 2 - 1;
        for f in [binomial_u128(p + h, h), binomial_u128(v + h, h)] {
            m = m
                .checked_mul(f)
                .ok_or_else(|| Error::Domain("multiplicity overflows u128".into()))?;
        }
    }
    Ok(m)
}

/// Number of irreducible zones inside gross zone `a`: `C(a + k/2 - 1, a)`.
pub fn zone_count(a: u64, k: usize) -> u128 {
    let h = k as u64 / 2 - 1;
    binomial_u128(a + h, a)
}

/// Gross zone `(l - m)/2` of an `(l, m)` pair.
pub fn zone_of(l: u64, m: i64) -> Result<u64> {
    if m.unsigned_abs() > l {
        return Err(Error::Domain(format!(
            "|m|={} exceeds l={l}",
            m.unsigned_abs()
        )));
    }
    let d = l as i64 - m;
    if d % 2 != 0 {
        return Err(Error::Domain(format!("l={l} and m={m} differ in parity")));
    }
    Ok((d / 2) as u64)
}

/// Gross zone with an optional irreducible refinement over the complex planes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZoneIndex {
    pub gross: u64,
    pub irreducible: Option<Vec<u64>>,
}

impl ZoneIndex {
    pub fn gross(a: u64) -> Self {
        Self {
            gross: a,
            irreducible: None,
        }
    }

    pub fn irreducible(tuple: Vec<u64>) -> Self {
        Self {
            gross: tuple.iter().sum(),
            irreducible: Some(tuple),
        }
    }

    /// All irreducible tuples of length `planes` summing to `a`.
    pub fn enumerate(a: u64, planes: usize) -> Vec<Vec<u64>> {
        fn rec(a: u64, planes: usize, prefix: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
            if planes == 1 {
                prefix.push(a);
                out.push(prefix.clone());
                prefix.pop();
                return;
            }
            for first in (0..=a).rev() {
                prefix.push(first);
                rec(a - first, planes - 1, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        rec(a, planes, &mut Vec::new(), &mut out);
        out
    }
}

/// One row of a spectrum table.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectrumEntry {
    pub zone: u64,
    /// Total holomorphic degree of the representative block tuple.
    pub p: u64,
    /// Lexicographically smallest block tuple reaching this eigenvalue.
    pub p_blocks: Vec<u64>,
    pub upsilon: u64,
    pub l: u64,
    pub m: i64,
    pub eigenvalue: f64,
    pub multiplicity: u128,
}

fn tuples(nb: usize, cap: u64) -> Vec<Vec<u64>> {
    let mut out = vec![vec![]];
    for _ in 0..nb {
        let mut next = Vec::new();
        for t in &out {
            for v in 0..=cap {
                let mut u = t.clone();
                u.push(v);
                next.push(u);
            }
        }
        out = next;
    }
    out
}

fn tuples_summing(nb: usize, a: u64) -> Vec<Vec<u64>> {
    ZoneIndex::enumerate(a, nb)
}

/// Spectrum of gross zones `0..=max_zone` with every block degree `≤ max_p`.
/// Rows are kept only up to the completeness level
/// `min_i μ(max_p · e_i)`, below which every eigenvalue is present with full
/// multiplicity (for Box the level is taken on `|μ|`). Within a zone rows are
/// sorted by ascending eigenvalue.
pub fn spectrum_table(
    params: &MagneticParams,
    variant: &HamiltonianVariant,
    max_p: u64,
    max_zone: u64,
) -> Result<Vec<SpectrumEntry>> {
    let nb = params.blocks().len();
    let sign = if variant.kind == HamiltonianKind::BoxLaplacian {
        rat_int(-1)
    } else {
        rat_int(1)
    };
    let mut level: Option<Rational> = None;
    for i in 0..nb {
        let mut e = vec![0; nb];
        e[i] = max_p;
        let v = eigenvalue_exact(&e, params, variant)? * &sign;
        level = Some(match level {
            Some(l) if l < v => l,
            _ => v,
        });
    }
    let level = level.expect("at least one block");
    let mut levels: BTreeMap<Rational, (Vec<u64>, Vec<Vec<u64>>)> = BTreeMap::new();
    for pt in tuples(nb, max_p) {
        let key = eigenvalue_exact(&pt, params, variant)? * &sign;
        if key > level {
            continue;
        }
        let e = levels
            .entry(key)
            .or_insert_with(|| (pt.clone(), Vec::new()));
        if pt < e.0 {
            e.0 = pt.clone();
        }
        e.1.push(pt);
    }
    let mut out = Vec::new();
    for a in 0..=max_zone {
        let vts = tuples_summing(nb, a);
        let ordered: Vec<_> = if variant.kind == HamiltonianKind::BoxLaplacian {
            levels.iter().rev().collect()
        } else {
            levels.iter().collect()
        };
        for (key, (rep, members)) in ordered {
            let mut mult: u128 = 0;
            for pt in members {
                for vt in &vts {
                    mult += multiplicity(pt, vt, params)?;
                }
            }
            let p: u64 = rep.iter().sum();
            out.push(SpectrumEntry {
                zone: a,
                p,
                p_blocks: rep.clone(),
                upsilon: a,
                l: p + a,
                m: p as i64 - a as i64,
                eigenvalue: rat_to_f64(&(key * &sign)),
                multiplicity: mult,
            });
        }
    }
    Ok(out)
}
