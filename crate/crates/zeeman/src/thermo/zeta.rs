//! Zonal zeta functions and the Riemann/Hurwitz reference functions.

use crate::core_math::exact::binomial_u128;
use crate::spectrum::{zone_count, FieldConstantMode, HamiltonianKind, HamiltonianVariant};
use crate::{Error, MagneticParams, Result, C64};
use serde::{Deserialize, Serialize};

/// `B_{2j}` for `j = 1..=12`.
const BERNOULLI: [f64; 12] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
];

/// `Σ_{n≥0} (n + x)^{-s}` for `Re s > 1`, `x > 0`: direct sum plus an
/// Euler-Maclaurin tail.
pub fn hurwitz_zeta(s: C64, x: f64) -> Result<C64> {
    if !(s.re > 1.0) {
        return Err(Error::Domain(format!("zeta needs Re(s) > 1, got {s}")));
    }
    if !(x > 0.0 && x.is_finite()) {
        return Err(Error::Domain(format!(
            "Hurwitz shift must be positive, got {x}"
        )));
    }
    let n = 30usize.max((2.0 * s.norm()) as usize + 10);
    let mut head = C64::new(0.0, 0.0);
    for i in (0..n).rev() {
        head += C64::new(i as f64 + x, 0.0).powc(-s);
    }
    let big = C64::new(n as f64 + x, 0.0);
    let mut tail = big.powc(C64::new(1.0, 0.0) - s) / (s - 1.0) + big.powc(-s) * 0.5;
    // (s)_{2j-1} (N+x)^{-s-2j+1} B_{2j} / (2j)!
    let mut rising = s;
    let mut fact = 2.0;
    let mut power = big.powc(-s - 1.0);
    let inv2 = 1.0 / (big * big);
    for (j, b) in BERNOULLI.iter().enumerate() {
        if j > 0 {
            let m = 2.0 * j as f64;
            rising = rising * (s + (m - 1.0)) * (s + m);
            fact *= (m + 1.0) * (m + 2.0);
            power *= inv2;
        }
        tail += rising * power * (b / fact);
    }
    Ok(head + tail)
}

/// `ζ_R(s) = ζ_Hu(s, 1)` for `Re s > 1`.
pub fn riemann_zeta(s: C64) -> Result<C64> {
    hurwitz_zeta(s, 1.0)
}

/// Coefficients `c_j` with `binom(p + m - 1, p) = Σ_j c_j (p + x0)^j`.
fn shifted_multiplicity(m: usize, x0: f64) -> Vec<f64> {
    // Π_{i=1}^{m-1} (u - x0 + i) / (m-1)!
    let mut c = vec![1.0];
    let mut fact = 1.0;
    for i in 1..m {
        let shift = i as f64 - x0;
        let mut next = vec![0.0; c.len() + 1];
        for (d, &v) in c.iter().enumerate() {
            next[d + 1] += v;
            next[d] += v * shift;
        }
        c = next;
        fact *= i as f64;
    }
    c.iter().map(|v| v / fact).collect()
}

/// `Σ mult · μ^{-s}` over the zone-`a` spectrum of `H_Z` or `H_Zf`, with each
/// block's holomorphic degree below `truncation`. With `tail`, the remainder
/// beyond the truncation is added exactly through Hurwitz zeta values
/// (single block only).
pub fn zeta_zonal(
    a: usize,
    s: C64,
    params: &MagneticParams,
    variant: &HamiltonianVariant,
    truncation: usize,
    tail: bool,
) -> Result<C64> {
    if !(s.re > 1.0) {
        return Err(Error::Domain(format!(
            "zonal zeta needs Re(s) > 1, got {s}"
        )));
    }
    let half_k = (params.dim() / 2) as f64;
    if !(s.re > half_k) {
        return Err(Error::Domain(format!(
            "zonal zeta diverges for Re(s) ≤ k/2 = {half_k}"
        )));
    }
    let shift = match variant.kind {
        HamiltonianKind::ClassicalZeeman => 0.0,
        HamiltonianKind::FieldZeeman => variant.field_constant,
        HamiltonianKind::BoxLaplacian => {
            return Err(Error::Unsupported(
                "zeta of the non-positive Box operator".into(),
            ))
        }
    };
    let base: f64 = params
        .blocks()
        .iter()
        .map(|b| 0.5 * b.lambda * b.k as f64)
        .sum::<f64>()
        + shift;
    if !(base > 0.0) {
        return Err(Error::Domain(format!(
            "lowest eigenvalue {base} is not positive"
        )));
    }
    let zones = zone_count(a as u64, params.dim()) as f64;
    let blocks = params.blocks();
    let mut sum = C64::new(0.0, 0.0);
    let mut idx = vec![0usize; blocks.len()];
    loop {
        let mut mu = base;
        let mut mult = zones;
        for (b, &p) in blocks.iter().zip(&idx) {
            mu += 2.0 * b.lambda * p as f64;
            let m = (b.k / 2) as u64;
            mult *= binomial_u128(p as u64 + m - 1, p as u64) as f64;
        }
        sum += C64::new(mu, 0.0).powc(-s) * mult;
        let mut i = 0;
        loop {
            if i == idx.len() {
                break;
            }
            idx[i] += 1;
            if idx[i] < truncation {
                break;
            }
            idx[i] = 0;
            i += 1;
        }
        if i == idx.len() {
            break;
        }
    }
    if tail {
        if blocks.len() != 1 {
            return Err(Error::Unsupported(
                "exact zeta tail for several blocks".into(),
            ));
        }
        let b = &blocks[0];
        let step = 2.0 * b.lambda;
        let x0 = base / step;
        let coeffs = shifted_multiplicity(b.k / 2, x0);
        let scale = C64::new(step, 0.0).powc(-s) * zones;
        for (j, c) in coeffs.iter().enumerate() {
            if *c != 0.0 {
                sum += scale * hurwitz_zeta(s - j as f64, truncation as f64 + x0)? * *c;
            }
        }
    }
    Ok(sum)
}

/// One candidate for the field constant in the Hurwitz relation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HurwitzResidual {
    pub label: String,
    pub field_constant: f64,
    pub value_re: f64,
    pub value_im: f64,
    pub target_re: f64,
    pub target_im: f64,
    pub residual: f64,
}

/// Compares `ζ_{H_Zf}^{(a)}(s)` with `(1 - 2^{-s}) ζ_Hu(s, 4)` for the planar
/// unit-field case under several field constants. Informational only.
pub fn hurwitz_residuals(a: usize, s: f64, truncation: usize) -> Result<Vec<HurwitzResidual>> {
    let params = MagneticParams::single(1.0, 2)?;
    let sc = C64::new(s, 0.0);
    let target = hurwitz_zeta(sc, 4.0)? * (1.0 - 2f64.powf(-s));
    let candidates = [
        (
            "box_constant",
            FieldConstantMode::BoxConstant.value(&params),
        ),
        ("lift", FieldConstantMode::Lift.value(&params)),
        ("three", 3.0),
        ("zero", 0.0),
    ];
    candidates
        .iter()
        .map(|(label, cf)| {
            let v = HamiltonianVariant {
                kind: HamiltonianKind::FieldZeeman,
                field_constant: *cf,
            };
            let value = zeta_zonal(a, sc, &params, &v, truncation, true)?;
            Ok(HurwitzResidual {
                label: label.to_string(),
                field_constant: *cf,
                value_re: value.re,
                value_im: value.im,
                target_re: target.re,
                target_im: target.im,
                residual: (value - target).norm(),
            })
        })
        .collect()
}
