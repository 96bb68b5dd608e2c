//! The magnetic Laplacian acting on polynomial parts in the Gaussian gauge.

use super::exact::{rat_from_f64, rat_int};
use super::poly::ZonePoly;
use crate::{CRational, Error, MagneticParams, Rational, Result};
use num_traits::Zero;

/// Image of `H` under `Box = Δ + 2iλ∂_θ - λ²|X|² - 2c_f`, where
/// `Box(H e^{-λ|X|²/2}) = (apply_box H) e^{-λ|X|²/2}` and
/// `∂_θ = Σ (x∂_y - y∂_x)`. On a monomial this is
/// `4 Σ_j α_j β_j z^{α-e_j} z̄^{β-e_j} - (4λ|α| + kλ + 2c_f) z^α z̄^β`.
/// Only single-λ parameters are accepted.
pub fn apply_box(
    p: &ZonePoly,
    params: &MagneticParams,
    field_constant: &Rational,
) -> Result<ZonePoly> {
    let lambda = params
        .single_lambda()
        .ok_or_else(|| Error::Unsupported("apply_box needs a single lambda block".into()))?;
    if p.planes() != params.planes() {
        return Err(Error::DimensionMismatch {
            expected: params.planes(),
            got: p.planes(),
        });
    }
    let lam = rat_from_f64(lambda);
    let k = rat_int(params.dim() as i64);
    let shift = &k * &lam + field_constant * rat_int(2);
    Ok(p.map_monomials(|h, a| {
        let deg: u32 = h.iter().sum();
        let diag = -(rat_int(4) * &lam * rat_int(deg as i64) + &shift);
        let mut out = vec![(
            h.to_vec(),
            a.to_vec(),
            CRational::new(diag, Rational::zero()),
        )];
        for j in 0..h.len() {
            if h[j] > 0 && a[j] > 0 {
                let mut h2 = h.to_vec();
                let mut a2 = a.to_vec();
                h2[j] -= 1;
                a2[j] -= 1;
                let c = rat_int(4 * h[j] as i64 * a[j] as i64);
                out.push((h2, a2, CRational::new(c, Rational::zero())));
            }
        }
        out
    }))
}
