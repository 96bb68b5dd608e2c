//! Hermite-product eigenfunctions and their magnetic decomposition.

use super::levels::eigenvalue_exact;
use super::variant::{HamiltonianKind, HamiltonianVariant};
use crate::core_math::boxop::apply_box;
use crate::core_math::exact::{crat_real, rat_from_f64, rat_int};
use crate::core_math::hermite::scaled_hermite_exact;
use crate::core_math::poly::ZonePoly;
use crate::{CRational, Error, MagneticParams, Rational, Result};
use num_traits::{One, Zero};
use std::collections::BTreeMap;

fn single_lambda(params: &MagneticParams) -> Result<Rational> {
    params
        .single_lambda()
        .map(rat_from_f64)
        .ok_or_else(|| Error::Unsupported("exact eigenfunctions need a single lambda block".into()))
}

/// `Π_i λ^{-l_i/2} H_{l_i}(√λ x_i)` expanded in `z, z̄`. The Gaussian factor
/// `e^{-λ|X|²/2}` is implicit. The overall `λ^{-l/2}` keeps coefficients
/// rational and does not affect eigen-relations.
pub fn build_eigenfunction(l_tuple: &[usize], params: &MagneticParams) -> Result<ZonePoly> {
    let lam = single_lambda(params)?;
    params.check_point(l_tuple.len())?;
    let planes = params.planes();
    let mut out = ZonePoly::constant(planes, CRational::one());
    for (i, &l) in l_tuple.iter().enumerate() {
        let h = scaled_hermite_exact(l, &lam);
        let x = ZonePoly::real_coordinate(planes, i);
        let mut acc = ZonePoly::zero(planes);
        for c in h.coeffs().iter().rev() {
            acc = &(&acc * &x) + &ZonePoly::constant(planes, crat_real(c.clone()));
        }
        out = &out * &acc;
    }
    Ok(out)
}

/// Groups monomials by `m = |α| - |β|`.
pub fn split_by_magnetic(hp: &ZonePoly) -> BTreeMap<i64, ZonePoly> {
    let mut out: BTreeMap<i64, ZonePoly> = BTreeMap::new();
    for (h, a, c) in hp.terms() {
        let m = h.iter().sum::<u32>() as i64 - a.iter().sum::<u32>() as i64;
        out.entry(m)
            .or_insert_with(|| ZonePoly::zero(hp.planes()))
            .add_term(h, a, c.clone());
    }
    out
}

fn d_dz(p: &ZonePoly, j: usize, anti: bool) -> ZonePoly {
    p.map_monomials(|h, a| {
        let e = if anti { a[j] } else { h[j] };
        if e == 0 {
            return vec![];
        }
        let (mut h2, mut a2) = (h.to_vec(), a.to_vec());
        if anti {
            a2[j] -= 1;
        } else {
            h2[j] -= 1;
        }
        vec![(h2, a2, crat_real(rat_int(e as i64)))]
    })
}

/// `iλ∂_θ` with `∂_θ = i Σ_j (z_j ∂_{z_j} - z̄_j ∂_{z̄_j})`, applied by
/// differentiation and multiplication.
pub fn apply_angular(p: &ZonePoly, lambda: &Rational) -> ZonePoly {
    let n = p.planes();
    let mut euler = ZonePoly::zero(n);
    for j in 0..n {
        let holo = &ZonePoly::z(n, j) * &d_dz(p, j, false);
        let anti = &ZonePoly::zbar(n, j) * &d_dz(p, j, true);
        euler = &euler + &(&holo - &anti);
    }
    // iλ · i · euler = -λ · euler
    euler.scale(&crat_real(-lambda.clone()))
}

fn invert(mut m: Vec<Vec<Rational>>) -> Option<Vec<Vec<Rational>>> {
    let n = m.len();
    let mut inv: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        Rational::one()
                    } else {
                        Rational::zero()
                    }
                })
                .collect()
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, piv);
        inv.swap(col, piv);
        let d = m[col][col].clone();
        for j in 0..n {
            m[col][j] = &m[col][j] / &d;
            inv[col][j] = &inv[col][j] / &d;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for j in 0..n {
                    let (a, b) = (&m[col][j] * &f, &inv[col][j] * &f);
                    m[r][j] -= a;
                    inv[r][j] -= b;
                }
            }
        }
    }
    Some(inv)
}

/// Recovers the magnetic components of an order-`l` eigenfunction from the
/// powers `(iλ∂_θ)^i hp`, `i = 0..=l`, by inverting the Vandermonde matrix
/// with nodes `-(2p-l)λ`, `p = 0..=l`. Zero components are omitted.
pub fn vandermonde_split(
    hp: &ZonePoly,
    l: usize,
    params: &MagneticParams,
) -> Result<BTreeMap<i64, ZonePoly>> {
    let lam = single_lambda(params)?;
    let nodes: Vec<Rational> = (0..=l as i64)
        .map(|p| -rat_int(2 * p - l as i64) * &lam)
        .collect();
    let v: Vec<Vec<Rational>> = (0..=l)
        .map(|i| {
            nodes
                .iter()
                .map(|x| crate::core_math::exact::rat_powi(x, i as i64))
                .collect()
        })
        .collect();
    let inv = invert(v).expect("Vandermonde matrix with distinct nodes is invertible");
    let mut powers = vec![hp.clone()];
    for _ in 0..l {
        let next = apply_angular(powers.last().expect("non-empty"), &lam);
        powers.push(next);
    }
    let mut out = BTreeMap::new();
    for (p, row) in inv.iter().enumerate().take(l + 1) {
        let mut comp = ZonePoly::zero(hp.planes());
        for (d, coeff) in powers.iter().zip(row) {
            comp = &comp + &d.scale(&crat_real(coeff.clone()));
        }
        if !comp.is_zero() {
            out.insert(2 * p as i64 - l as i64, comp);
        }
    }
    Ok(out)
}

/// One magnetic component of a Hermite-product eigenfunction.
#[derive(Clone, Debug, PartialEq)]
pub struct EigenComponent {
    pub m: i64,
    pub p: u64,
    pub upsilon: u64,
    pub poly: ZonePoly,
    /// Box eigenvalue for this component.
    pub eigenvalue: Rational,
}

/// Components of the eigenfunction with Hermite orders `l_tuple`, each with
/// its Box eigenvalue for holomorphic degree `p = (l + m)/2`.
pub fn eigen_components(
    l_tuple: &[usize],
    params: &MagneticParams,
    field_constant: f64,
) -> Result<Vec<EigenComponent>> {
    let hp = build_eigenfunction(l_tuple, params)?;
    let l: usize = l_tuple.iter().sum();
    let variant = HamiltonianVariant {
        kind: HamiltonianKind::BoxLaplacian,
        field_constant,
    };
    split_by_magnetic(&hp)
        .into_iter()
        .map(|(m, poly)| {
            let p = ((l as i64 + m) / 2) as u64;
            Ok(EigenComponent {
                m,
                p,
                upsilon: super::levels::zone_of(l as u64, m)?,
                eigenvalue: eigenvalue_exact(&[p], params, &variant)?,
                poly,
            })
        })
        .collect()
}

/// `apply_box(φ) - μ φ` for every component; all zero iff the eigen-relation
/// holds exactly.
pub fn eigen_residuals(
    l_tuple: &[usize],
    params: &MagneticParams,
    field_constant: f64,
) -> Result<Vec<ZonePoly>> {
    let cf = rat_from_f64(field_constant);
    eigen_components(l_tuple, params, field_constant)?
        .into_iter()
        .map(|c| {
            let image = apply_box(&c.poly, params, &cf)?;
            Ok(&image - &c.poly.scale(&crat_real(c.eigenvalue)))
        })
        .collect()
}

/// All `l`-tuples of length `k` with total order `≤ max_order`.
pub fn order_tuples(k: usize, max_order: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..k {
        let mut next = Vec::new();
        for t in &out {
            let used: usize = t.iter().sum();
            for v in 0..=max_order - used {
                let mut u = t.clone();
                u.push(v);
                next.push(u);
            }
        }
        out = next;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::core_math::exact::crat;
    use crate::core_math::poly::eta_inner;

    fn p(lambda: f64, k: usize) -> MagneticParams {
        MagneticParams::single(lambda, k).unwrap()
    }

    #[test]
    fn build_examples() {
        let one = build_eigenfunction(&[0, 0], &p(1.0, 2)).unwrap();
        assert_eq!(one, ZonePoly::constant(1, CRational::one()));
        let h10 = build_eigenfunction(&[1, 0], &p(1.0, 2)).unwrap();
        assert_eq!(h10, &ZonePoly::z(1, 0) + &ZonePoly::zbar(1, 0));
        let h11 = build_eigenfunction(&[1, 1], &p(1.0, 2)).unwrap();
        let expect = (&ZonePoly::z(1, 0).pow(2) - &ZonePoly::zbar(1, 0).pow(2))
            .scale(&crat(rat_int(0), rat_int(-1)));
        assert_eq!(h11, expect);
        let parts = split_by_magnetic(&h11);
        assert_eq!(parts.keys().copied().collect::<Vec<_>>(), vec![-2, 2]);
        assert!(build_eigenfunction(
            &[1, 0],
            &MagneticParams::new(vec![
                crate::Block { lambda: 1.0, k: 2 },
                crate::Block { lambda: 2.0, k: 2 }
            ])
            .unwrap()
        )
        .is_err());
    }

    #[test]
    fn trivial_splits() {
        let zz = &ZonePoly::z(1, 0) * &ZonePoly::zbar(1, 0);
        assert_eq!(
            split_by_magnetic(&zz).keys().copied().collect::<Vec<_>>(),
            vec![0]
        );
        let z3 = ZonePoly::z(1, 0).pow(3);
        assert_eq!(
            split_by_magnetic(&z3).keys().copied().collect::<Vec<_>>(),
            vec![3]
        );
        let params = p(1.0, 2);
        assert_eq!(
            vandermonde_split(&z3, 3, &params).unwrap(),
            split_by_magnetic(&z3)
        );
        assert_eq!(
            vandermonde_split(&zz, 2, &params).unwrap(),
            split_by_magnetic(&zz)
        );
    }

    #[test]
    fn eigen_oracle_and_orthogonality() {
        for &(lambda, k) in &[(1.0, 2), (2.0, 2), (1.0, 4), (2.0, 4)] {
            let params = p(lambda, k);
            let lam = rat_from_f64(lambda);
            for t in order_tuples(k, 4) {
                for r in eigen_residuals(&t, &params, 2.0 * lambda * lambda * k as f64).unwrap() {
                    assert!(r.is_zero(), "l={t:?} λ={lambda}");
                }
                let hp = build_eigenfunction(&t, &params).unwrap();
                let l = t.iter().sum();
                let a = split_by_magnetic(&hp);
                assert_eq!(vandermonde_split(&hp, l, &params).unwrap(), a);
                let comps: Vec<_> = a.values().collect();
                for i in 0..comps.len() {
                    for j in i + 1..comps.len() {
                        assert!(eta_inner(comps[i], comps[j], &lam).re.is_zero());
                        assert!(eta_inner(comps[i], comps[j], &lam).im.is_zero());
                    }
                }
            }
        }
    }
}
