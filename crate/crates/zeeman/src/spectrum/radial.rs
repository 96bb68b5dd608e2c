//! Radial reduction: eigenfunctions `ρ(z, z̄) u(|X|²) e^{-λ|X|²/2}` with `ρ`
//! harmonic of bidegree `(p̃, q̃)`, `l̃ = p̃ + q̃`.

use crate::core_math::exact::rat_int;
use crate::core_math::poly::UniPoly;
use crate::{Error, Rational, Result};
use num_traits::Zero;

/// Monic degree-`n` polynomial `u(t) = Σ_i a_i t^{n-i}`, `a_0 = 1`, built from
/// `a_i = -a_{i-1} (n-i+1)(n + l̃ + k/2 - i) / i`. It is proportional to
/// `L_n^{(k/2 + l̃ - 1)}(t)`; the `λ`-dependence enters as `u(λt)`.
pub fn radial_eigenpoly(n: usize, l_tilde: usize, k: usize) -> UniPoly {
    let half_k = (k / 2) as i64;
    let mut c = vec![Rational::zero(); n + 1];
    c[n] = rat_int(1);
    let (n_, lt) = (n as i64, l_tilde as i64);
    for i in 1..=n_ {
        let prev = c[(n_ - i + 1) as usize].clone();
        c[(n_ - i) as usize] =
            -prev * rat_int(n_ - i + 1) * rat_int(n_ + lt + half_k - i) / rat_int(i);
    }
    UniPoly::new(c)
}

/// The coefficient recursion `a_i = -a_{i-1}(n-i)(n+l̃+k/2+1-i)/n`.
/// Kept for reporting; for `n ≥ 1` it yields `a_n = 0`.
pub fn radial_eigenpoly_by_recursion(n: usize, l_tilde: usize, k: usize) -> UniPoly {
    let half_k = (k / 2) as i64;
    let mut c = vec![Rational::zero(); n + 1];
    c[n] = rat_int(1);
    let (n_, lt) = (n as i64, l_tilde as i64);
    for i in 1..=n_ {
        let prev = c[(n_ - i + 1) as usize].clone();
        c[(n_ - i) as usize] =
            -prev * rat_int(n_ - i) * rat_int(n_ + lt + half_k + 1 - i) / rat_int(n_);
    }
    UniPoly::new(c)
}

/// `P u = 4t u'' + (2k + 4l̃ - 4λt) u' - ((4p̃ + k)λ + 2c_f) u`, the action of
/// Box on `ρ u(|X|²)` divided by `ρ`.
pub fn radial_operator(
    u: &UniPoly,
    l_tilde: usize,
    p_tilde: usize,
    k: usize,
    lambda: &Rational,
    field_constant: &Rational,
) -> UniPoly {
    let t = UniPoly::monomial(rat_int(1), 1);
    let d1 = u.derivative();
    let d2 = d1.derivative();
    let first = (&t * &d2).scale(&rat_int(4));
    let coef = &UniPoly::constant(rat_int(2 * k as i64 + 4 * l_tilde as i64))
        - &t.scale(&(rat_int(4) * lambda));
    let second = &coef * &d1;
    let shift = rat_int(4 * p_tilde as i64 + k as i64) * lambda + field_constant * rat_int(2);
    &(&first + &second) - &u.scale(&shift)
}

/// Box eigenvalue `-((4n + 4p̃ + k)λ + 2c_f)` of the radial solution.
pub fn radial_eigenvalue(
    n: usize,
    p_tilde: usize,
    k: usize,
    lambda: &Rational,
    field_constant: &Rational,
) -> Rational {
    -(rat_int(4 * (n + p_tilde) as i64 + k as i64) * lambda + field_constant * rat_int(2))
}

/// Splits `(l̃, m)` into `(p̃, q̃)`.
pub fn harmonic_bidegree(l_tilde: usize, m: i64) -> Result<(usize, usize)> {
    let l = l_tilde as i64;
    if m.abs() > l || (l + m) % 2 != 0 {
        return Err(Error::Domain(format!("invalid (l̃, m) = ({l_tilde}, {m})")));
    }
    Ok((((l + m) / 2) as usize, ((l - m) / 2) as usize))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::core_math::boxop::apply_box;
    use crate::core_math::exact::crat_real;
    use crate::core_math::laguerre::laguerre_exact;
    use crate::core_math::poly::ZonePoly;
    use crate::MagneticParams;

    fn proportional(a: &UniPoly, b: &UniPoly) -> bool {
        let r = a.leading() / b.leading();
        (a - &b.scale(&r)).is_zero()
    }

    #[test]
    fn matches_laguerre() {
        assert_eq!(radial_eigenpoly(0, 2, 4), UniPoly::one());
        for k in [2usize, 4] {
            for lt in 0..=3 {
                for n in 0..=6 {
                    let u = radial_eigenpoly(n, lt, k);
                    assert_eq!(u.leading(), rat_int(1));
                    assert!(proportional(
                        &u,
                        &laguerre_exact((k / 2 + lt) as i64 - 1, n)
                    ));
                }
            }
        }
    }

    #[test]
    fn coefficient_recursion_degenerates() {
        // n = 1: the recursion gives u = t, which is not ∝ L_1.
        let u = radial_eigenpoly_by_recursion(1, 0, 2);
        assert_eq!(u, UniPoly::monomial(rat_int(1), 1));
        assert!(!proportional(&u, &laguerre_exact(0, 1)));
    }

    #[test]
    fn operator_eigen_relation() {
        for lam in [rat_int(1), rat_int(2), Rational::new(1.into(), 2.into())] {
            for k in [2usize, 4] {
                for lt in 0..=3 {
                    for pt in 0..=lt {
                        for n in 0..=5 {
                            let u = radial_eigenpoly(n, lt, k).rescale(&lam);
                            let cf = rat_int(3);
                            let pu = radial_operator(&u, lt, pt, k, &lam, &cf);
                            let mu = radial_eigenvalue(n, pt, k, &lam, &cf);
                            assert!((&pu - &u.scale(&mu)).is_zero());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn operator_matches_box_on_harmonic_times_radial() {
        // k = 4, ρ = z_1 z̄_2 (harmonic, p̃ = q̃ = 1), λ = 2
        let params = MagneticParams::single(2.0, 4).unwrap();
        let lam = rat_int(2);
        let cf = rat_int(1);
        let rho = &ZonePoly::z(2, 0) * &ZonePoly::zbar(2, 1);
        let r2 = &(&ZonePoly::z(2, 0) * &ZonePoly::zbar(2, 0))
            + &(&ZonePoly::z(2, 1) * &ZonePoly::zbar(2, 1));
        let lift = |u: &UniPoly| {
            let mut acc = ZonePoly::zero(2);
            for c in u.coeffs().iter().rev() {
                acc = &(&acc * &r2) + &ZonePoly::constant(2, crat_real(c.clone()));
            }
            &rho * &acc
        };
        let u = UniPoly::new(vec![rat_int(3), rat_int(-1), rat_int(5)]);
        let lhs = apply_box(&lift(&u), &params, &cf).unwrap();
        let rhs = lift(&radial_operator(&u, 2, 1, 4, &lam, &cf));
        assert_eq!(lhs, rhs);
        assert_eq!(harmonic_bidegree(2, 0).unwrap(), (1, 1));
        assert!(harmonic_bidegree(2, 1).is_err());
    }
}
