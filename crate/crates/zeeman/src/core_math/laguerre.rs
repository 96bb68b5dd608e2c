//! Generalised Laguerre polynomials `L_n^{(α)}`.

use super::exact::{binomial, factorial};
use super::poly::UniPoly;
use crate::Rational;
use num_traits::{FromPrimitive, Num};

/// `L_n^{(α)}(t)` by the three-term recurrence
/// `(a+1) L_{a+1} = (2a+α+1-t) L_a - (a+α) L_{a-1}`, seeded with
/// `L_0 = 1`, `L_1 = α+1-t`. Generic over any field-like scalar, so it runs
/// on `f32`, `f64` and exact rationals alike.
pub fn laguerre<T: Num + Clone + FromPrimitive>(alpha: i64, n: usize, t: T) -> T {
    let c = |v: i64| T::from_i64(v).expect("small integer");
    let mut prev = T::one();
    if n == 0 {
        return prev;
    }
    let mut cur = c(alpha + 1) - t.clone();
    for a in 1..n as i64 {
        let next =
            ((c(2 * a + alpha + 1) - t.clone()) * cur.clone() - c(a + alpha) * prev) / c(a + 1);
        prev = cur;
        cur = next;
    }
    cur
}

/// Exact coefficients `Σ_b C(n+α, n-b) (-t)^b / b!`.
pub fn laguerre_exact(alpha: i64, n: usize) -> UniPoly {
    let n64 = n as i64;
    UniPoly::new(
        (0..=n as u64)
            .map(|b| {
                let sign = if b % 2 == 0 { 1 } else { -1 };
                Rational::new(binomial(n64 + alpha, n as u64 - b) * sign, factorial(b))
            })
            .collect(),
    )
}

/// The three-term recurrence with `a L_{a-1}` in place of `(a+α) L_{a-1}`.
/// Only kept so the harness can report where it departs from the explicit
/// form.
pub fn laguerre_unshifted_recurrence(alpha: i64, n: usize) -> UniPoly {
    let t = UniPoly::new(vec![
        Rational::from_integer(0.into()),
        Rational::from_integer(1.into()),
    ]);
    let c = |v: i64| UniPoly::constant(Rational::from_integer(v.into()));
    let mut prev = UniPoly::one();
    if n == 0 {
        return prev;
    }
    let mut cur = &c(alpha + 1) - &t;
    for a in 1..n as i64 {
        let lhs = &(&(&c(2 * a + alpha + 1) - &t) * &cur) - &(&c(a) * &prev);
        let next = lhs.scale(&Rational::new(1.into(), (a + 1).into()));
        prev = cur;
        cur = next;
    }
    cur
}

#[cfg(test)]
mod tests {
    use super::super::exact::{rat, rat_int};
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn examples() {
        for t in [-1.0, 0.0, 0.3, 2.5] {
            assert!((laguerre(0, 1, t) - (1.0f64 - t)).abs() < 1e-15);
        }
        assert_eq!(laguerre(0, 2, 0.0), 1.0);
        assert!((laguerre(0, 2, 1.0f64) - (-0.5)).abs() < 1e-15);
        assert_eq!(laguerre_exact(0, 0), UniPoly::one());
        assert_eq!(
            laguerre_exact(0, 2),
            UniPoly::new(vec![rat_int(1), rat_int(-2), rat(1, 2)])
        );
    }

    #[test]
    fn exact_alpha1_n3_independent_sum() {
        // L_3^{(1)}(t) = 4 - 6t + 2t^2 - t^3/6, summed by hand from the binomials
        // C(4,3)=4, C(4,2)=6, C(4,1)=4 → 4/2, C(4,0)=1 → 1/6.
        let expect = UniPoly::new(vec![rat_int(4), rat_int(-6), rat_int(2), rat(-1, 6)]);
        assert_eq!(laguerre_exact(1, 3), expect);
    }

    #[test]
    fn recurrence_runs_on_rationals() {
        for alpha in 0..4 {
            for n in 0..9 {
                let t = rat(7, 3);
                assert_eq!(
                    laguerre(alpha, n, t.clone()),
                    laguerre_exact(alpha, n).eval(&t)
                );
            }
        }
    }

    #[test]
    fn unshifted_recurrence_agrees_only_for_alpha_zero() {
        for n in 0..9 {
            assert_eq!(laguerre_unshifted_recurrence(0, n), laguerre_exact(0, n));
        }
        assert_ne!(laguerre_unshifted_recurrence(1, 2), laguerre_exact(1, 2));
    }

    proptest! {
        #[test]
        fn f64_matches_exact(alpha in 0i64..5, n in 0usize..13, t in -2.0..10.0f64) {
            let v = laguerre(alpha, n, t);
            let e = laguerre_exact(alpha, n).eval_real(t);
            prop_assert!((v - e).abs() <= 1e-10 * (1.0 + e.abs()));
        }
    }
}
