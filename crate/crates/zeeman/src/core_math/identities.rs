//! Exact checks of the Laguerre identities. Each function returns the
//! residual polynomial(s); an identity holds iff every residual is zero.

use super::exact::{binomial, factorial, rat_int};
use super::laguerre::{laguerre, laguerre_exact};
use super::poly::{MultiPoly, UniPoly};
use crate::Rational;
use num_traits::Signed;

fn t_poly() -> UniPoly {
    UniPoly::monomial(rat_int(1), 1)
}

fn lag(alpha: i64, n: i64) -> UniPoly {
    if n < 0 {
        UniPoly::zero()
    } else {
        laguerre_exact(alpha, n as usize)
    }
}

/// Largest absolute coefficient, as `f64`, of a residual.
pub fn max_abs(p: &UniPoly) -> f64 {
    p.coeffs()
        .iter()
        .map(|c| super::exact::rat_to_f64(&c.abs()))
        .fold(0.0, f64::max)
}

pub fn max_abs_multi(p: &MultiPoly<Rational>) -> f64 {
    p.terms()
        .map(|(_, c)| super::exact::rat_to_f64(&c.abs()))
        .fold(0.0, f64::max)
}

/// `(a+1)L_{a+1} - (2a+α+1-t)L_a + (a+α)L_{a-1}` for `a = 1..n-1`, plus the
/// difference between the recurrence evaluated in rationals and the explicit
/// form at a few rational points.
pub fn recurrence_residual(alpha: i64, n: usize) -> f64 {
    let mut worst: f64 = 0.0;
    for a in 1..n as i64 {
        let lhs = lag(alpha, a + 1).scale(&rat_int(a + 1));
        let mid = &(&UniPoly::constant(rat_int(2 * a + alpha + 1)) - &t_poly()) * &lag(alpha, a);
        let last = lag(alpha, a - 1).scale(&rat_int(a + alpha));
        worst = worst.max(max_abs(&(&(&lhs - &mid) + &last)));
    }
    for t in [
        Rational::new(1.into(), 3.into()),
        rat_int(2),
        Rational::new((-5).into(), 2.into()),
    ] {
        let d = laguerre(alpha, n, t.clone()) - laguerre_exact(alpha, n).eval(&t);
        worst = worst.max(super::exact::rat_to_f64(&d.abs()));
    }
    worst
}

/// `Σ_{b≤a} L_b^{(α)} - L_a^{(α+1)}`.
pub fn sum_identity_residual(alpha: i64, a: usize) -> f64 {
    let mut s = UniPoly::zero();
    for b in 0..=a as i64 {
        s = &s + &lag(alpha, b);
    }
    max_abs(&(&s - &lag(alpha + 1, a as i64)))
}

/// `∂_t L_a^{(α)} + L_{a-1}^{(α+1)}`.
pub fn derivative_identity_residual(alpha: i64, a: usize) -> f64 {
    max_abs(&(&lag(alpha, a as i64).derivative() + &lag(alpha + 1, a as i64 - 1)))
}

/// `t L_a' - a L_a + (a+α) L_{a-1}`.
pub fn rec3_residual(alpha: i64, a: usize) -> f64 {
    let a = a as i64;
    let lhs = &t_poly() * &lag(alpha, a).derivative();
    let rhs = &lag(alpha, a).scale(&rat_int(a)) - &lag(alpha, a - 1).scale(&rat_int(a + alpha));
    max_abs(&(&lhs - &rhs))
}

/// `t^α L_a^{(α)} - (1/a!) Σ_j C(a,j) (-1)^{a-j} ∂^j t^{a+α}`, i.e. the
/// Rodrigues formula after cancelling the common factor `e^{-t}`.
pub fn rodrigues_residual(alpha: i64, a: usize) -> f64 {
    assert!(alpha >= 0);
    let lhs = &UniPoly::monomial(rat_int(1), alpha as usize) * &lag(alpha, a as i64);
    let mut rhs = UniPoly::zero();
    for j in 0..=a as u64 {
        let mut d = UniPoly::monomial(rat_int(1), a + alpha as usize);
        for _ in 0..j {
            d = d.derivative();
        }
        let sign = if (a as u64 - j).is_multiple_of(2) {
            1
        } else {
            -1
        };
        let c = Rational::from_integer(binomial(a as i64, j) * sign);
        rhs = &rhs + &d.scale(&c);
    }
    let rhs = rhs.scale(&Rational::new(1.into(), factorial(a as u64)));
    max_abs(&(&lhs - &rhs))
}

/// `t u'' + (α+1-t) u' + n u` for `u = L_n^{(α)}`.
pub fn eigen_residual(alpha: i64, n: usize) -> f64 {
    let u = lag(alpha, n as i64);
    let d1 = u.derivative();
    let d2 = d1.derivative();
    let r = &(&(&t_poly() * &d2) + &(&(&UniPoly::constant(rat_int(alpha + 1)) - &t_poly()) * &d1))
        + &u.scale(&rat_int(n as i64));
    max_abs(&r)
}

fn compositions(n: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 1 {
        return vec![vec![n]];
    }
    let mut out = Vec::new();
    for first in 0..=n {
        for mut rest in compositions(n - first, parts - 1) {
            let mut v = vec![first];
            v.append(&mut rest);
            out.push(v);
        }
    }
    out
}

/// `L_n^{(α)}(t_1+…+t_{α+1}) - Σ_{a_1+…=n} Π L_{a_j}^{(0)}(t_j)` in `α+1`
/// variables.
pub fn composition_residual(alpha: i64, n: usize) -> f64 {
    let m = alpha as usize + 1;
    let mut sum_vars = MultiPoly::<Rational>::zero(m);
    for j in 0..m {
        sum_vars = &sum_vars + &MultiPoly::var(m, j);
    }
    let lhs = MultiPoly::compose_univariate(&lag(alpha, n as i64), &sum_vars);
    let mut rhs = MultiPoly::zero(m);
    for comp in compositions(n, m) {
        let mut term = MultiPoly::constant(m, rat_int(1));
        for (j, &aj) in comp.iter().enumerate() {
            term = &term * &MultiPoly::from_univariate(m, j, &lag(0, aj as i64));
        }
        rhs = &rhs + &term;
    }
    max_abs_multi(&(&lhs - &rhs))
}

/// `L_n^{(α+1)}(t_1+t_2) - Σ_a L_a^{(0)}(t_1) L_{n-a}^{(α)}(t_2)`.
pub fn simple_composition_residual(alpha: i64, n: usize) -> f64 {
    let s = &MultiPoly::<Rational>::var(2, 0) + &MultiPoly::var(2, 1);
    let lhs = MultiPoly::compose_univariate(&lag(alpha + 1, n as i64), &s);
    let mut rhs = MultiPoly::zero(2);
    for a in 0..=n as i64 {
        let p = &MultiPoly::from_univariate(2, 0, &lag(0, a))
            * &MultiPoly::from_univariate(2, 1, &lag(alpha, n as i64 - a));
        rhs = &rhs + &p;
    }
    max_abs_multi(&(&lhs - &rhs))
}

/// Residual of the unshifted recurrence (`a L_{a-1}` in the last term)
/// against the explicit form. Zero only for `α = 0`.
pub fn unshifted_recurrence_residual(alpha: i64, n: usize) -> f64 {
    let p = super::laguerre::laguerre_unshifted_recurrence(alpha, n);
    let d = &p - &laguerre_exact(alpha, n);
    if d.is_zero() {
        0.0
    } else {
        max_abs(&d)
    }
}
