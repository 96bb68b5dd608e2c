//! Physicists' Hermite polynomials `H_l`.

use super::exact::{factorial, rat_powi};
use super::poly::UniPoly;
use crate::Rational;
use num_bigint::BigInt;
use num_traits::{FromPrimitive, Num};

/// `H_l(x)` by `H_{n+1} = 2x H_n - 2n H_{n-1}`.
pub fn hermite<T: Num + Clone + FromPrimitive>(l: usize, x: T) -> T {
    let c = |v: i64| T::from_i64(v).expect("small integer");
    let mut prev = T::one();
    if l == 0 {
        return prev;
    }
    let mut cur = c(2) * x.clone();
    for n in 1..l as i64 {
        let next = c(2) * x.clone() * cur.clone() - c(2 * n) * prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Exact `H_l(x) = Σ_j (-1)^j l!/(j!(l-2j)!) (2x)^{l-2j}`.
pub fn hermite_exact(l: usize) -> UniPoly {
    scaled_hermite_exact(l, &Rational::from_integer(1.into()))
}

/// `λ^{-l/2} H_l(√λ x)`, which has rational coefficients for rational `λ`:
/// `Σ_j (-1)^j l!/(j!(l-2j)!) 2^{l-2j} λ^{-j} x^{l-2j}`.
pub fn scaled_hermite_exact(l: usize, lambda: &Rational) -> UniPoly {
    let mut c = vec![Rational::from_integer(0.into()); l + 1];
    for j in 0..=l / 2 {
        let sign = if j % 2 == 0 { 1 } else { -1 };
        let num = factorial(l as u64) * BigInt::from(sign) * (BigInt::from(1) << (l - 2 * j));
        let den = factorial(j as u64) * factorial((l - 2 * j) as u64);
        c[l - 2 * j] = Rational::new(num, den) * rat_powi(lambda, -(j as i64));
    }
    UniPoly::new(c)
}
