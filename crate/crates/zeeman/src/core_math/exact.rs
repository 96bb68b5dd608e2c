//! Small exact-arithmetic helpers shared by the rational oracles.

use crate::{CRational, Rational};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// Generalised binomial coefficient `C(top, k)` for any integer `top`.
pub fn binomial(top: i64, k: u64) -> BigInt {
    let mut num = BigInt::one();
    for i in 0..k as i64 {
        num *= BigInt::from(top - i);
    }
    num / factorial(k)
}

/// Binomial coefficient as `u128` for small non-negative arguments.
pub fn binomial_u128(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Exact rational value of a finite binary64 number.
pub fn rat_from_f64(x: f64) -> Rational {
    Rational::from_float(x).expect("finite float")
}

pub fn rat_to_f64(x: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    x.to_f64().unwrap_or_else(|| {
        // Fallback for huge numerators/denominators: scale by powers of two.
        let n = x.numer().bits() as i64;
        let d = x.denom().bits() as i64;
        let shift = n - d;
        let scaled = if shift > 0 {
            x / Rational::from_integer(BigInt::one() << shift as usize)
        } else {
            x * Rational::from_integer(BigInt::one() << (-shift) as usize)
        };
        scaled.to_f64().unwrap_or(f64::NAN) * 2f64.powi(shift as i32)
    })
}

pub fn crat(re: Rational, im: Rational) -> CRational {
    CRational::new(re, im)
}

pub fn crat_real(re: Rational) -> CRational {
    CRational::new(re, Rational::zero())
}

pub fn crat_is_zero(c: &CRational) -> bool {
    c.re.is_zero() && c.im.is_zero()
}

/// `|x|` for rationals, used in diagnostics.
pub fn rat_abs(x: &Rational) -> Rational {
    x.abs()
}

/// Integer power of a rational, negative exponents allowed.
pub fn rat_powi(x: &Rational, e: i64) -> Rational {
    let mut acc = Rational::one();
    for _ in 0..e.unsigned_abs() {
        acc *= x;
    }
    if e < 0 {
        acc.recip()
    } else {
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(-1, 0), BigInt::from(1));
        assert_eq!(binomial(-1, 3), BigInt::from(-1));
        assert_eq!(binomial_u128(6, 3), 20);
        assert_eq!(binomial_u128(2, 3), 0);
    }

    #[test]
    fn float_round_trip() {
        for x in [0.1, 2.0, 1e-300, 3.25e10] {
            assert_eq!(rat_to_f64(&rat_from_f64(x)), x);
        }
    }
}
