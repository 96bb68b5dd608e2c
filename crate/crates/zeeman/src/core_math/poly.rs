//! Exact polynomial algebra over rationals and Gaussian rationals.

use super::exact::{crat_is_zero, rat_to_f64};
use crate::{CRational, Cx, Rational, Real};
use num_bigint::BigInt;
use num_traits::{Num, One, Zero};
use serde::{Deserialize, Serialize};
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

/// Univariate polynomial with rational coefficients, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: vec![] }
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    /// `c t^deg`.
    pub fn monomial(c: Rational, deg: usize) -> Self {
        let mut v = vec![Rational::zero(); deg + 1];
        v[deg] = c;
        Self::new(v)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, a)| a * Rational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    /// `u(c t)`.
    pub fn rescale(&self, c: &Rational) -> Self {
        let mut pw = Rational::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            out.push(a * &pw);
            pw *= c;
        }
        Self::new(out)
    }

    pub fn eval(&self, t: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, a| acc * t + a)
    }

    pub fn eval_real<T: Real>(&self, t: T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, a| acc * t + T::lit(rat_to_f64(a)))
    }

    /// Leading coefficient, zero for the zero polynomial.
    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, o: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        UniPoly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, o: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        UniPoly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, o: &UniPoly) -> UniPoly {
        if self.is_zero() || o.is_zero() {
            return UniPoly::zero();
        }
        let mut v = vec![Rational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        UniPoly::new(v)
    }
}

/// Sparse multivariate polynomial over a commutative coefficient ring.
#[derive(Clone, Debug, PartialEq)]
pub struct MultiPoly<C> {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, C>,
}

impl<C: Clone + Num> MultiPoly<C> {
    pub fn zero(nvars: usize) -> Self {
        Self {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: C) -> Self {
        Self::monomial(nvars, vec![0; nvars], c)
    }

    pub fn monomial(nvars: usize, exps: Vec<u32>, c: C) -> Self {
        assert_eq!(exps.len(), nvars);
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(exps, c);
        }
        p
    }

    /// The variable `x_i`.
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(nvars, e, C::one())
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &C)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, exps: Vec<u32>, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            Entry::Occupied(mut o) => {
                let v = o.get().clone() + c;
                if v.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = v;
                }
            }
            Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, v) in &self.terms {
            out.add_term(e.clone(), v.clone() * c.clone());
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::constant(self.nvars, C::one());
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Maps every monomial through `f`, which may rename or re-weight it.
    pub fn map_terms(
        &self,
        nvars: usize,
        mut f: impl FnMut(&[u32], &C) -> Option<(Vec<u32>, C)>,
    ) -> Self {
        let mut out = Self::zero(nvars);
        for (e, v) in &self.terms {
            if let Some((e2, v2)) = f(e, v) {
                out.add_term(e2, v2);
            }
        }
        out
    }

    /// Embeds a univariate rational polynomial as a polynomial in `x_var`.
    pub fn from_univariate(nvars: usize, var: usize, p: &UniPoly) -> Self
    where
        C: From<Rational>,
    {
        let mut out = Self::zero(nvars);
        for (i, a) in p.coeffs().iter().enumerate() {
            let mut e = vec![0; nvars];
            e[var] = i as u32;
            out.add_term(e, C::from(a.clone()));
        }
        out
    }

    /// Substitutes the polynomial `q` for the single variable of `p`.
    pub fn compose_univariate(p: &UniPoly, q: &Self) -> Self
    where
        C: From<Rational>,
    {
        let mut acc = Self::zero(q.nvars);
        for a in p.coeffs().iter().rev() {
            acc = &(&acc * q) + &Self::constant(q.nvars, C::from(a.clone()));
        }
        acc
    }
}

impl<C: Clone + Num> Add for &MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn add(self, o: &MultiPoly<C>) -> MultiPoly<C> {
        let mut out = self.clone();
        for (e, v) in &o.terms {
            out.add_term(e.clone(), v.clone());
        }
        out
    }
}

impl<C: Clone + Num + Neg<Output = C>> Sub for &MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn sub(self, o: &MultiPoly<C>) -> MultiPoly<C> {
        let mut out = self.clone();
        for (e, v) in &o.terms {
            out.add_term(e.clone(), -v.clone());
        }
        out
    }
}

impl<C: Clone + Num> Mul for &MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn mul(self, o: &MultiPoly<C>) -> MultiPoly<C> {
        assert_eq!(self.nvars, o.nvars);
        let mut out = MultiPoly::zero(self.nvars);
        for (e1, v1) in &self.terms {
            for (e2, v2) in &o.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, v1.clone() * v2.clone());
            }
        }
        out
    }
}

/// Polynomial in `z_1..z_n, z̄_1..z̄_n` (`n = k/2` complex planes) with
/// Gaussian-rational coefficients. `z_j = x_{2j} + i x_{2j+1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct ZonePoly {
    planes: usize,
    poly: MultiPoly<CRational>,
}

impl ZonePoly {
    pub fn zero(planes: usize) -> Self {
        Self {
            planes,
            poly: MultiPoly::zero(2 * planes),
        }
    }

    pub fn constant(planes: usize, c: CRational) -> Self {
        Self {
            planes,
            poly: MultiPoly::constant(2 * planes, c),
        }
    }

    /// `c z^holo z̄^anti`.
    pub fn monomial(holo: &[u32], anti: &[u32], c: CRational) -> Self {
        assert_eq!(holo.len(), anti.len());
        let planes = holo.len();
        let mut e = holo.to_vec();
        e.extend_from_slice(anti);
        Self {
            planes,
            poly: MultiPoly::monomial(2 * planes, e, c),
        }
    }

    pub fn z(planes: usize, j: usize) -> Self {
        Self {
            planes,
            poly: MultiPoly::var(2 * planes, j),
        }
    }

    pub fn zbar(planes: usize, j: usize) -> Self {
        Self {
            planes,
            poly: MultiPoly::var(2 * planes, planes + j),
        }
    }

    /// Real coordinate `x_{2j}` = (z_j + z̄_j)/2 or `x_{2j+1}` = (z_j - z̄_j)/(2i).
    pub fn real_coordinate(planes: usize, coord: usize) -> Self {
        let j = coord / 2;
        let half = Rational::new(1.into(), 2.into());
        let (a, b) = if coord.is_multiple_of(2) {
            (
                CRational::new(half.clone(), Rational::zero()),
                CRational::new(half, Rational::zero()),
            )
        } else {
            // 1/(2i) = -i/2
            (
                CRational::new(Rational::zero(), -half.clone()),
                CRational::new(Rational::zero(), half),
            )
        };
        &Self::z(planes, j).scale(&a) + &Self::zbar(planes, j).scale(&b)
    }

    pub fn planes(&self) -> usize {
        self.planes
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn len(&self) -> usize {
        self.poly.len()
    }

    pub fn is_empty(&self) -> bool {
        self.poly.is_empty()
    }

    /// Terms as `(holo exponents, anti exponents, coefficient)`.
    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &[u32], &CRational)> {
        let n = self.planes;
        self.poly.terms().map(move |(e, c)| (&e[..n], &e[n..], c))
    }

    pub fn add_term(&mut self, holo: &[u32], anti: &[u32], c: CRational) {
        let mut e = holo.to_vec();
        e.extend_from_slice(anti);
        self.poly.add_term(e, c);
    }

    pub fn scale(&self, c: &CRational) -> Self {
        Self {
            planes: self.planes,
            poly: self.poly.scale(c),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        Self {
            planes: self.planes,
            poly: self.poly.pow(n),
        }
    }

    /// Complex conjugate: `c z^α z̄^β ↦ c̄ z^β z̄^α`.
    pub fn conj(&self) -> Self {
        let n = self.planes;
        let poly = self.poly.map_terms(2 * n, |e, c| {
            let mut e2 = e[n..].to_vec();
            e2.extend_from_slice(&e[..n]);
            Some((e2, c.conj()))
        });
        Self { planes: n, poly }
    }

    /// Keeps the terms for which `keep(holo, anti)` holds.
    pub fn filter(&self, mut keep: impl FnMut(&[u32], &[u32]) -> bool) -> Self {
        let n = self.planes;
        let poly = self.poly.map_terms(2 * n, |e, c| {
            keep(&e[..n], &e[n..]).then(|| (e.to_vec(), c.clone()))
        });
        Self { planes: n, poly }
    }

    /// Applies a per-monomial linear map given as a list of output terms.
    pub fn map_monomials(
        &self,
        mut f: impl FnMut(&[u32], &[u32]) -> Vec<(Vec<u32>, Vec<u32>, CRational)>,
    ) -> Self {
        let mut out = Self::zero(self.planes);
        for (h, a, c) in self.terms() {
            for (h2, a2, w) in f(h, a) {
                out.add_term(&h2, &a2, c.clone() * w);
            }
        }
        out
    }

    /// Evaluates at a real point `x ∈ R^k`.
    pub fn eval<T: Real>(&self, x: &[T]) -> Cx<T> {
        let xc: Vec<Cx<T>> = x.iter().map(|&v| Cx::new(v, T::zero())).collect();
        self.eval_holomorphic(&xc)
    }

    /// Evaluates the holomorphic extension in the real coordinates, i.e. with
    /// `z = x + iy`, `z̄ = x - iy` for complex `x, y`.
    pub fn eval_holomorphic<T: Real>(&self, x: &[Cx<T>]) -> Cx<T> {
        assert_eq!(x.len(), 2 * self.planes);
        let i = Cx::new(T::zero(), T::one());
        let z: Vec<Cx<T>> = (0..self.planes)
            .map(|j| x[2 * j] + i * x[2 * j + 1])
            .collect();
        let zb: Vec<Cx<T>> = (0..self.planes)
            .map(|j| x[2 * j] - i * x[2 * j + 1])
            .collect();
        let mut acc = Cx::new(T::zero(), T::zero());
        for (h, a, c) in self.terms() {
            let mut m = Cx::new(T::lit(rat_to_f64(&c.re)), T::lit(rat_to_f64(&c.im)));
            for j in 0..self.planes {
                m = m * z[j].powu(h[j]) * zb[j].powu(a[j]);
            }
            acc = acc + m;
        }
        acc
    }

    /// Serialisable form; integers are written as decimal strings so that
    /// arbitrarily large values survive JSON.
    pub fn to_json(&self) -> ZonePolyJson {
        ZonePolyJson {
            terms: self
                .terms()
                .map(|(h, a, c)| ZoneTermJson {
                    holo: h.to_vec(),
                    anti: a.to_vec(),
                    re_num: c.re.numer().to_string(),
                    re_den: c.re.denom().to_string(),
                    im_num: c.im.numer().to_string(),
                    im_den: c.im.denom().to_string(),
                })
                .collect(),
        }
    }

    pub fn from_json(j: &ZonePolyJson, planes: usize) -> Result<Self, String> {
        let mut p = Self::zero(planes);
        let parse = |s: &str| {
            s.parse::<BigInt>()
                .map_err(|e| format!("bad integer '{s}': {e}"))
        };
        for t in &j.terms {
            if t.holo.len() != planes || t.anti.len() != planes {
                return Err(format!("term exponent length must be {planes}"));
            }
            let re_den = parse(&t.re_den)?;
            let im_den = parse(&t.im_den)?;
            if re_den.is_zero() || im_den.is_zero() {
                return Err("zero denominator".into());
            }
            let c = CRational::new(
                Rational::new(parse(&t.re_num)?, re_den),
                Rational::new(parse(&t.im_num)?, im_den),
            );
            p.add_term(&t.holo, &t.anti, c);
        }
        Ok(p)
    }
}

/// JSON layout of a [`ZonePoly`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ZonePolyJson {
    pub terms: Vec<ZoneTermJson>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ZoneTermJson {
    pub holo: Vec<u32>,
    pub anti: Vec<u32>,
    pub re_num: String,
    pub re_den: String,
    pub im_num: String,
    pub im_den: String,
}

impl Add for &ZonePoly {
    type Output = ZonePoly;
    fn add(self, o: &ZonePoly) -> ZonePoly {
        ZonePoly {
            planes: self.planes,
            poly: &self.poly + &o.poly,
        }
    }
}

impl Sub for &ZonePoly {
    type Output = ZonePoly;
    fn sub(self, o: &ZonePoly) -> ZonePoly {
        ZonePoly {
            planes: self.planes,
            poly: &self.poly - &o.poly,
        }
    }
}

impl Mul for &ZonePoly {
    type Output = ZonePoly;
    fn mul(self, o: &ZonePoly) -> ZonePoly {
        ZonePoly {
            planes: self.planes,
            poly: &self.poly * &o.poly,
        }
    }
}

/// Exact `∫ f ḡ e^{-λ|X|²} dX` divided by `π^{k/2}`, for single-λ data.
/// Uses `∫ z^a z̄^b e^{-λ|z|²} = δ_{ab} π a! / λ^{a+1}` per plane.
pub fn eta_inner(f: &ZonePoly, g: &ZonePoly, lambda: &Rational) -> CRational {
    let n = f.planes();
    let gc = g.conj();
    let prod = f * &gc;
    let mut acc = CRational::zero();
    for (h, a, c) in prod.terms() {
        if h != a {
            continue;
        }
        let mut w = Rational::one();
        for &hj in h.iter().take(n) {
            let d = hj as u64;
            w *= Rational::from_integer(super::exact::factorial(d));
            w /= super::exact::rat_powi(lambda, d as i64 + 1);
        }
        acc += c.clone() * CRational::new(w, Rational::zero());
    }
    acc
}

/// True when every coefficient is zero (exact).
pub fn zone_is_zero(p: &ZonePoly) -> bool {
    p.terms().all(|(_, _, c)| crat_is_zero(c))
}

#[cfg(test)]
mod tests {
    use super::super::exact::{crat, rat, rat_int};
    use super::*;

    #[test]
    fn unipoly_ops() {
        let p = UniPoly::new(vec![rat_int(1), rat_int(-2), rat(1, 2)]);
        let q = UniPoly::new(vec![rat_int(0), rat_int(1)]);
        assert_eq!((&p * &q).coeffs().len(), 4);
        assert_eq!(p.derivative(), UniPoly::new(vec![rat_int(-2), rat_int(1)]));
        assert_eq!(p.eval(&rat_int(2)), rat_int(-1));
        assert!((&p - &p).is_zero());
        assert_eq!(p.rescale(&rat_int(2)).coeffs()[2], rat_int(2));
    }

    #[test]
    fn zonepoly_coordinates() {
        // x y = (z^2 - z̄^2)/(4i)
        let x = ZonePoly::real_coordinate(1, 0);
        let y = ZonePoly::real_coordinate(1, 1);
        let xy = &x * &y;
        let expect = &ZonePoly::z(1, 0).pow(2) - &ZonePoly::zbar(1, 0).pow(2);
        let expect = expect.scale(&crat(rat_int(0), rat(-1, 4)));
        assert_eq!(xy, expect);
        let v = xy.eval(&[0.5f64, 3.0]);
        assert!((v.re - 1.5).abs() < 1e-14 && v.im.abs() < 1e-14);
    }

    #[test]
    fn conj_and_inner() {
        let z = ZonePoly::z(1, 0);
        assert_eq!(z.conj(), ZonePoly::zbar(1, 0));
        // ||z||^2 = π/λ^2 → coefficient 1/λ^2
        let l = rat_int(2);
        assert_eq!(eta_inner(&z, &z, &l), crat(rat(1, 4), rat_int(0)));
        // z ⟂ z̄
        assert!(crat_is_zero(&eta_inner(&z, &ZonePoly::zbar(1, 0), &l)));
    }

    #[test]
    fn json_round_trip() {
        let p = &ZonePoly::z(2, 1).scale(&crat(rat(3, 7), rat(-1, 2))) + &ZonePoly::zbar(2, 0);
        let j = p.to_json();
        let s = serde_json::to_string(&j).unwrap();
        let back: ZonePolyJson = serde_json::from_str(&s).unwrap();
        assert_eq!(ZonePoly::from_json(&back, 2).unwrap(), p);
    }

    #[test]
    fn compose() {
        // (1 + t)^2 at t = x0 + x1
        let p = UniPoly::new(vec![rat_int(1), rat_int(2), rat_int(1)]);
        let s = &MultiPoly::<Rational>::var(2, 0) + &MultiPoly::var(2, 1);
        let c = MultiPoly::compose_univariate(&p, &s);
        let one = MultiPoly::constant(2, rat_int(1));
        assert_eq!(c, (&s + &one).pow(2));
    }
}
