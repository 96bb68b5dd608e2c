//! Gaussian envelopes and the rules adapted to them.

use super::hermite_rule::gauss_hermite_rule;
use super::reduce::tree_sum;
use super::{MAX_DIM, MAX_NODES};
use crate::{Cx, Error, Real, Result};
use rayon::prelude::*;
use std::ops::Range;

/// `pre · exp(exp)`, kept apart so products never overflow before the sum.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LogValue<T> {
    pub pre: Cx<T>,
    pub exp: Cx<T>,
}

impl<T: Real> LogValue<T> {
    pub fn new(pre: Cx<T>, exp: Cx<T>) -> Self {
        Self { pre, exp }
    }

    pub fn one() -> Self {
        Self {
            pre: Cx::new(T::one(), T::zero()),
            exp: Cx::new(T::zero(), T::zero()),
        }
    }

    pub fn value(&self) -> Cx<T> {
        self.pre * self.exp.exp()
    }

    pub fn scale(self, c: Cx<T>) -> Self {
        Self {
            pre: self.pre * c,
            exp: self.exp,
        }
    }
}

impl<T: Real> std::ops::Mul for LogValue<T> {
    type Output = Self;

    fn mul(self, o: Self) -> Self {
        Self {
            pre: self.pre * o.pre,
            exp: self.exp + o.exp,
        }
    }
}

/// An argument of a bilinear term: one of the integrated points or a fixed
/// (possibly complex) point.
#[derive(Clone, Copy, Debug)]
pub enum Slot<'a, T> {
    Var(usize),
    Fixed(&'a [Cx<T>]),
}

/// Accumulates the quadratic and linear parts of an exponent over `points`
/// integrated points in `R^dim`. Constant parts are ignored.
#[derive(Clone, Debug)]
pub struct EnvelopeBuilder<T> {
    points: usize,
    dim: usize,
    q: Vec<Cx<T>>,
    b: Vec<Cx<T>>,
}

impl<T: Real> EnvelopeBuilder<T> {
    pub fn new(points: usize, dim: usize) -> Self {
        let n = points * dim;
        let z = Cx::new(T::zero(), T::zero());
        Self {
            points,
            dim,
            q: vec![z; n * n],
            b: vec![z; n],
        }
    }

    fn n(&self) -> usize {
        self.points * self.dim
    }

    fn at(&self, point: usize, coord: usize) -> usize {
        point * self.dim + coord
    }

    fn add_q(&mut self, i: usize, j: usize, c: Cx<T>) {
        let n = self.n();
        self.q[i * n + j] = self.q[i * n + j] + c;
    }

    /// Adds `c · P·Q` restricted to the coordinates in `range`.
    pub fn add_dot(&mut self, c: Cx<T>, p: Slot<T>, q: Slot<T>, range: Range<usize>) {
        for r in range {
            match (p, q) {
                (Slot::Var(i), Slot::Var(j)) => {
                    let (a, b) = (self.at(i, r), self.at(j, r));
                    self.add_q(a, b, c);
                }
                (Slot::Var(i), Slot::Fixed(y)) | (Slot::Fixed(y), Slot::Var(i)) => {
                    let a = self.at(i, r);
                    self.b[a] = self.b[a] + c * y[r];
                }
                (Slot::Fixed(_), Slot::Fixed(_)) => {}
            }
        }
    }

    /// Adds `c · P·J(Q)` restricted to `range`, which must consist of whole
    /// coordinate planes.
    pub fn add_jdot(&mut self, c: Cx<T>, p: Slot<T>, q: Slot<T>, range: Range<usize>) {
        debug_assert!(range.start.is_multiple_of(2) && range.len().is_multiple_of(2));
        // P·JQ = Σ_planes p1 q0 - p0 q1
        let mut pl = range.start;
        while pl < range.end {
            let (r0, r1) = (pl, pl + 1);
            match (p, q) {
                (Slot::Var(i), Slot::Var(j)) => {
                    let (p0, p1, q0, q1) = (
                        self.at(i, r0),
                        self.at(i, r1),
                        self.at(j, r0),
                        self.at(j, r1),
                    );
                    self.add_q(p1, q0, c);
                    self.add_q(p0, q1, -c);
                }
                (Slot::Var(i), Slot::Fixed(y)) => {
                    let (p0, p1) = (self.at(i, r0), self.at(i, r1));
                    self.b[p1] = self.b[p1] + c * y[r0];
                    self.b[p0] = self.b[p0] - c * y[r1];
                }
                (Slot::Fixed(x), Slot::Var(j)) => {
                    let (q0, q1) = (self.at(j, r0), self.at(j, r1));
                    self.b[q0] = self.b[q0] + c * x[r1];
                    self.b[q1] = self.b[q1] - c * x[r0];
                }
                (Slot::Fixed(_), Slot::Fixed(_)) => {}
            }
            pl += 2;
        }
    }

    /// Adds `c · x` for one coordinate of one point.
    pub fn add_linear(&mut self, point: usize, coord: usize, c: Cx<T>) {
        let a = self.at(point, coord);
        self.b[a] = self.b[a] + c;
    }

    pub fn build(&self) -> GaussianEnvelope<T> {
        let n = self.n();
        let mut a = vec![Cx::new(T::zero(), T::zero()); n * n];
        for i in 0..n {
            for j in 0..n {
                a[i * n + j] = -(self.q[i * n + j] + self.q[j * n + i]);
            }
        }
        GaussianEnvelope {
            n,
            a,
            b: self.b.clone(),
        }
    }
}

/// `exp(-½ xᵀ A x + bᵀ x)` on `R^n`, `A` complex symmetric.
#[derive(Clone, Debug, PartialEq)]
pub struct GaussianEnvelope<T> {
    pub n: usize,
    pub a: Vec<Cx<T>>,
    pub b: Vec<Cx<T>>,
}

impl<T: Real> GaussianEnvelope<T> {
    /// `exp(-Σ s_i x_i²)` for real positive scales.
    pub fn real_diagonal(scales: &[T]) -> Self {
        let n = scales.len();
        let mut a = vec![Cx::new(T::zero(), T::zero()); n * n];
        for (i, &s) in scales.iter().enumerate() {
            a[i * n + i] = Cx::new(s + s, T::zero());
        }
        Self {
            n,
            a,
            b: vec![Cx::new(T::zero(), T::zero()); n],
        }
    }
}

/// Tensor rule adapted to an envelope. Nodes are `c + M v` for the tensor
/// Gauss-Hermite nodes `v` of weight `e^{-|v|²/2}`.
#[derive(Clone, Debug)]
pub struct QuadRule<T> {
    n: usize,
    degree: usize,
    nodes: Vec<T>,
    weights: Vec<T>,
    center: Vec<Cx<T>>,
    m: Vec<Cx<T>>,
    log_det: Cx<T>,
}

const CHUNK: u128 = 4096;

fn real_cholesky_ok<T: Real>(a: &[Cx<T>], n: usize) -> bool {
    let mut l = vec![T::zero(); n * n];
    for j in 0..n {
        let mut d = a[j * n + j].re;
        for k in 0..j {
            d = d - l[j * n + k] * l[j * n + k];
        }
        if !(d > T::zero()) {
            return false;
        }
        let d = d.sqrt();
        l[j * n + j] = d;
        for i in j + 1..n {
            let mut s = (a[i * n + j].re + a[j * n + i].re) / T::lit(2.0);
            for k in 0..j {
                s = s - l[i * n + k] * l[j * n + k];
            }
            l[i * n + j] = s / d;
        }
    }
    true
}

impl<T: Real> QuadRule<T> {
    /// Builds the rule. Requires `Re A` positive definite, `n ≤ MAX_DIM` and
    /// `degree^n ≤ MAX_NODES`.
    pub fn new(env: &GaussianEnvelope<T>, degree: usize) -> Result<Self> {
        let n = env.n;
        if n == 0 {
            return Err(Error::Domain("empty integration dimension".into()));
        }
        if n > MAX_DIM {
            return Err(Error::DimensionCeiling {
                dim: n,
                max: MAX_DIM,
            });
        }
        let nodes_total = (degree as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
        if nodes_total > MAX_NODES {
            return Err(Error::TooManyNodes {
                nodes: nodes_total,
                max: MAX_NODES,
            });
        }
        if !real_cholesky_ok(&env.a, n) {
            return Err(Error::Domain(
                "envelope real part is not positive definite".into(),
            ));
        }
        let a = &env.a;
        let zero = Cx::new(T::zero(), T::zero());
        let one = Cx::new(T::one(), T::zero());
        // A = L D Lᵀ, unit lower L
        let mut l = vec![zero; n * n];
        let mut d = vec![zero; n];
        for j in 0..n {
            let mut s = a[j * n + j];
            for k in 0..j {
                s = s - l[j * n + k] * l[j * n + k] * d[k];
            }
            if !(s.re > T::zero()) {
                return Err(Error::Domain(
                    "non-accretive pivot in envelope factorisation".into(),
                ));
            }
            d[j] = s;
            l[j * n + j] = one;
            for i in j + 1..n {
                let mut s = a[i * n + j];
                for k in 0..j {
                    s = s - l[i * n + k] * l[j * n + k] * d[k];
                }
                l[i * n + j] = s / d[j];
            }
        }
        // Y = L^{-T}: solve Lᵀ Y = I column by column (upper unit triangular)
        let mut y = vec![zero; n * n];
        for col in 0..n {
            for i in (0..n).rev() {
                let mut s = if i == col { one } else { zero };
                for k in i + 1..n {
                    s = s - l[k * n + i] * y[k * n + col];
                }
                y[i * n + col] = s;
            }
        }
        let mut m = vec![zero; n * n];
        let mut log_det = zero;
        for j in 0..n {
            let s = d[j].sqrt();
            log_det = log_det - s.ln();
            for i in 0..n {
                m[i * n + j] = y[i * n + j] / s;
            }
        }
        // center = A^{-1} b = L^{-T} D^{-1} L^{-1} b
        let mut w = env.b.clone();
        for i in 0..n {
            for k in 0..i {
                w[i] = w[i] - l[i * n + k] * w[k];
            }
        }
        for i in 0..n {
            w[i] = w[i] / d[i];
        }
        for i in (0..n).rev() {
            for k in i + 1..n {
                w[i] = w[i] - l[k * n + i] * w[k];
            }
        }
        let gh = gauss_hermite_rule::<T>(degree)?;
        let sqrt2 = T::lit(2.0).sqrt();
        Ok(Self {
            n,
            degree,
            nodes: gh.nodes.iter().map(|&x| x * sqrt2).collect(),
            weights: gh.weights.iter().map(|&x| x * sqrt2).collect(),
            center: w,
            m,
            log_det,
        })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn node_count(&self) -> u128 {
        (self.degree as u128).pow(self.n as u32)
    }

    pub fn center(&self) -> &[Cx<T>] {
        &self.center
    }

    /// The node `c + M v` for standard-normal coordinates `v`.
    pub fn node(&self, v: &[T]) -> Vec<Cx<T>> {
        (0..self.n)
            .map(|r| (0..self.n).fold(self.center[r], |acc, i| acc + self.m[r * self.n + i] * v[i]))
            .collect()
    }

    fn sum<F>(&self, term: F) -> Result<Cx<T>>
    where
        F: Fn(&[Cx<T>], T, T) -> Cx<T> + Sync,
    {
        let total = self.node_count();
        let chunks = total.div_ceil(CHUNK);
        let zero = Cx::new(T::zero(), T::zero());
        let parts: Vec<(Cx<T>, usize)> = (0..chunks as u64)
            .into_par_iter()
            .map(|c| {
                let start = c as u128 * CHUNK;
                let end = (start + CHUNK).min(total);
                let n = self.n;
                let mut idx = vec![0usize; n];
                let mut rem = start;
                for i in (0..n).rev() {
                    idx[i] = (rem % self.degree as u128) as usize;
                    rem /= self.degree as u128;
                }
                // prefix[i] holds the partial node after axes 0..i
                let mut prefix = vec![zero; (n + 1) * n];
                let mut wpre = vec![T::one(); n + 1];
                let mut vpre = vec![T::zero(); n + 1];
                prefix[..n].copy_from_slice(&self.center);
                let mut dirty = 0usize;
                let mut acc = zero;
                let mut bad = 0usize;
                let half = T::lit(0.5);
                for _ in start..end {
                    for i in dirty..n {
                        let v = self.nodes[idx[i]];
                        let (head, tail) = prefix.split_at_mut((i + 1) * n);
                        let src = &head[i * n..];
                        let dst = &mut tail[..n];
                        for r in 0..n {
                            dst[r] = src[r] + self.m[r * n + i] * v;
                        }
                        wpre[i + 1] = wpre[i] * self.weights[idx[i]];
                        vpre[i + 1] = vpre[i] + v * v;
                    }
                    let x = &prefix[n * n..];
                    let t = term(x, wpre[n], vpre[n] * half);
                    if t.re.is_finite() && t.im.is_finite() {
                        acc = acc + t;
                    } else {
                        bad += 1;
                    }
                    let mut i = n;
                    while i > 0 {
                        i -= 1;
                        idx[i] += 1;
                        if idx[i] < self.degree {
                            break;
                        }
                        idx[i] = 0;
                    }
                    dirty = i;
                }
                (acc, bad)
            })
            .collect();
        let bad: usize = parts.iter().map(|p| p.1).sum();
        if bad > 0 {
            return Err(Error::NonFinite { count: bad });
        }
        let sums: Vec<Cx<T>> = parts.into_iter().map(|p| p.0).collect();
        Ok(tree_sum(&sums, zero))
    }

    /// `∫_{R^n} g(x) dx` for `g = pre·exp(exp)` holomorphic in `x`.
    pub fn integrate<F>(&self, g: F) -> Result<Cx<T>>
    where
        F: Fn(&[Cx<T>]) -> LogValue<T> + Sync,
    {
        let log_det = self.log_det;
        self.sum(|x, w, half_v2| {
            let lv = g(x);
            lv.pre * (lv.exp + log_det + Cx::new(half_v2, T::zero())).exp() * w
        })
    }

    /// `∫ f(x) exp(-½(x-c)ᵀA(x-c)) dx` with the envelope's own weight.
    pub fn integrate_weighted<F>(&self, f: F) -> Result<Cx<T>>
    where
        F: Fn(&[Cx<T>]) -> Cx<T> + Sync,
    {
        let det = self.log_det.exp();
        self.sum(|x, w, _| f(x) * w).map(|v| v * det)
    }
}

/// Integrates at each degree in `degrees` and fails with `NonConvergence`
/// when two successive results differ by more than `tol·(1 + |value|)`.
pub fn integrate_ladder<T, F>(
    env: &GaussianEnvelope<T>,
    degrees: &[usize],
    tol: T,
    g: F,
) -> Result<Cx<T>>
where
    T: Real,
    F: Fn(&[Cx<T>]) -> LogValue<T> + Sync,
{
    let mut prev: Option<Cx<T>> = None;
    for &d in degrees {
        let v = QuadRule::new(env, d)?.integrate(&g)?;
        if let Some(p) = prev {
            let spread = (v - p).norm();
            if spread > tol * (T::one() + v.norm()) {
                return Err(Error::NonConvergence {
                    spread: spread.to_f64().unwrap_or(f64::NAN),
                    tolerance: tol.to_f64().unwrap_or(f64::NAN),
                });
            }
        }
        prev = Some(v);
    }
    prev.ok_or_else(|| Error::Domain("empty degree ladder".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::core_math::gaussian_moment_integral;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Cx<f64> {
        Cx::new(re, im)
    }

    #[test]
    fn nodes_whiten_the_envelope() {
        let mut b = EnvelopeBuilder::new(2, 2);
        b.add_dot(c(-0.8, 0.3), Slot::Var(0), Slot::Var(0), 0..2);
        b.add_dot(c(-0.5, -0.2), Slot::Var(1), Slot::Var(1), 0..2);
        b.add_dot(c(0.3, 0.1), Slot::Var(0), Slot::Var(1), 0..2);
        b.add_linear(0, 1, c(0.4, -0.7));
        let env = b.build();
        let rule = QuadRule::new(&env, 4).unwrap();
        let quad = |x: &[Cx<f64>]| {
            let mut e = c(0.0, 0.0);
            for i in 0..4 {
                e += env.b[i] * x[i];
                for j in 0..4 {
                    e -= env.a[i * 4 + j] * x[i] * x[j] / 2.0;
                }
            }
            e
        };
        let centre = quad(rule.center());
        assert_eq!(rule.node(&[0.0; 4]), rule.center().to_vec());
        let v = [0.3, -1.2, 0.7, 2.0];
        let half: f64 = v.iter().map(|a| a * a).sum::<f64>() / 2.0;
        assert!((quad(&rule.node(&v)) - (centre - half)).norm() < 1e-12);
    }

    #[test]
    fn lambda_matched_mass() {
        let env = GaussianEnvelope::real_diagonal(&[2.0, 2.0, 0.5, 0.5]);
        let rule = QuadRule::new(&env, 6).unwrap();
        let v = rule.integrate_weighted(|_| c(1.0, 0.0)).unwrap();
        assert!((v.re - (PI / 2.0) * (PI / 0.5)).abs() < 1e-12);
        let lin = rule.integrate_weighted(|x| x[0] + x[2] * 3.0).unwrap();
        assert!(lin.norm() < 1e-13);
    }

    #[test]
    fn matches_gaussian_moment_integral() {
        for a in [c(1.0, 0.0), c(1.0, 0.5), c(2.0, -1.0)] {
            for k in 1..=4usize {
                let cv: Vec<Cx<f64>> = (0..k)
                    .map(|i| c(0.5 * i as f64 - 0.3, 0.2 * i as f64))
                    .collect();
                let mut b = EnvelopeBuilder::new(1, k);
                for (i, &ci) in cv.iter().enumerate() {
                    b.add_dot(-a / 2.0, Slot::Var(0), Slot::Var(0), i..i + 1);
                    b.add_linear(0, i, ci);
                }
                let rule = QuadRule::new(&b.build(), 8).unwrap();
                let got = rule
                    .integrate(|x| {
                        let mut e = c(0.0, 0.0);
                        for i in 0..k {
                            e += -a * x[i] * x[i] / 2.0 + cv[i] * x[i];
                        }
                        LogValue::new(c(1.0, 0.0), e)
                    })
                    .unwrap();
                let exact = gaussian_moment_integral(a, &cv).unwrap();
                assert!(
                    (got - exact).norm() <= 1e-9 * exact.norm(),
                    "{got} vs {exact}"
                );
            }
        }
    }

    #[test]
    fn chirp_is_exact_on_rotated_contour() {
        // ∫ exp(-(1 - 5i) x²) dx: a real-scaled rule would need many nodes
        let a = c(2.0, -10.0);
        let mut b = EnvelopeBuilder::new(1, 1);
        b.add_dot(-a / 2.0, Slot::Var(0), Slot::Var(0), 0..1);
        let rule = QuadRule::new(&b.build(), 3).unwrap();
        let got = rule
            .integrate(|x| LogValue::new(c(1.0, 0.0), -a * x[0] * x[0] / 2.0))
            .unwrap();
        let exact = gaussian_moment_integral(a, &[c(0.0, 0.0)]).unwrap();
        assert!((got - exact).norm() < 1e-13);
    }

    #[test]
    fn coupled_envelope_and_jdot() {
        // exp(-|x|² - |y|² + 0.5 x·y + 0.3i x·Jy) over R^4 (two points in R^2)
        let mut b = EnvelopeBuilder::new(2, 2);
        b.add_dot(c(-1.0, 0.0), Slot::Var(0), Slot::Var(0), 0..2);
        b.add_dot(c(-1.0, 0.0), Slot::Var(1), Slot::Var(1), 0..2);
        b.add_dot(c(0.5, 0.0), Slot::Var(0), Slot::Var(1), 0..2);
        b.add_jdot(c(0.0, 0.3), Slot::Var(0), Slot::Var(1), 0..2);
        let env = b.build();
        let rule = QuadRule::new(&env, 4).unwrap();
        let e = |x: &[Cx<f64>]| {
            let (p, q) = (&x[0..2], &x[2..4]);
            let dot = p[0] * q[0] + p[1] * q[1];
            let jd = p[1] * q[0] - p[0] * q[1];
            -(p[0] * p[0] + p[1] * p[1]) - (q[0] * q[0] + q[1] * q[1])
                + dot * 0.5
                + jd * c(0.0, 0.3)
        };
        let got = rule
            .integrate(|x| LogValue::new(c(1.0, 0.0), e(x)))
            .unwrap();
        // determinant of A: A = [[2,-0.5],[-0.5,2]] ⊗ I + J-coupling; compare with a big real rule
        let real = QuadRule::new(&GaussianEnvelope::real_diagonal(&[1.0; 4]), 30).unwrap();
        let reference = real
            .integrate(|x| LogValue::new(c(1.0, 0.0), e(x)))
            .unwrap();
        assert!((got - reference).norm() < 1e-12, "{got} vs {reference}");
    }

    #[test]
    fn rejects_bad_envelopes() {
        let env = GaussianEnvelope {
            n: 1,
            a: vec![c(-1.0, 0.0)],
            b: vec![c(0.0, 0.0)],
        };
        assert!(QuadRule::new(&env, 4).is_err());
        let env = GaussianEnvelope::real_diagonal(&[1.0; 9]);
        assert!(matches!(
            QuadRule::new(&env, 2),
            Err(Error::DimensionCeiling { .. })
        ));
        let env = GaussianEnvelope::real_diagonal(&[1.0; 8]);
        assert!(matches!(
            QuadRule::new(&env, 40),
            Err(Error::TooManyNodes { .. })
        ));
    }

    #[test]
    fn poisoned_and_ladder() {
        let env = GaussianEnvelope::real_diagonal(&[1.0]);
        let rule = QuadRule::new(&env, 5).unwrap();
        assert!(matches!(
            rule.integrate_weighted(|_| c(f64::NAN, 0.0)),
            Err(Error::NonFinite { count: 5 })
        ));
        let ok = integrate_ladder(&env, &[20, 30, 40], 1e-8, |x| {
            LogValue::new(c(1.0, 0.0), -x[0] * x[0])
        })
        .unwrap();
        assert!((ok.re - PI.sqrt()).abs() < 1e-12);
        // |x| is not smooth: the ladder must trip
        let bad = integrate_ladder(&env, &[20, 30, 40], 1e-8, |x| {
            LogValue::new(c(x[0].re.abs(), 0.0), -x[0] * x[0])
        });
        assert!(matches!(bad, Err(Error::NonConvergence { .. })));
    }

    #[test]
    fn deterministic_across_pools() {
        let env = GaussianEnvelope::real_diagonal(&[1.0, 0.7, 1.3]);
        let f =
            |x: &[Cx<f64>]| LogValue::new((x[0] * x[1] + c(0.1, 0.0)).exp(), -x[2] * x[2] * 0.5);
        let mut results = Vec::new();
        for threads in [1, 3, 8] {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap();
            results.push(pool.install(|| QuadRule::new(&env, 30).unwrap().integrate(f).unwrap()));
        }
        assert!(results
            .iter()
            .all(|r| r.re.to_bits() == results[0].re.to_bits()
                && r.im.to_bits() == results[0].im.to_bits()));
    }
}
