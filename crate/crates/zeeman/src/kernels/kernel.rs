//! The flat-gauge kernel representation shared by every closed form.

use crate::core_math::laguerre;
use crate::quadrature::{EnvelopeBuilder, LogValue, Slot};
use crate::{Cx, Error, MagneticParams, Real, Result};
use serde::{Deserialize, Serialize};
use std::ops::Range;

type PointPair<T> = (Vec<Cx<T>>, Vec<Cx<T>>);

/// `xx·X·X + yy·Y·Y + xy·X·Y + xjy·X·J(Y)` on one block.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BlockForm<T> {
    pub xx: Cx<T>,
    pub yy: Cx<T>,
    pub xy: Cx<T>,
    pub xjy: Cx<T>,
}

/// Which part of a first-zone kernel to keep.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ZonalPart {
    Full,
    Dominant,
    LongTerm,
}

/// Polynomial prefactor, extended holomorphically (all pairings bilinear).
#[derive(Clone, Debug, PartialEq)]
pub enum KernelPoly<T> {
    One,
    /// `L_degree^{(alpha)}(Σ λ_i (X_i - Y_i)·(X_i - Y_i))`
    Laguerre {
        alpha: i64,
        degree: usize,
    },
    /// `Π_j L_{a_j}^{(0)}(λ_j |z_j - w_j|²)` over coordinate planes.
    PlaneLaguerre {
        degrees: Vec<usize>,
    },
    /// First-zone dominant term plus long-term correction, with per-block
    /// `q = e^{-2σλt}`.
    FirstZone {
        q: Vec<Cx<T>>,
        part: ZonalPart,
    },
}

/// A complex kernel value with its optional dominant/long-term split.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KernelValue<T> {
    pub value: Cx<T>,
    pub dominant: Option<Cx<T>>,
    pub long_term: Option<Cx<T>>,
}

impl<T: Real> KernelValue<T> {
    pub fn plain(value: Cx<T>) -> Self {
        Self {
            value,
            dominant: None,
            long_term: None,
        }
    }
}

/// `amplitude · poly(X, Y) · exp(Σ_blocks form_b(X_b, Y_b))`.
#[derive(Clone, Debug, PartialEq)]
pub struct Kernel<T> {
    pub(crate) dim: usize,
    pub(crate) ranges: Vec<Range<usize>>,
    pub(crate) lambdas: Vec<T>,
    pub(crate) ks: Vec<usize>,
    pub(crate) forms: Vec<BlockForm<T>>,
    pub(crate) amplitude: Cx<T>,
    pub(crate) poly: KernelPoly<T>,
}

fn bdot<T: Real>(x: &[Cx<T>], y: &[Cx<T>], r: &Range<usize>) -> Cx<T> {
    r.clone()
        .fold(Cx::new(T::zero(), T::zero()), |acc, i| acc + x[i] * y[i])
}

/// `X·J(Y) = Σ_planes x1 y0 - x0 y1`.
fn bjdot<T: Real>(x: &[Cx<T>], y: &[Cx<T>], r: &Range<usize>) -> Cx<T> {
    let mut acc = Cx::new(T::zero(), T::zero());
    let mut i = r.start;
    while i < r.end {
        acc = acc + x[i + 1] * y[i] - x[i] * y[i + 1];
        i += 2;
    }
    acc
}

impl<T: Real> Kernel<T> {
    pub(crate) fn with_parts(
        params: &MagneticParams,
        forms: Vec<BlockForm<T>>,
        amplitude: Cx<T>,
        poly: KernelPoly<T>,
    ) -> Self {
        Self {
            dim: params.dim(),
            ranges: params.ranges(),
            lambdas: params.blocks().iter().map(|b| T::lit(b.lambda)).collect(),
            ks: params.blocks().iter().map(|b| b.k).collect(),
            forms,
            amplitude,
            poly,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn forms(&self) -> &[BlockForm<T>] {
        &self.forms
    }

    pub fn amplitude(&self) -> Cx<T> {
        self.amplitude
    }

    pub fn poly(&self) -> &KernelPoly<T> {
        &self.poly
    }

    /// The same kernel multiplied by `c`.
    pub fn scaled(mut self, c: Cx<T>) -> Self {
        self.amplitude = self.amplitude * c;
        self
    }

    /// The same kernel with another prefactor polynomial.
    pub fn with_poly(mut self, poly: KernelPoly<T>) -> Self {
        self.poly = poly;
        self
    }

    /// Quadratic exponent at (possibly complex) points.
    pub fn exponent(&self, x: &[Cx<T>], y: &[Cx<T>]) -> Cx<T> {
        let mut e = Cx::new(T::zero(), T::zero());
        for (f, r) in self.forms.iter().zip(&self.ranges) {
            e = e
                + f.xx * bdot(x, x, r)
                + f.yy * bdot(y, y, r)
                + f.xy * bdot(x, y, r)
                + f.xjy * bjdot(x, y, r);
        }
        e
    }

    fn diff_norm(&self, x: &[Cx<T>], y: &[Cx<T>], r: Range<usize>) -> Cx<T> {
        r.fold(Cx::new(T::zero(), T::zero()), |acc, i| {
            acc + (x[i] - y[i]) * (x[i] - y[i])
        })
    }

    /// Dominant and long-term prefactors (long-term is zero unless first zone).
    pub fn poly_parts(&self, x: &[Cx<T>], y: &[Cx<T>]) -> (Cx<T>, Cx<T>) {
        let zero = Cx::new(T::zero(), T::zero());
        match &self.poly {
            KernelPoly::One => (Cx::new(T::one(), T::zero()), zero),
            KernelPoly::Laguerre { alpha, degree } => {
                let mut s = zero;
                for (l, r) in self.lambdas.iter().zip(&self.ranges) {
                    s = s + self.diff_norm(x, y, r.clone()) * *l;
                }
                (laguerre(*alpha, *degree, s), zero)
            }
            KernelPoly::PlaneLaguerre { degrees } => {
                let mut prod = Cx::new(T::one(), T::zero());
                let mut plane = 0;
                for (l, r) in self.lambdas.iter().zip(&self.ranges) {
                    let mut i = r.start;
                    while i < r.end {
                        let s = self.diff_norm(x, y, i..i + 2) * *l;
                        prod = prod * laguerre(0, degrees[plane], s);
                        plane += 1;
                        i += 2;
                    }
                }
                (prod, zero)
            }
            KernelPoly::FirstZone { q, part } => {
                let half = T::lit(0.5);
                let mut dom = zero;
                let mut lt = zero;
                for (b, r) in self.ranges.iter().enumerate() {
                    let l = self.lambdas[b];
                    let kb = T::lit(self.ks[b] as f64);
                    dom = dom + Cx::new(kb * half, T::zero()) - self.diff_norm(x, y, r.clone()) * l;
                    let zw = bdot(x, y, r) + bjdot(x, y, r) * Cx::new(T::zero(), T::one());
                    let one = Cx::new(T::one(), T::zero());
                    let qb = q[b];
                    lt = lt
                        + (one - qb)
                            * ((bdot(x, x, r) + bdot(y, y, r)) * l
                                - Cx::new(kb * half, T::zero())
                                - (one + qb) * zw * l);
                }
                match part {
                    ZonalPart::Full => (dom, lt),
                    ZonalPart::Dominant => (dom, zero),
                    ZonalPart::LongTerm => (zero, lt),
                }
            }
        }
    }

    /// Whether the polynomial factor is identically one.
    pub fn poly_is_one(&self) -> bool {
        match &self.poly {
            KernelPoly::One | KernelPoly::Laguerre { degree: 0, .. } => true,
            KernelPoly::PlaneLaguerre { degrees } => degrees.iter().all(|&d| d == 0),
            KernelPoly::Laguerre { .. } | KernelPoly::FirstZone { .. } => false,
        }
    }

    pub fn poly_value(&self, x: &[Cx<T>], y: &[Cx<T>]) -> Cx<T> {
        let (d, l) = self.poly_parts(x, y);
        d + l
    }

    /// Value as `pre · exp(exp)` at complex points.
    pub fn log_value(&self, x: &[Cx<T>], y: &[Cx<T>]) -> LogValue<T> {
        LogValue::new(self.amplitude * self.poly_value(x, y), self.exponent(x, y))
    }

    fn lift(&self, x: &[T], y: &[T]) -> Result<PointPair<T>> {
        for v in [x, y] {
            if v.len() != self.dim {
                return Err(Error::DimensionMismatch {
                    expected: self.dim,
                    got: v.len(),
                });
            }
        }
        Ok((
            x.iter().map(|&v| Cx::new(v, T::zero())).collect(),
            y.iter().map(|&v| Cx::new(v, T::zero())).collect(),
        ))
    }

    /// Value at real points.
    pub fn eval(&self, x: &[T], y: &[T]) -> Result<Cx<T>> {
        let (xc, yc) = self.lift(x, y)?;
        Ok(self.log_value(&xc, &yc).value())
    }

    /// Value at real points with the dominant/long-term split when present.
    pub fn eval_split(&self, x: &[T], y: &[T]) -> Result<KernelValue<T>> {
        let (xc, yc) = self.lift(x, y)?;
        let g = self.amplitude * self.exponent(&xc, &yc).exp();
        let (d, l) = self.poly_parts(&xc, &yc);
        Ok(match self.poly {
            KernelPoly::FirstZone { .. } => KernelValue {
                value: g * (d + l),
                dominant: Some(g * d),
                long_term: Some(g * l),
            },
            _ => KernelValue::plain(g * (d + l)),
        })
    }

    /// Adds the quadratic form of `K(P, Q)` to an envelope.
    pub fn add_to_envelope(&self, b: &mut EnvelopeBuilder<T>, p: Slot<T>, q: Slot<T>) {
        for (f, r) in self.forms.iter().zip(&self.ranges) {
            b.add_dot(f.xx, p, p, r.clone());
            b.add_dot(f.yy, q, q, r.clone());
            b.add_dot(f.xy, p, q, r.clone());
            b.add_jdot(f.xjy, p, q, r.clone());
        }
    }
}
