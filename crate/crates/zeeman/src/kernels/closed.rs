//! Closed-form kernel constructors.

use super::flow::{check_time, Flow};
use super::kernel::{BlockForm, Kernel, KernelPoly, KernelValue, ZonalPart};
use crate::spectrum::{HamiltonianKind, HamiltonianVariant};
use crate::{Cx, Error, MagneticParams, Real, Result};

/// Block forms, amplitude and per-block `q = e^{-2σλt}` of the zonal kernels.
type ZonalBase<T> = (Vec<BlockForm<T>>, Cx<T>, Vec<Cx<T>>);

fn c<T: Real>(re: T, im: T) -> Cx<T> {
    Cx::new(re, im)
}

fn projection_forms<T: Real>(params: &MagneticParams) -> Vec<BlockForm<T>> {
    params
        .blocks()
        .iter()
        .map(|b| {
            let l = T::lit(b.lambda);
            BlockForm {
                xx: c(-l / T::lit(2.0), T::zero()),
                yy: c(-l / T::lit(2.0), T::zero()),
                xy: c(l, T::zero()),
                xjy: c(T::zero(), l),
            }
        })
        .collect()
}

fn projection_amplitude<T: Real>(params: &MagneticParams) -> Cx<T> {
    let mut a = T::one();
    for b in params.blocks() {
        a = a * (T::lit(b.lambda) / T::PI()).powi((b.k / 2) as i32);
    }
    c(a, T::zero())
}

impl<T: Real> Kernel<T> {
    /// Gross-zone projection kernel `δ^{(a)}`.
    pub fn projection(a: usize, params: &MagneticParams) -> Self {
        let alpha = (params.dim() / 2) as i64 - 1;
        Self::with_parts(
            params,
            projection_forms(params),
            projection_amplitude(params),
            KernelPoly::Laguerre { alpha, degree: a },
        )
    }

    /// Irreducible-zone projection kernel for a tuple `(a_1, …, a_{k/2})`.
    pub fn irreducible_projection(tuple: &[usize], params: &MagneticParams) -> Result<Self> {
        if tuple.len() != params.planes() {
            return Err(Error::DimensionMismatch {
                expected: params.planes(),
                got: tuple.len(),
            });
        }
        Ok(Self::with_parts(
            params,
            projection_forms(params),
            projection_amplitude(params),
            KernelPoly::PlaneLaguerre {
                degrees: tuple.to_vec(),
            },
        ))
    }

    /// Global kernel `d_σ(t)` of `e^{-σ t H_Z}`.
    pub fn global(flow: Flow, t: f64, params: &MagneticParams) -> Result<Self> {
        check_time(flow, t, params, false)?;
        let sigma = flow.sigma::<T>();
        let mut amp = c(T::one(), T::zero());
        let mut forms = Vec::new();
        for b in params.blocks() {
            let l = T::lit(b.lambda);
            let arg = sigma * (l * T::lit(t));
            let sh = arg.sinh();
            let coth = arg.cosh() / sh;
            let cc = coth * (l / T::lit(2.0));
            amp = amp * (c(l, T::zero()) / (sh * (T::PI() + T::PI()))).powi((b.k / 2) as i32);
            forms.push(BlockForm {
                xx: -cc,
                yy: -cc,
                xy: cc + cc,
                xjy: c(T::zero(), -l),
            });
        }
        Ok(Self::with_parts(params, forms, amp, KernelPoly::One))
    }

    fn zonal_base(flow: Flow, t: f64, params: &MagneticParams) -> Result<ZonalBase<T>> {
        check_time(flow, t, params, true)?;
        let sigma = flow.sigma::<T>();
        let mut amp = c(T::one(), T::zero());
        let mut forms = Vec::new();
        let mut qs = Vec::new();
        for b in params.blocks() {
            let l = T::lit(b.lambda);
            let e1 = (-sigma * (l * T::lit(t))).exp();
            let q = e1 * e1;
            amp = amp * (e1 * (l / T::PI())).powi((b.k / 2) as i32);
            let lq = q * l;
            forms.push(BlockForm {
                xx: c(-l / T::lit(2.0), T::zero()),
                yy: c(-l / T::lit(2.0), T::zero()),
                xy: lq,
                xjy: lq * c(T::zero(), T::one()),
            });
            qs.push(q);
        }
        Ok((forms, amp, qs))
    }

    /// Zonal kernel `d_σ^{(a)}(t)` for `a ≤ 1` in closed form; `part` selects
    /// the dominant or long-term piece of the first zone. `t = 0` gives the
    /// projection kernel.
    pub fn zonal(
        flow: Flow,
        a: usize,
        t: f64,
        params: &MagneticParams,
        part: ZonalPart,
    ) -> Result<Self> {
        let (forms, amp, q) = Self::zonal_base(flow, t, params)?;
        let poly = match (a, part) {
            (0, ZonalPart::LongTerm) => {
                return Ok(Self::with_parts(
                    params,
                    forms,
                    c(T::zero(), T::zero()),
                    KernelPoly::One,
                ));
            }
            (0, _) => KernelPoly::One,
            (1, part) => KernelPoly::FirstZone { q, part },
            _ => {
                return Err(Error::Unsupported(format!(
                    "closed-form zonal kernel for zone {a}; use the numeric convolution"
                )))
            }
        };
        Ok(Self::with_parts(params, forms, amp, poly))
    }

    /// Dominant kernel `L_a^{(k/2-1)}(Σλ|X-Y|²) · d_σ^{(0)}(t)` for any zone.
    pub fn dominant(flow: Flow, a: usize, t: f64, params: &MagneticParams) -> Result<Self> {
        let (forms, amp, _) = Self::zonal_base(flow, t, params)?;
        let alpha = (params.dim() / 2) as i64 - 1;
        Ok(Self::with_parts(
            params,
            forms,
            amp,
            KernelPoly::Laguerre { alpha, degree: a },
        ))
    }

    /// Applies the Hamiltonian variant: `H_Zf` multiplies by `e^{-σ t c_f}`;
    /// the Box flow `e^{σ t Box}` is `e^{-2σ t c_f}` times the `H_Z` kernel at
    /// time `2t`. `build` receives the effective `H_Z` time.
    pub fn for_variant(
        flow: Flow,
        t: f64,
        variant: &HamiltonianVariant,
        build: impl FnOnce(f64) -> Result<Self>,
    ) -> Result<Self> {
        let sigma = flow.sigma::<T>();
        let cf = T::lit(variant.field_constant);
        let tt = T::lit(t);
        match variant.kind {
            HamiltonianKind::ClassicalZeeman => build(t),
            HamiltonianKind::FieldZeeman => Ok(build(t)?.scaled((-sigma * (tt * cf)).exp())),
            HamiltonianKind::BoxLaplacian => {
                Ok(build(2.0 * t)?.scaled((-sigma * (tt * cf * T::lit(2.0))).exp()))
            }
        }
    }
}

fn points_ok(params: &MagneticParams, x: usize, y: usize) -> Result<()> {
    params.check_point(x)?;
    params.check_point(y)
}

/// `δ^{(a)}(X, Y)`.
pub fn projection_kernel<T: Real>(
    a: usize,
    x: &[T],
    y: &[T],
    params: &MagneticParams,
) -> Result<Cx<T>> {
    points_ok(params, x.len(), y.len())?;
    Kernel::projection(a, params).eval(x, y)
}

/// Irreducible-zone projection kernel.
pub fn irreducible_projection_kernel<T: Real>(
    tuple: &[usize],
    x: &[T],
    y: &[T],
    params: &MagneticParams,
) -> Result<Cx<T>> {
    points_ok(params, x.len(), y.len())?;
    Kernel::irreducible_projection(tuple, params)?.eval(x, y)
}

/// `d_σ(t, X, Y)`.
pub fn global_kernel<T: Real>(
    flow: Flow,
    t: f64,
    x: &[T],
    y: &[T],
    params: &MagneticParams,
) -> Result<Cx<T>> {
    points_ok(params, x.len(), y.len())?;
    Kernel::global(flow, t, params)?.eval(x, y)
}

/// `d_σ^{(a)}(t, X, Y)` for `a ≤ 1` with the dominant/long-term split.
pub fn zonal_kernel_closed<T: Real>(
    flow: Flow,
    a: usize,
    t: f64,
    x: &[T],
    y: &[T],
    params: &MagneticParams,
) -> Result<KernelValue<T>> {
    points_ok(params, x.len(), y.len())?;
    let k = Kernel::zonal(flow, a, t, params, ZonalPart::Full)?;
    let v = k.eval_split(x, y)?;
    if a == 0 {
        let zero = Cx::new(T::zero(), T::zero());
        return Ok(KernelValue {
            value: v.value,
            dominant: Some(v.value),
            long_term: Some(zero),
        });
    }
    Ok(v)
}

/// `D_σ^{(a)}(t, X, Y)`.
pub fn dominant_kernel<T: Real>(
    flow: Flow,
    a: usize,
    t: f64,
    x: &[T],
    y: &[T],
    params: &MagneticParams,
) -> Result<Cx<T>> {
    points_ok(params, x.len(), y.len())?;
    Kernel::dominant(flow, a, t, params)?.eval(x, y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::core_math::exact::binomial_u128;
    use std::f64::consts::PI;

    fn p(lambda: f64, k: usize) -> MagneticParams {
        MagneticParams::single(lambda, k).unwrap()
    }

    #[test]
    fn projection_examples() {
        let pr = p(1.0, 2);
        let v = projection_kernel(0, &[0.0, 0.0], &[0.0, 0.0], &pr).unwrap();
        assert!((v.re - 1.0 / PI).abs() < 1e-15 && v.im == 0.0);
        let v = projection_kernel(1, &[1.0, 0.0], &[0.0, 0.0], &pr).unwrap();
        assert!(v.norm() < 1e-15);
        // Hermitian symmetry
        let x = [0.3, -0.7];
        let y = [1.1, 0.4];
        for a in 0..4 {
            let u = projection_kernel(a, &x, &y, &p(2.0, 2)).unwrap();
            let w = projection_kernel(a, &y, &x, &p(2.0, 2)).unwrap();
            assert!((u - w.conj()).norm() < 1e-14);
        }
    }

    #[test]
    fn irreducible_sum_is_gross() {
        let pr = p(1.5, 4);
        let x = [0.3, -0.2, 0.5, 0.1];
        let y = [-0.4, 0.6, 0.2, -0.3];
        for a in 0..4usize {
            let mut s = Cx::new(0.0, 0.0);
            for a1 in 0..=a {
                s += irreducible_projection_kernel(&[a1, a - a1], &x, &y, &pr).unwrap();
            }
            let g = projection_kernel(a, &x, &y, &pr).unwrap();
            assert!((s - g).norm() < 1e-13 * (1.0 + g.norm()));
        }
        assert_eq!(
            irreducible_projection_kernel(&[0, 0], &x, &y, &pr).unwrap(),
            projection_kernel(0, &x, &y, &pr).unwrap()
        );
        assert!(irreducible_projection_kernel(&[0], &x, &y, &pr).is_err());
    }

    #[test]
    fn global_examples() {
        let pr = p(1.0, 2);
        let v = global_kernel(Flow::WienerKac, 1.0, &[1.0, 0.0], &[0.0, 0.0], &pr).unwrap();
        let expect = (-(1.0f64.cosh() / 1.0f64.sinh()) / 2.0).exp() / (2.0 * PI * 1.0f64.sinh());
        assert!((v.re - expect).abs() < 1e-15 && v.im.abs() < 1e-15);
        let x = [0.4, -1.2];
        let d = global_kernel(Flow::DiracFeynman, 0.7, &x, &x, &pr).unwrap();
        assert!((d.norm() - 1.0 / (2.0 * PI * 0.7f64.sin())).abs() < 1e-13);
        let x4 = [0.4, -1.2, 0.3, 0.9];
        let w = global_kernel(Flow::WienerKac, 0.7, &x4, &x4, &p(2.0, 4)).unwrap();
        assert!((w.re - (2.0 / (2.0 * PI * 1.4f64.sinh())).powi(2)).abs() < 1e-14);
        assert!(matches!(
            global_kernel(Flow::DiracFeynman, PI, &x, &x, &pr),
            Err(Error::SingularTime { .. })
        ));
    }

    #[test]
    fn zonal_examples() {
        let pr = p(1.0, 2);
        let v =
            zonal_kernel_closed(Flow::WienerKac, 0, 1.0, &[0.0, 0.0], &[0.0, 0.0], &pr).unwrap();
        assert!((v.value.re - (-1.0f64).exp() / PI).abs() < 1e-15);
        let x = [0.5, 0.2];
        let y = [-0.3, 0.8];
        for a in 0..2 {
            let z = zonal_kernel_closed(Flow::WienerKac, a, 0.0, &x, &y, &pr).unwrap();
            let d = projection_kernel(a, &x, &y, &pr).unwrap();
            assert!((z.value - d).norm() < 1e-15);
            // long-term part vanishes at t = 0
            assert_eq!(z.long_term.unwrap().norm(), 0.0);
        }
        assert!(matches!(
            zonal_kernel_closed(Flow::WienerKac, 2, 1.0, &x, &y, &pr),
            Err(Error::Unsupported(_))
        ));
        let z = zonal_kernel_closed(Flow::DiracFeynman, 1, 0.4, &x, &y, &pr).unwrap();
        assert!((z.value - z.dominant.unwrap() - z.long_term.unwrap()).norm() < 1e-15);
    }

    #[test]
    fn dominant_diagonal() {
        let pr = p(1.0, 4);
        let x = [0.1, 0.2, -0.3, 0.4];
        for a in 0..4 {
            let d = dominant_kernel(Flow::WienerKac, a, 0.6, &x, &x, &pr).unwrap();
            let z0 = zonal_kernel_closed(Flow::WienerKac, 0, 0.6, &x, &x, &pr)
                .unwrap()
                .value;
            assert!((d - z0 * binomial_u128(a as u64 + 1, a as u64) as f64).norm() < 1e-14);
        }
        let d0 = dominant_kernel(Flow::WienerKac, 0, 0.6, &x, &x, &pr).unwrap();
        assert_eq!(
            d0,
            zonal_kernel_closed(Flow::WienerKac, 0, 0.6, &x, &x, &pr)
                .unwrap()
                .value
        );
    }
}
