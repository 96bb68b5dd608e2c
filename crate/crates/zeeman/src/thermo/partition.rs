//! `Z_σ^{(a)}(t) = Tr d_σ^{(a)}(t)` in closed form, by diagonal quadrature and
//! by truncated spectral sums.

use crate::core_math::exact::binomial_u128;
use crate::kernels::{check_time, convolve, Flow, Kernel, ZonalPart};
use crate::quadrature::{EnvelopeBuilder, LogValue, QuadRule, Slot};
use crate::spectrum::{zone_count, HamiltonianKind, HamiltonianVariant};
use crate::{Cx, Error, MagneticParams, Real, Result};
use serde::{Deserialize, Serialize};

fn one_plane<T: Real>(flow: Flow, lambda: f64, t: f64) -> Cx<T> {
    let e1 = (-flow.sigma::<T>() * T::lit(lambda * t)).exp();
    e1 / (Cx::new(T::one(), T::zero()) - e1 * e1)
}

/// `binom(a + k/2 - 1, a) · Π_i e^{-k_i λ_i t σ/2} / (1 - e^{-2λ_i t σ})^{k_i/2}`.
pub fn partition<T: Real>(flow: Flow, a: usize, t: f64, params: &MagneticParams) -> Result<Cx<T>> {
    check_time(flow, t, params, false)?;
    let mut z = Cx::new(T::lit(zone_count(a as u64, params.dim()) as f64), T::zero());
    for b in params.blocks() {
        z = z * one_plane::<T>(flow, b.lambda, t).powi((b.k / 2) as i32);
    }
    Ok(z)
}

/// Trace over one irreducible zone: the plane factors only.
pub fn partition_irreducible<T: Real>(
    flow: Flow,
    tuple: &[usize],
    t: f64,
    params: &MagneticParams,
) -> Result<Cx<T>> {
    if tuple.len() != params.planes() {
        return Err(Error::DimensionMismatch {
            expected: params.planes(),
            got: tuple.len(),
        });
    }
    let z = partition::<T>(flow, 0, t, params)?;
    Ok(z)
}

/// Partition function of the selected Hamiltonian: `H_Zf` multiplies by
/// `e^{-σ t c_f}`; the Box flow `e^{σ t Box}` uses time `2t` and `e^{-2σ t c_f}`.
pub fn partition_variant<T: Real>(
    flow: Flow,
    a: usize,
    t: f64,
    params: &MagneticParams,
    variant: &HamiltonianVariant,
) -> Result<Cx<T>> {
    let sigma = flow.sigma::<T>();
    let cf = T::lit(variant.field_constant * t);
    match variant.kind {
        HamiltonianKind::ClassicalZeeman => partition(flow, a, t, params),
        HamiltonianKind::FieldZeeman => {
            Ok(partition::<T>(flow, a, t, params)? * (-sigma * cf).exp())
        }
        HamiltonianKind::BoxLaplacian => {
            Ok(partition::<T>(flow, a, 2.0 * t, params)? * (-sigma * cf * T::lit(2.0)).exp())
        }
    }
}

/// Kernel whose diagonal is integrated by [`partition_by_trace`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TraceSource {
    /// Closed zonal kernel (`a ≤ 1`), or one of its parts.
    Closed(ZonalPart),
    /// The dominant kernel `L_a · d_σ^{(0)}`, any zone.
    Dominant,
    /// `δ^{(a)} ∘ d_σ` by inner quadrature, any zone.
    Numeric,
}

/// `∫ K(t, X, X) dX` by quadrature on the diagonal envelope, compared across
/// `degrees`.
pub fn partition_by_trace<T: Real>(
    flow: Flow,
    a: usize,
    t: f64,
    params: &MagneticParams,
    source: TraceSource,
    degrees: &[usize],
    tol: T,
) -> Result<Cx<T>> {
    check_time(flow, t, params, false)?;
    let k = params.dim();
    let zonal0 = Kernel::<T>::zonal(flow, 0, t, params, ZonalPart::Full)?;
    let mut env = EnvelopeBuilder::new(1, k);
    zonal0.add_to_envelope(&mut env, Slot::Var(0), Slot::Var(0));
    let env = env.build();
    let kernel = match source {
        TraceSource::Closed(part) => Some(Kernel::<T>::zonal(flow, a, t, params, part)?),
        TraceSource::Dominant => Some(Kernel::<T>::dominant(flow, a, t, params)?),
        TraceSource::Numeric => None,
    };
    let proj = Kernel::<T>::projection(a, params);
    let glob = if kernel.is_none() {
        Some(Kernel::<T>::global(flow, t, params)?)
    } else {
        None
    };
    let mut prev: Option<Cx<T>> = None;
    for &d in degrees {
        let rule = QuadRule::new(&env, d)?;
        let v = match (&kernel, &glob) {
            (Some(kern), _) => rule.integrate(|x| kern.log_value(x, x))?,
            (None, Some(g)) => {
                let inner_degree = (a + 2).max(d / 2);
                rule.integrate(|x| {
                    let e0 = zonal0.exponent(x, x);
                    match convolve(&proj, x, g, x, inner_degree) {
                        Ok(v) => LogValue::new(v * (-e0).exp(), e0),
                        Err(_) => LogValue::new(Cx::new(T::nan(), T::nan()), e0),
                    }
                })?
            }
            _ => unreachable!("either a closed kernel or the global kernel is present"),
        };
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

/// `Σ mult · e^{-σ t μ}` over the first `levels` values of each block's
/// holomorphic degree (`μ = ½Σλ_i(4p_i + k_i)`).
pub fn spectral_partition(
    flow: Flow,
    a: usize,
    t: f64,
    params: &MagneticParams,
    levels: usize,
) -> Result<Cx<f64>> {
    check_time(flow, t, params, false)?;
    let sigma = flow.sigma::<f64>();
    let mut total = Cx::new(zone_count(a as u64, params.dim()) as f64, 0.0);
    for b in params.blocks() {
        let m = (b.k / 2) as u64;
        let mut s = Cx::new(0.0, 0.0);
        for p in 0..levels as u64 {
            let mu = 0.5 * b.lambda * (4 * p + b.k as u64) as f64;
            s += (-sigma * (t * mu)).exp() * binomial_u128(p + m - 1, p) as f64;
        }
        total *= s;
    }
    Ok(total)
}

/// Upper bound on `|Z - spectral_partition|` for the heat flow, from
/// `binom(p+m-1, p) ≤ binom(N+m-1, N) binom(p-N+m-1, p-N)` per block.
/// Returns `None` for the Dirac-Feynman flow, whose spectral terms have unit
/// modulus and do not decay.
pub fn spectral_tail_bound(
    flow: Flow,
    a: usize,
    t: f64,
    params: &MagneticParams,
    levels: usize,
) -> Option<f64> {
    if flow == Flow::DiracFeynman {
        return None;
    }
    let mut full = zone_count(a as u64, params.dim()) as f64;
    let mut partial = full;
    for b in params.blocks() {
        let m = (b.k / 2) as u64;
        let r = (-2.0 * b.lambda * t).exp();
        let head = (-0.5 * b.lambda * b.k as f64 * t).exp();
        let whole = head / (1.0 - r).powi(m as i32);
        let n = levels as u64;
        let tail = head * binomial_u128(n + m - 1, n) as f64 * r.powi(levels as i32)
            / (1.0 - r).powi(m as i32);
        full *= whole;
        partial *= (whole - tail).max(0.0);
    }
    Some(full - partial)
}

/// `(Z^{(a)}(t), e^{Σ(4a+k_i)λ_i t} / Π(B_i(cosh 2B_i t - 1))^{k_i/2})` with
/// `B_i = λ_i`.
pub fn mehler_bound(a: usize, t: f64, params: &MagneticParams) -> Result<(f64, f64)> {
    let z = partition::<f64>(Flow::WienerKac, a, t, params)?.re;
    let mut bound = 1.0;
    for b in params.blocks() {
        let l = b.lambda;
        bound *= ((4 * a + b.k) as f64 * l * t).exp()
            / (l * ((2.0 * l * t).cosh() - 1.0)).powf(b.k as f64 / 2.0);
    }
    Ok((z, bound))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(lambda: f64, k: usize) -> MagneticParams {
        MagneticParams::single(lambda, k).unwrap()
    }

    #[test]
    fn examples() {
        let z = partition::<f64>(Flow::WienerKac, 0, 1.0, &p(1.0, 2)).unwrap();
        assert!((z.re - (-1.0f64).exp() / (1.0 - (-2.0f64).exp())).abs() < 1e-15);
        assert!((z.re - 0.4254590641196608).abs() < 1e-15);
        let z0 = partition::<f64>(Flow::WienerKac, 0, 0.7, &p(1.0, 4)).unwrap();
        let z2 = partition::<f64>(Flow::WienerKac, 2, 0.7, &p(1.0, 4)).unwrap();
        assert!((z2 - z0 * 3.0).norm() < 1e-15);
        assert!(matches!(
            partition::<f64>(Flow::DiracFeynman, 0, std::f64::consts::PI, &p(1.0, 2)),
            Err(Error::SingularTime { .. })
        ));
    }

    #[test]
    fn trace_matches_closed() {
        for (lambda, k) in [(1.0, 2), (2.0, 2), (1.0, 4)] {
            let pr = p(lambda, k);
            for flow in Flow::both() {
                for a in 0..3usize {
                    let closed = partition::<f64>(flow, a, 0.6, &pr).unwrap();
                    let src = if a <= 1 {
                        TraceSource::Closed(ZonalPart::Full)
                    } else {
                        TraceSource::Numeric
                    };
                    let tr = partition_by_trace(flow, a, 0.6, &pr, src, &[6, 8], 1e-9).unwrap();
                    assert!(
                        (tr - closed).norm() < 1e-9 * (1.0 + closed.norm()),
                        "{flow} a={a} k={k}: {tr} vs {closed}"
                    );
                    let dom =
                        partition_by_trace(flow, a, 0.6, &pr, TraceSource::Dominant, &[6, 8], 1e-9)
                            .unwrap();
                    assert!((dom - closed).norm() < 1e-9 * (1.0 + closed.norm()));
                }
                let lt = partition_by_trace(
                    flow,
                    1,
                    0.6,
                    &pr,
                    TraceSource::Closed(ZonalPart::LongTerm),
                    &[6, 8],
                    1e-9,
                )
                .unwrap();
                assert!(lt.norm() < 1e-12);
            }
        }
    }

    #[test]
    fn spectral_sum_heat() {
        for (lambda, k) in [(1.0, 2), (1.0, 4)] {
            let pr = p(lambda, k);
            let z = partition::<f64>(Flow::WienerKac, 1, 0.5, &pr).unwrap();
            let s = spectral_partition(Flow::WienerKac, 1, 0.5, &pr, 200).unwrap();
            assert!((z - s).norm() < 1e-12);
            assert!(spectral_tail_bound(Flow::WienerKac, 1, 0.5, &pr, 200).unwrap() < 1e-12);
        }
        assert!(spectral_tail_bound(Flow::DiracFeynman, 0, 0.5, &p(1.0, 2), 200).is_none());
    }

    #[test]
    fn mehler_inequality() {
        for t in [0.05, 0.3, 1.0, 3.0] {
            for a in 0..3 {
                let (z, b) = mehler_bound(a, t, &p(1.0, 2)).unwrap();
                assert!(z > 0.0 && z < b, "t={t} a={a}: {z} vs {b}");
            }
        }
    }

    #[test]
    fn variants() {
        let pr = p(1.0, 2);
        let v = HamiltonianVariant {
            kind: HamiltonianKind::FieldZeeman,
            field_constant: 4.0,
        };
        let z = partition_variant::<f64>(Flow::WienerKac, 0, 0.5, &pr, &v).unwrap();
        let base = partition::<f64>(Flow::WienerKac, 0, 0.5, &pr).unwrap();
        assert!((z - base * (-2.0f64).exp()).norm() < 1e-15);
        assert_eq!(
            partition_irreducible::<f64>(Flow::WienerKac, &[3], 0.5, &pr).unwrap(),
            base
        );
    }
}
