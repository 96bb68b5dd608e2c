//! Chained kernel integrals over sliced paths.

use super::slicing::CylinderFunctional;
use crate::kernels::{Flow, Kernel, ZonalPart};
use crate::quadrature::{EnvelopeBuilder, LogValue, QuadRule, Slot, MAX_DIM};
use crate::{Error, MagneticParams, Result, C64};

/// Longest path (in coordinates) a chain integrand can address.
const PATH_BUFFER: usize = 3 * MAX_DIM;

/// Relative agreement required between the chain exponent and its envelope.
const ENVELOPE_TOL: f64 = 1e-9;

/// Integrand on a sliced path given as `n + 1` points of length `k`, laid out
/// contiguously. Evaluated at complex points (it must be entire).
pub type PathFn = dyn Fn(&[C64], usize) -> LogValue<f64> + Send + Sync;

/// `∫ Π_j K(m_{j-1}, m_j) · F(m) · Π_j exp(quadratic_j m_j·m_j) dm` over the
/// free path points, with the same kernel on every slice.
pub fn chain_value(
    kernel: &Kernel<f64>,
    functional: &CylinderFunctional,
    degree: usize,
) -> Result<C64> {
    let sl = &functional.slicing;
    let k = sl.start.len();
    if kernel.dim() != k {
        return Err(Error::DimensionMismatch {
            expected: kernel.dim(),
            got: k,
        });
    }
    if functional.quadratic.len() != sl.slices + 1 {
        return Err(Error::DimensionMismatch {
            expected: sl.slices + 1,
            got: functional.quadratic.len(),
        });
    }
    let n = sl.slices;
    let free = sl.free_points();
    let dim = free * k;
    if dim > MAX_DIM {
        return Err(Error::DimensionCeiling { dim, max: MAX_DIM });
    }
    let x: Vec<C64> = sl.start.iter().map(|&v| C64::new(v, 0.0)).collect();
    let y: Option<Vec<C64>> = sl
        .end
        .as_ref()
        .map(|e| e.iter().map(|&v| C64::new(v, 0.0)).collect());

    let zero = C64::new(0.0, 0.0);
    let quadratic: Vec<(usize, C64)> = functional
        .quadratic
        .iter()
        .copied()
        .enumerate()
        .filter(|&(_, c)| c != zero)
        .collect();
    // Quadratic exponent of the chain: kernel forms plus the functional's
    // per-point quadratic weights.
    let exponent = |path: &[C64]| -> C64 {
        let mut e = zero;
        for j in 0..n {
            e += kernel.exponent(&path[j * k..(j + 1) * k], &path[(j + 1) * k..(j + 2) * k]);
        }
        for &(j, c) in &quadratic {
            let p = &path[j * k..(j + 1) * k];
            e += c * p.iter().map(|v| v * v).sum::<C64>();
        }
        e
    };
    // Everything else: constant, kernel amplitudes and polynomials, and `F`.
    let prefactor = |path: &[C64]| -> C64 {
        let mut pre = functional.constant;
        for j in 0..n {
            pre *= kernel.amplitude
                * kernel.poly_value(&path[j * k..(j + 1) * k], &path[(j + 1) * k..(j + 2) * k]);
        }
        match &functional.func {
            Some(f) => pre * f(path, k).value(),
            None => pre,
        }
    };

    if free == 0 {
        let mut path = x.clone();
        path.extend_from_slice(y.as_ref().expect("pinned single slice"));
        return Ok(prefactor(&path) * exponent(&path).exp());
    }

    let slot = |j: usize| -> Slot<f64> {
        if j == 0 {
            Slot::Fixed(&x)
        } else if j == n && y.is_some() {
            Slot::Fixed(y.as_ref().expect("pinned"))
        } else {
            Slot::Var(j - 1)
        }
    };
    let mut env = EnvelopeBuilder::new(free, k);
    for j in 0..n {
        kernel.add_to_envelope(&mut env, slot(j), slot(j + 1));
    }
    for (j, c) in functional.quadratic.iter().enumerate() {
        if let Slot::Var(_) = slot(j) {
            env.add_dot(*c, slot(j), slot(j), 0..k);
        }
    }
    let rule = QuadRule::new(&env.build(), degree)?;
    let len = (n + 1) * k;
    if len > PATH_BUFFER {
        return Err(Error::DimensionCeiling {
            dim: len,
            max: PATH_BUFFER,
        });
    }
    let with_path = |u: &[C64], f: &dyn Fn(&[C64]) -> C64| -> C64 {
        let mut path = [zero; PATH_BUFFER];
        path[..k].copy_from_slice(&x);
        path[k..k + dim].copy_from_slice(u);
        if let Some(y) = &y {
            path[len - k..len].copy_from_slice(y);
        }
        f(&path[..len])
    };

    // The envelope is the chain exponent, so at the node `c + M v` the
    // exponent equals its value at the centre minus |v|²/2. Confirm this on
    // probe nodes, then integrate only the prefactor against the envelope.
    let centre = with_path(rule.center(), &exponent);
    for axis in 0..dim {
        for s in [-1.5, 0.75] {
            let mut v = vec![0.25; dim];
            v[axis] = s;
            let predicted = centre - v.iter().map(|a| a * a).sum::<f64>() / 2.0;
            let got = with_path(&rule.node(&v), &exponent);
            if (got - predicted).norm() > ENVELOPE_TOL * (1.0 + centre.norm()) {
                return Err(Error::Domain(format!(
                    "chain exponent departs from its envelope by {:e}",
                    (got - predicted).norm()
                )));
            }
        }
    }
    let weighted = if functional.func.is_none() && kernel.poly_is_one() {
        let pre = functional.constant * kernel.amplitude.powi(n as i32);
        rule.integrate_weighted(|_| pre)?
    } else {
        rule.integrate_weighted(|u| with_path(u, &prefactor))?
    };
    Ok(weighted * centre.exp())
}

/// `W_{σ,n}^{T(a)}(F)`: chain of zonal kernels `d_σ^{(a)}(T/n)` for `a ≤ 1`,
/// Lebesgue measure on the intermediate points.
pub fn cylinder_value(
    flow: Flow,
    zone: usize,
    functional: &CylinderFunctional,
    params: &MagneticParams,
    degree: usize,
) -> Result<C64> {
    functional.slicing.validate(flow, params)?;
    if zone > 1 {
        return Err(Error::Unsupported(format!(
            "path chains for zone {zone} need a closed zonal kernel (zones 0 and 1)"
        )));
    }
    let kernel = Kernel::zonal(
        flow,
        zone,
        functional.slicing.width(),
        params,
        ZonalPart::Full,
    )?;
    chain_value(&kernel, functional, degree)
}

/// Chain of point-spread kernels `δ^{(0)}`: the measure `ν`.
pub fn nu_cylinder_value(
    functional: &CylinderFunctional,
    params: &MagneticParams,
    degree: usize,
) -> Result<C64> {
    params.check_point(functional.slicing.start.len())?;
    chain_value(&Kernel::projection(0, params), functional, degree)
}

#[cfg(test)]
mod tests {
    use super::super::slicing::TimeSlicing;
    use super::*;
    use crate::core_math::gaussian_moment_integral;
    use crate::kernels::{projection_kernel, zonal_kernel_closed};
    use std::sync::Arc;

    fn pr() -> MagneticParams {
        MagneticParams::single(1.0, 2).unwrap()
    }

    #[test]
    fn pinned_chain_reproduces_kernel() {
        let x = vec![0.3, -0.2];
        let y = vec![-0.1, 0.5];
        for flow in Flow::both() {
            for zone in 0..2 {
                let target = zonal_kernel_closed(flow, zone, 0.8, &x, &y, &pr())
                    .unwrap()
                    .value;
                for n in 1..=3 {
                    let sl = TimeSlicing::new(0.8, n, x.clone(), Some(y.clone())).unwrap();
                    let v =
                        cylinder_value(flow, zone, &CylinderFunctional::one(sl), &pr(), 6).unwrap();
                    assert!(
                        (v - target).norm() < 1e-12,
                        "{flow} zone {zone} n={n}: {v} vs {target}"
                    );
                }
            }
        }
    }

    #[test]
    fn nu_chain_and_zero() {
        let x = vec![0.0, 0.0];
        for n in 1..=3 {
            let sl = TimeSlicing::new(1.0, n, x.clone(), Some(x.clone())).unwrap();
            let v = nu_cylinder_value(&CylinderFunctional::one(sl.clone()), &pr(), 6).unwrap();
            assert!((v.re - 1.0 / std::f64::consts::PI).abs() < 1e-13);
            let z = cylinder_value(
                Flow::DiracFeynman,
                0,
                &CylinderFunctional::zero(sl),
                &pr(),
                6,
            )
            .unwrap();
            assert_eq!(z.norm(), 0.0);
        }
        let d = projection_kernel(0, &[0.4, 0.1], &[-0.3, 0.2], &pr()).unwrap();
        let sl = TimeSlicing::new(1.0, 3, vec![0.4, 0.1], Some(vec![-0.3, 0.2])).unwrap();
        let v = nu_cylinder_value(&CylinderFunctional::one(sl), &pr(), 6).unwrap();
        assert!((v - d).norm() < 1e-13);
    }

    #[test]
    fn coordinate_functional_single_slice() {
        // free endpoint, F(m) = first coordinate of m_1, zone 0 heat flow
        let x = vec![0.3, -0.4];
        let sl = TimeSlicing::new(0.7, 1, x.clone(), None).unwrap();
        let f: Arc<PathFn> =
            Arc::new(|p: &[C64], k: usize| LogValue::new(p[k], C64::new(0.0, 0.0)));
        let v = cylinder_value(
            Flow::WienerKac,
            0,
            &CylinderFunctional::new(sl, f, 1.0),
            &pr(),
            8,
        )
        .unwrap();
        // oracle: d(X,U) = amp·exp(-½|U|² + C·U + const) ⇒ ∫U_0 e^{…} = C_0/A · ∫e^{…}
        let k = Kernel::<f64>::zonal(Flow::WienerKac, 0, 0.7, &pr(), ZonalPart::Full).unwrap();
        let q = (-1.4f64).exp();
        let xc: Vec<C64> = x.iter().map(|&v| C64::new(v, 0.0)).collect();
        // C = λq (x - i J x) with J x = (-x1, x0)
        let c = vec![C64::new(q * x[0], q * x[1]), C64::new(q * x[1], -q * x[0])];
        let gauss = gaussian_moment_integral(C64::new(1.0, 0.0), &c).unwrap();
        let pre = k
            .log_value(&xc, &[C64::new(0.0, 0.0), C64::new(0.0, 0.0)])
            .value();
        let expect = pre * gauss * c[0];
        assert!((v - expect).norm() < 1e-13, "{v} vs {expect}");
    }

    #[test]
    fn constant_prefactor_shortcut_matches_general_path() {
        let x = vec![0.2, -0.1];
        let y = vec![0.4, 0.3];
        let one: Arc<PathFn> = Arc::new(|_: &[C64], _: usize| LogValue::one());
        for flow in Flow::both() {
            for pinned in [true, false] {
                let end = pinned.then(|| y.clone());
                let sl = TimeSlicing::new(0.9, 3, x.clone(), end).unwrap();
                let fast = cylinder_value(flow, 0, &CylinderFunctional::one(sl.clone()), &pr(), 6)
                    .unwrap();
                let general = cylinder_value(
                    flow,
                    0,
                    &CylinderFunctional::new(sl, one.clone(), 1.0),
                    &pr(),
                    6,
                )
                .unwrap();
                assert!(
                    (fast - general).norm() < 1e-13,
                    "{flow} pinned={pinned}: {fast} vs {general}"
                );
            }
        }
    }

    #[test]
    fn refuses_high_dimension() {
        let sl = TimeSlicing::new(1.0, 5, vec![0.0, 0.0], None).unwrap();
        assert!(matches!(
            cylinder_value(Flow::WienerKac, 0, &CylinderFunctional::one(sl), &pr(), 4),
            Err(Error::DimensionCeiling { .. })
        ));
        let sl = TimeSlicing::new(1.0, 2, vec![0.0, 0.0], None).unwrap();
        assert!(matches!(
            cylinder_value(Flow::WienerKac, 2, &CylinderFunctional::one(sl), &pr(), 4),
            Err(Error::Unsupported(_))
        ));
    }
}
