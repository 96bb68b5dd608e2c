//! Analytic action of the Zeeman Hamiltonian on the first kernel argument and
//! the evolution-equation residual.

use super::flow::Flow;
use super::kernel::{Kernel, KernelPoly};
use crate::{Cx, Error, MagneticParams, Real, Result};

/// `(H_Z)_X K(X, Y)` with `H_Z = -½(Δ + 2iλ∂_θ - λ²|X|²)`, for kernels
/// without a polynomial prefactor.
pub fn apply_zeeman_x<T: Real>(kernel: &Kernel<T>, x: &[T], y: &[T]) -> Result<Cx<T>> {
    if kernel.poly != KernelPoly::One {
        return Err(Error::Unsupported(
            "analytic derivatives need a pure Gaussian kernel".into(),
        ));
    }
    let f = kernel.eval(x, y)?;
    let zero = Cx::new(T::zero(), T::zero());
    let two = T::lit(2.0);
    let mut lap = zero;
    let mut grad2 = zero;
    let mut ang = zero;
    let mut pot = T::zero();
    for (b, r) in kernel.ranges.iter().enumerate() {
        let form = &kernel.forms[b];
        let l = kernel.lambdas[b];
        lap = lap + form.xx * (two * T::lit(kernel.ks[b] as f64));
        let mut i = r.start;
        while i < r.end {
            let (x0, x1, y0, y1) = (x[i], x[i + 1], y[i], y[i + 1]);
            // ∇_X of xy·X·Y + xjy·X·JY with JY = (-y1, y0)
            let g0 = form.xx * (two * x0) + form.xy * y0 - form.xjy * y1;
            let g1 = form.xx * (two * x1) + form.xy * y1 + form.xjy * y0;
            grad2 = grad2 + g0 * g0 + g1 * g1;
            // (JX)·∇ with JX = (-x1, x0)
            ang = ang + (g1 * x0 - g0 * x1) * l;
            pot = pot + l * l * (x0 * x0 + x1 * x1);
            i += 2;
        }
    }
    let inner = lap + grad2 + ang * Cx::new(T::zero(), two) - Cx::new(pot, T::zero());
    Ok(f * inner * T::lit(-0.5))
}

/// Relative residual of `(∂_t + σ H_Z) d_σ = 0` for the global kernel at
/// `(t, X, Y)`, with a central difference of step `h` in time.
pub fn evolution_residual(
    flow: Flow,
    t: f64,
    x: &[f64],
    y: &[f64],
    params: &MagneticParams,
    h: f64,
) -> Result<f64> {
    if !(h > 0.0 && h < t) {
        return Err(Error::Domain(format!(
            "difference step {h} must lie in (0, t)"
        )));
    }
    let kp = Kernel::<f64>::global(flow, t + h, params)?.eval(x, y)?;
    let km = Kernel::<f64>::global(flow, t - h, params)?.eval(x, y)?;
    let dt = (kp - km) / (2.0 * h);
    let hd = apply_zeeman_x(&Kernel::global(flow, t, params)?, x, y)? * flow.sigma::<f64>();
    let scale = dt.norm().max(hd.norm()).max(f64::MIN_POSITIVE);
    Ok((dt + hd).norm() / scale)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn heat_and_schrodinger_residuals() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for (lambda, k) in [(1.0, 2), (2.0, 2), (0.5, 4)] {
            let p = MagneticParams::single(lambda, k).unwrap();
            for flow in Flow::both() {
                for _ in 0..10 {
                    let t = rng.gen_range(0.4..1.2);
                    let x: Vec<f64> = (0..k).map(|_| rng.gen_range(-0.6..0.6)).collect();
                    let y: Vec<f64> = (0..k).map(|_| rng.gen_range(-0.6..0.6)).collect();
                    let r = evolution_residual(flow, t, &x, &y, &p, 1e-4).unwrap();
                    assert!(r < 1e-6, "{flow} λ={lambda} k={k} t={t}: {r}");
                }
            }
        }
    }

    #[test]
    fn flipped_phase_fails() {
        // the residual is sensitive to the sign of the X·JY phase
        let p = MagneticParams::single(1.0, 2).unwrap();
        let mut k = Kernel::<f64>::global(Flow::WienerKac, 0.5, &p).unwrap();
        k.forms[0].xjy = -k.forms[0].xjy;
        let x = [0.5, -0.3];
        let y = [-0.2, 0.7];
        let good =
            apply_zeeman_x(&Kernel::global(Flow::WienerKac, 0.5, &p).unwrap(), &x, &y).unwrap();
        let bad = apply_zeeman_x(&k, &x, &y).unwrap();
        assert!((good - bad).norm() > 1e-3);
    }
}
