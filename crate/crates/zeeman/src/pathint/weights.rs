//! Feynman-Kac and Radon-Nikodym weights on sliced paths.

use crate::kernels::Flow;
use crate::{Error, MagneticParams, Result, C64};
use serde::{Deserialize, Serialize};

/// Discretisation of `∫_0^T |ω(τ)|² dτ` on the slice grid.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ActionRule {
    /// `Σ_{j<n} (T/n)|m_j|²`.
    #[default]
    LeftRiemann,
    /// `Σ_j w_j |m_j|²` with half weights at both ends.
    Trapezoid,
}

impl ActionRule {
    /// Weight of `|m_j|²` for `j = 0..=n`.
    pub fn coefficients(self, slices: usize, horizon: f64) -> Vec<f64> {
        let h = horizon / slices as f64;
        (0..=slices)
            .map(|j| match self {
                ActionRule::LeftRiemann => {
                    if j < slices {
                        h
                    } else {
                        0.0
                    }
                }
                ActionRule::Trapezoid => {
                    if j == 0 || j == slices {
                        h / 2.0
                    } else {
                        h
                    }
                }
            })
            .collect()
    }
}

/// Which form of the Feynman-Kac exponent to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WeightConvention {
    /// `σ Σ_i λ_i(-k_i T/2 - 2∫|ω_i|²)`, under which the chain picks up an
    /// extra factor `e^{-σ Σ λ_i k_i T}`.
    Uncorrected,
    /// `σ Σ_i (λ_i k_i T/2 - 2λ_i² ∫|ω_i|²)`, under which the `δ^{(0)}` chain
    /// converges to the zonal kernel.
    #[default]
    Corrected,
}

impl WeightConvention {
    /// `(constant, coefficient of ∫|ω_i|²)` of the exponent for one block,
    /// before the flow factor.
    pub fn parts(self, lambda: f64, k: usize, horizon: f64) -> (f64, f64) {
        let kf = k as f64;
        match self {
            WeightConvention::Uncorrected => (-lambda * kf * horizon / 2.0, -2.0 * lambda),
            WeightConvention::Corrected => (lambda * kf * horizon / 2.0, -2.0 * lambda * lambda),
        }
    }
}

fn block_actions(
    path: &[C64],
    k: usize,
    horizon: f64,
    params: &MagneticParams,
    rule: ActionRule,
) -> Result<Vec<C64>> {
    if k != params.dim() || !path.len().is_multiple_of(k) || path.len() < 2 * k {
        return Err(Error::DimensionMismatch {
            expected: params.dim(),
            got: k,
        });
    }
    let slices = path.len() / k - 1;
    let coeffs = rule.coefficients(slices, horizon);
    Ok(params
        .ranges()
        .iter()
        .map(|r| {
            coeffs
                .iter()
                .enumerate()
                .fold(C64::new(0.0, 0.0), |acc, (j, c)| {
                    acc + r
                        .clone()
                        .map(|i| path[j * k + i] * path[j * k + i])
                        .sum::<C64>()
                        * *c
                })
        })
        .collect())
}

/// Feynman-Kac weight of a sliced path (`n + 1` points of length `k`, laid
/// out contiguously). Squares are bilinear so complex points are allowed.
pub fn feynman_kac_weight(
    flow: Flow,
    path: &[C64],
    k: usize,
    horizon: f64,
    params: &MagneticParams,
    convention: WeightConvention,
    rule: ActionRule,
) -> Result<C64> {
    let actions = block_actions(path, k, horizon, params, rule)?;
    let mut e = C64::new(0.0, 0.0);
    for (b, a) in params.blocks().iter().zip(actions) {
        let (c0, c1) = convention.parts(b.lambda, b.k, horizon);
        e += a * c1 + c0;
    }
    Ok((flow.sigma::<f64>() * e).exp())
}

/// Radon-Nikodym factor `dw_i/dw_1` on a sliced path: the ratio of the
/// Schrödinger and heat Feynman-Kac weights of the same convention,
/// `exp((1-i)·(-exponent))`.
pub fn radon_nikodym_weight(
    path: &[C64],
    k: usize,
    horizon: f64,
    params: &MagneticParams,
    convention: WeightConvention,
    rule: ActionRule,
) -> Result<C64> {
    let actions = block_actions(path, k, horizon, params, rule)?;
    let mut e = C64::new(0.0, 0.0);
    for (b, a) in params.blocks().iter().zip(actions) {
        let (c0, c1) = convention.parts(b.lambda, b.k, horizon);
        e += a * c1 + c0;
    }
    Ok((-e * C64::new(1.0, -1.0)).exp())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pr() -> MagneticParams {
        MagneticParams::single(1.0, 2).unwrap()
    }

    fn path(v: &[f64]) -> Vec<C64> {
        v.iter().map(|&x| C64::new(x, 0.0)).collect()
    }

    #[test]
    fn uncorrected_examples() {
        let zero = path(&[0.0; 6]);
        let w = feynman_kac_weight(
            Flow::WienerKac,
            &zero,
            2,
            1.5,
            &pr(),
            WeightConvention::Uncorrected,
            ActionRule::LeftRiemann,
        )
        .unwrap();
        assert!((w.re - (-1.5f64).exp()).abs() < 1e-15);
        let p = path(&[0.3, -0.2, 0.5, 0.1, -0.4, 0.9]);
        let d = feynman_kac_weight(
            Flow::DiracFeynman,
            &p,
            2,
            1.5,
            &pr(),
            WeightConvention::Uncorrected,
            ActionRule::Trapezoid,
        )
        .unwrap();
        assert!((d.norm() - 1.0).abs() < 1e-15);
        let h = feynman_kac_weight(
            Flow::WienerKac,
            &p,
            2,
            1.5,
            &pr(),
            WeightConvention::Uncorrected,
            ActionRule::LeftRiemann,
        )
        .unwrap();
        assert!(h.re > 0.0 && h.re < 1.0 && h.im == 0.0);
        let c = feynman_kac_weight(
            Flow::WienerKac,
            &zero,
            2,
            1.5,
            &pr(),
            WeightConvention::Corrected,
            ActionRule::LeftRiemann,
        )
        .unwrap();
        assert!((c.re - 1.5f64.exp()).abs() < 1e-14);
    }

    #[test]
    fn radon_nikodym_is_weight_ratio() {
        let p = path(&[0.3, -0.2, 0.5, 0.1, -0.4, 0.9]);
        for conv in [WeightConvention::Uncorrected, WeightConvention::Corrected] {
            for rule in [ActionRule::LeftRiemann, ActionRule::Trapezoid] {
                let wi =
                    feynman_kac_weight(Flow::DiracFeynman, &p, 2, 0.9, &pr(), conv, rule).unwrap();
                let w1 =
                    feynman_kac_weight(Flow::WienerKac, &p, 2, 0.9, &pr(), conv, rule).unwrap();
                let rn = radon_nikodym_weight(&p, 2, 0.9, &pr(), conv, rule).unwrap();
                assert!((wi - w1 * rn).norm() < 1e-14);
            }
        }
        assert_eq!(
            ActionRule::LeftRiemann.coefficients(2, 1.0),
            vec![0.5, 0.5, 0.0]
        );
        assert_eq!(
            ActionRule::Trapezoid.coefficients(2, 1.0),
            vec![0.25, 0.5, 0.25]
        );
    }
}
