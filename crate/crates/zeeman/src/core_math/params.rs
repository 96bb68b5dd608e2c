//! Magnetic parameter set `{(lambda_i, k_i)}`.

use crate::{Error, Result};
use serde::{Deserialize, Serialize};

/// One block of the complex structure: `k` real dimensions rotated by `J`
/// with field strength `lambda`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Block {
    pub lambda: f64,
    pub k: usize,
}

/// Validated block list. Coordinates are laid out block after block, and
/// inside a block in planes `(x, y)` on which `J(x, y) = (-y, x)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawParams", into = "RawParams")]
pub struct MagneticParams {
    blocks: Vec<Block>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawParams {
    pub blocks: Vec<Block>,
}

impl TryFrom<RawParams> for MagneticParams {
    type Error = Error;
    fn try_from(raw: RawParams) -> Result<Self> {
        MagneticParams::new(raw.blocks)
    }
}

impl From<MagneticParams> for RawParams {
    fn from(p: MagneticParams) -> Self {
        RawParams { blocks: p.blocks }
    }
}

impl MagneticParams {
    pub fn new(blocks: Vec<Block>) -> Result<Self> {
        if blocks.is_empty() {
            return Err(Error::InvalidParams("at least one block required".into()));
        }
        for (i, b) in blocks.iter().enumerate() {
            if !(b.lambda.is_finite() && b.lambda > 0.0) {
                return Err(Error::InvalidParams(format!(
                    "blocks[{i}].lambda must be positive and finite, got {}",
                    b.lambda
                )));
            }
            if b.k == 0 || b.k % 2 != 0 {
                return Err(Error::InvalidParams(format!(
                    "blocks[{i}].k must be even and positive, got {}",
                    b.k
                )));
            }
            for (j, c) in blocks[..i].iter().enumerate() {
                if c.lambda == b.lambda {
                    return Err(Error::InvalidParams(format!(
                        "blocks[{j}] and blocks[{i}] share lambda={}; merge them into one block",
                        b.lambda
                    )));
                }
            }
        }
        Ok(Self { blocks })
    }

    /// Single block of dimension `k` with field `lambda`.
    pub fn single(lambda: f64, k: usize) -> Result<Self> {
        Self::new(vec![Block { lambda, k }])
    }

    /// Builds params after merging blocks with equal `lambda`.
    pub fn merged(blocks: Vec<Block>) -> Result<Self> {
        let mut out: Vec<Block> = Vec::new();
        for b in blocks {
            match out.iter_mut().find(|c| c.lambda == b.lambda) {
                Some(c) => c.k += b.k,
                None => out.push(b),
            }
        }
        Self::new(out)
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    /// Total real dimension `k`.
    pub fn dim(&self) -> usize {
        self.blocks.iter().map(|b| b.k).sum()
    }

    /// Number of complex planes `k/2`.
    pub fn planes(&self) -> usize {
        self.dim() / 2
    }

    /// Start offset of each block in the coordinate vector.
    pub fn offsets(&self) -> Vec<usize> {
        let mut off = 0;
        self.blocks
            .iter()
            .map(|b| {
                let o = off;
                off += b.k;
                o
            })
            .collect()
    }

    /// Coordinate ranges, one per block.
    pub fn ranges(&self) -> Vec<std::ops::Range<usize>> {
        self.offsets()
            .into_iter()
            .zip(&self.blocks)
            .map(|(o, b)| o..o + b.k)
            .collect()
    }

    /// Field strength of every complex plane.
    pub fn plane_lambdas(&self) -> Vec<f64> {
        self.blocks
            .iter()
            .flat_map(|b| std::iter::repeat_n(b.lambda, b.k / 2))
            .collect()
    }

    /// The common `lambda` when there is exactly one block.
    pub fn single_lambda(&self) -> Option<f64> {
        match self.blocks.as_slice() {
            [b] => Some(b.lambda),
            _ => None,
        }
    }

    pub fn check_point(&self, len: usize) -> Result<()> {
        if len != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: len,
            });
        }
        Ok(())
    }
}
