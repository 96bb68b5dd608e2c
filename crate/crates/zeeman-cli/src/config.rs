//! Run configuration: one JSON file, every field optional.

use crate::error::CliError;
use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};
use zeeman::verify::VerifyConfig;
use zeeman::{Block, FieldConstantMode, Flow, HamiltonianKind, HamiltonianVariant, MagneticParams};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct HamiltonianConfig {
    pub kind: HamiltonianKind,
    pub field_constant: FieldConstantMode,
}

impl Default for HamiltonianConfig {
    fn default() -> Self {
        Self {
            kind: HamiltonianKind::ClassicalZeeman,
            field_constant: FieldConstantMode::BoxConstant,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OutputConfig {
    pub path: Option<PathBuf>,
    pub format: Option<Format>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SpectrumConfig {
    /// Largest holomorphic degree per block.
    pub max_p: u64,
    /// Gross zones to list.
    pub zones: Vec<u64>,
}

impl Default for SpectrumConfig {
    fn default() -> Self {
        Self {
            max_p: 6,
            zones: vec![0, 1, 2, 3],
        }
    }
}

/// Evaluation points: every `x` is paired with every `y`. Empty lists mean
/// `x = s·e₁` for `s ∈ {0, 0.25, …, 1}` and `y = 0`.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GridConfig {
    pub x: Vec<Vec<f64>>,
    pub y: Vec<Vec<f64>>,
}

impl GridConfig {
    pub fn pairs(&self, dim: usize) -> Vec<(Vec<f64>, Vec<f64>)> {
        let xs = if self.x.is_empty() {
            (0..=4)
                .map(|i| {
                    let mut v = vec![0.0; dim];
                    v[0] = 0.25 * i as f64;
                    v
                })
                .collect()
        } else {
            self.x.clone()
        };
        let ys = if self.y.is_empty() {
            vec![vec![0.0; dim]]
        } else {
            self.y.clone()
        };
        xs.iter()
            .flat_map(|x| ys.iter().map(move |y| (x.clone(), y.clone())))
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct KernelConfig {
    pub flow: Flow,
    pub zone: usize,
    pub times: Vec<f64>,
    pub grid: GridConfig,
}

impl Default for KernelConfig {
    fn default() -> Self {
        Self {
            flow: Flow::WienerKac,
            zone: 0,
            times: vec![0.5, 1.0],
            grid: GridConfig::default(),
        }
    }
}

/// Times as an explicit list, or `count` evenly spaced values in
/// `[start, stop]` when `times` is empty.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PartitionConfig {
    pub flow: Flow,
    pub zone: usize,
    pub times: Vec<f64>,
    pub start: f64,
    pub stop: f64,
    pub count: usize,
    /// Degree ladder for the trace column.
    pub trace_ladder: Vec<usize>,
}

impl Default for PartitionConfig {
    fn default() -> Self {
        Self {
            flow: Flow::WienerKac,
            zone: 0,
            times: Vec::new(),
            start: 0.25,
            stop: 2.0,
            count: 8,
            trace_ladder: vec![6, 8, 10],
        }
    }
}

impl PartitionConfig {
    pub fn sweep(&self) -> Vec<f64> {
        if !self.times.is_empty() {
            return self.times.clone();
        }
        match self.count {
            0 => Vec::new(),
            1 => vec![self.start],
            n => (0..n)
                .map(|i| self.start + (self.stop - self.start) * i as f64 / (n - 1) as f64)
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ZetaConfig {
    pub zone: usize,
    pub s: Vec<f64>,
    /// Per-block holomorphic degree cut-off of the direct sum.
    pub truncation: usize,
    /// Adds the exact Hurwitz tail beyond the cut-off (single block only).
    pub tail: bool,
}

impl Default for ZetaConfig {
    fn default() -> Self {
        Self {
            zone: 0,
            s: vec![2.0, 2.5, 3.0, 4.0],
            truncation: 400,
            tail: true,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PathintConfig {
    pub flow: Flow,
    pub zone: usize,
    pub horizon: f64,
    pub slices: Vec<usize>,
    /// Start point; the origin when empty.
    pub start: Vec<f64>,
    /// End point; the origin when empty. `pinned = false` leaves it free.
    pub end: Vec<f64>,
    pub pinned: bool,
    /// Per-axis Gauss-Hermite degree.
    pub degree: usize,
}

impl Default for PathintConfig {
    fn default() -> Self {
        Self {
            flow: Flow::WienerKac,
            zone: 0,
            horizon: 1.0,
            slices: vec![1, 2, 3, 4],
            start: Vec::new(),
            end: Vec::new(),
            pinned: true,
            degree: 8,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub params: MagneticParams,
    pub hamiltonian: HamiltonianConfig,
    /// Gauss-Hermite degree for kernel convolutions.
    pub quad_degree: usize,
    pub output: OutputConfig,
    pub spectrum: SpectrumConfig,
    pub kernel: KernelConfig,
    pub partition: PartitionConfig,
    pub zeta: ZetaConfig,
    pub pathint: PathintConfig,
    /// Harness settings; the suites use their own parameter grids.
    pub verify: VerifyConfig,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            params: MagneticParams::new(vec![Block { lambda: 1.0, k: 2 }])
                .expect("default parameters are valid"),
            hamiltonian: HamiltonianConfig::default(),
            quad_degree: 40,
            output: OutputConfig::default(),
            spectrum: SpectrumConfig::default(),
            kernel: KernelConfig::default(),
            partition: PartitionConfig::default(),
            zeta: ZetaConfig::default(),
            pathint: PathintConfig::default(),
            verify: VerifyConfig::default(),
        }
    }
}

impl RunConfig {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let de = &mut serde_json::Deserializer::from_str(text);
        serde_path_to_error::deserialize(de).map_err(|e| CliError::Config {
            path: e.path().to_string(),
            line: e.inner().line(),
            column: e.inner().column(),
            message: e.inner().to_string(),
        })
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn variant(&self) -> HamiltonianVariant {
        HamiltonianVariant::new(
            self.hamiltonian.kind,
            self.hamiltonian.field_constant,
            &self.params,
        )
    }
}
