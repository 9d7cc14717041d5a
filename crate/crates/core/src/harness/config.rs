//! The run configuration file: one JSON document whose sections feed the
//! individual commands.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::data::PreprocessConfig;
use super::experiments::{ExperimentConfig, ExperimentKind, FitConfig};
use crate::analysis::BoundInputs;
use crate::error::{Error, Result};
use crate::sampling::SamplingConfig;
use crate::sim::{CircuitDescription, GeneratorConfig, TrainOptions};
use crate::spectrum::{EncodingLayout, SpectrumOptions, DEFAULT_ENUMERATION_CAP, DEFAULT_TOLERANCE};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LayoutConfig {
    /// `L` Pauli `Z/2` gates per dimension.
    Pauli { gates_per_dim: usize, dims: usize },
    /// Pauli gates scaled by `3^(ℓ-1)`.
    Exponential { gates_per_dim: usize, dims: usize },
    Explicit { gates: EncodingLayout },
}

impl LayoutConfig {
    pub fn build(&self) -> Result<EncodingLayout> {
        match self {
            LayoutConfig::Pauli { gates_per_dim, dims } => EncodingLayout::pauli(*gates_per_dim, *dims),
            LayoutConfig::Exponential { gates_per_dim, dims } => {
                EncodingLayout::exponential_pauli(*gates_per_dim, *dims)
            }
            LayoutConfig::Explicit { gates } => Ok(gates.clone()),
        }
    }
}

fn tolerance() -> f64 {
    DEFAULT_TOLERANCE
}

fn cap() -> usize {
    DEFAULT_ENUMERATION_CAP
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpectrumSection {
    #[serde(default = "tolerance")]
    pub tolerance: f64,
    #[serde(default = "cap")]
    pub cap: usize,
}

impl Default for SpectrumSection {
    fn default() -> Self {
        Self {
            tolerance: tolerance(),
            cap: cap(),
        }
    }
}

impl From<SpectrumSection> for SpectrumOptions {
    fn from(s: SpectrumSection) -> Self {
        SpectrumOptions {
            tolerance: s.tolerance,
            cap: s.cap,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DataSection {
    pub path: PathBuf,
    /// Standardize / PCA / rescale before use; raw columns when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub preprocess: Option<PreprocessConfig>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSection {
    pub x_max: Vec<f64>,
    /// Defaults to the Shannon minimum per dimension.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub points: Option<Vec<usize>>,
    #[serde(default)]
    pub force: bool,
}

fn one_percent() -> f64 {
    0.01
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FourierSection {
    pub x_max: Vec<f64>,
    /// Even DFT size per dimension.
    pub points: usize,
    /// Generator seeds averaged over.
    pub seeds: Vec<u64>,
    #[serde(default = "one_percent")]
    pub omega_effective_fraction: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundKind {
    /// Kernel-approximation failure probability at each sample count.
    Kernel,
    General,
    Pauli,
    Grid,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoundSection {
    pub kinds: Vec<BoundKind>,
    pub inputs: BoundInputs,
    /// Sample counts for the kernel bound.
    #[serde(default)]
    pub samples: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub layout: Option<LayoutConfig>,
    #[serde(default)]
    pub spectrum: SpectrumSection,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sampling: Option<SamplingConfig>,
    /// Frequency CSV used by `fit` instead of sampling.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub frequencies: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub data: Option<DataSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fit: Option<FitConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator: Option<GeneratorConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub circuit: Option<CircuitDescription>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theta: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid: Option<GridSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub train: Option<TrainOptions>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fourier: Option<FourierSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bound: Option<BoundSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub experiment: Option<ExperimentConfig>,
}

fn anchor(base: &Path, p: &mut PathBuf) {
    if p.is_relative() {
        *p = base.join(&*p);
    }
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    /// Resolves relative file paths against `base`.
    pub fn anchor_paths(&mut self, base: &Path) {
        if let Some(p) = &mut self.frequencies {
            anchor(base, p);
        }
        if let Some(d) = &mut self.data {
            anchor(base, &mut d.path);
        }
        if let Some(e) = &mut self.experiment {
            if let ExperimentKind::RealDataset(r) = &mut e.kind {
                if let Some(p) = &mut r.path {
                    anchor(base, p);
                }
            }
        }
    }
}

/// Reads a config file; relative paths inside it are taken from its directory.
pub fn load_config(path: &Path) -> Result<RunConfig> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Config(format!("cannot read config {}: {e}", path.display())))?;
    let mut cfg = RunConfig::from_json(&text)?;
    cfg.anchor_paths(path.parent().unwrap_or(Path::new(".")));
    Ok(cfg)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn layout_section() {
        let cfg = RunConfig::from_json(r#"{"layout": {"kind": "pauli", "gates_per_dim": 5, "dims": 4}}"#).unwrap();
        let layout = cfg.layout.unwrap().build().unwrap();
        assert_eq!(layout.dims(), 4);
        assert_eq!(cfg.spectrum, SpectrumSection::default());
    }

    #[test]
    fn unknown_keys_are_config_errors() {
        assert!(matches!(RunConfig::from_json(r#"{"layuot": {}}"#), Err(Error::Config(_))));
        assert!(matches!(load_config(Path::new("/nonexistent/x.cfg")), Err(Error::Config(_))));
    }

    #[test]
    fn relative_paths_follow_config() {
        let mut cfg = RunConfig::from_json(r#"{"data": {"path": "d.csv"}}"#).unwrap();
        cfg.anchor_paths(Path::new("/tmp/run"));
        assert_eq!(cfg.data.unwrap().path, PathBuf::from("/tmp/run/d.csv"));
    }
}
