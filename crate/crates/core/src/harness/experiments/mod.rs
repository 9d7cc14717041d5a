//! Experiment protocols. Each is a pure function of its config and seeds.

mod mimic;
mod real;
mod scaling;
mod sparse;

use std::path::PathBuf;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::record::ResultRecord;
use crate::error::{Error, Result};
use crate::rff::{fit_closed_form, fit_sgd, Dataset, FeatureMap, FitOptions, RffModel, SgdOptions, Solver};
use crate::sampling::{sample, FrequencySample, GridParams, SamplingConfig, SamplingSource, Strategy};

pub use mimic::{run_mimic, MimicConfig};
pub use real::{run_real_dataset, RealDatasetConfig, VqcComparison};
pub use scaling::{run_scaling_protocol, ScalingConfig, ScalingOutcome, ScalingSelection};
pub use sparse::{run_sparse_target, SparseTargetConfig};

/// Sample counts to sweep, given directly or as fractions of the frequency population.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Sweep {
    Samples(Vec<usize>),
    Fractions(Vec<f64>),
}

impl Sweep {
    pub fn is_empty(&self) -> bool {
        match self {
            Sweep::Samples(v) => v.is_empty(),
            Sweep::Fractions(v) => v.is_empty(),
        }
    }

    /// `(D, D / population)` pairs; fractions round to the nearest count, at least 1.
    pub fn resolve(&self, population: usize) -> Result<Vec<(usize, f64)>> {
        if self.is_empty() {
            return Err(Error::Config("sweep is empty".into()));
        }
        let frac = |d: usize| d as f64 / population.max(1) as f64;
        match self {
            Sweep::Samples(v) => v
                .iter()
                .map(|&d| {
                    if d == 0 {
                        Err(Error::Config("sweep sample count must be at least 1".into()))
                    } else {
                        Ok((d, frac(d)))
                    }
                })
                .collect(),
            Sweep::Fractions(v) => v
                .iter()
                .map(|&f| {
                    if f.is_finite() && f > 0.0 {
                        let d = ((f * population as f64).round() as usize).max(1);
                        Ok((d, frac(d)))
                    } else {
                        Err(Error::Config(format!("sweep fraction must be positive, got {f}")))
                    }
                })
                .collect(),
        }
    }
}

/// A strategy with optional per-strategy sampling settings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum StrategySpec {
    Name(Strategy),
    Detailed(StrategyOptions),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StrategyOptions {
    pub strategy: Strategy,
    /// Name used in result records; defaults to the strategy name.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub replacement: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid: Option<GridParams>,
    #[serde(default)]
    pub all_pairs: bool,
    /// Replaces the experiment sweep for this strategy.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sweep: Option<Sweep>,
}

impl StrategySpec {
    pub fn options(&self) -> StrategyOptions {
        match self {
            StrategySpec::Name(s) => StrategyOptions {
                strategy: *s,
                label: None,
                replacement: None,
                grid: None,
                all_pairs: false,
                sweep: None,
            },
            StrategySpec::Detailed(o) => o.clone(),
        }
    }
}

pub fn all_strategies() -> Vec<StrategySpec> {
    Strategy::ALL.iter().map(|&s| StrategySpec::Name(s)).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    /// Closed form, primal or dual by shape.
    #[default]
    Auto,
    Primal,
    Dual,
    Adam,
}

fn default_lambda0() -> f64 {
    1e-8
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FitConfig {
    #[serde(default = "default_lambda0")]
    pub lambda0: f64,
    #[serde(default)]
    pub method: Method,
    /// Adam settings; the seed is replaced per task.
    #[serde(default)]
    pub sgd: SgdOptions,
    #[serde(default = "default_dense_cap")]
    pub dense_cap: usize,
}

fn default_dense_cap() -> usize {
    crate::rff::DEFAULT_DENSE_CAP
}

impl Default for FitConfig {
    fn default() -> Self {
        Self {
            lambda0: default_lambda0(),
            method: Method::Auto,
            sgd: SgdOptions::default(),
            dense_cap: default_dense_cap(),
        }
    }
}

impl FitConfig {
    pub fn fit(&self, map: &FeatureMap, data: &Dataset, seed: u64) -> Result<RffModel> {
        let solver = match self.method {
            Method::Adam => {
                let opts = SgdOptions { seed, ..self.sgd };
                return Ok(fit_sgd(map, data, self.lambda0, opts)?.model);
            }
            Method::Auto => Solver::Auto,
            Method::Primal => Solver::Primal,
            Method::Dual => Solver::Dual,
        };
        let opts = FitOptions {
            solver,
            dense_cap: self.dense_cap,
        };
        fit_closed_form(map, data, self.lambda0, opts)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ExperimentKind {
    Mimic(MimicConfig),
    SparseTarget(SparseTargetConfig),
    RealDataset(RealDatasetConfig),
    ScalingProtocol(ScalingConfig),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub id: String,
    #[serde(flatten)]
    pub kind: ExperimentKind,
    pub seeds: Vec<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
    /// Wall time breaks byte-identical reruns, so it is opt-in.
    #[serde(default)]
    pub record_wall_time: bool,
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        if self.seeds.is_empty() {
            return Err(Error::Config("experiment needs at least one seed".into()));
        }
        let sweep_empty = match &self.kind {
            ExperimentKind::Mimic(c) => c.sweep.is_empty(),
            ExperimentKind::SparseTarget(c) => c.sweep.is_empty(),
            ExperimentKind::RealDataset(c) => c.sweep.is_empty(),
            ExperimentKind::ScalingProtocol(c) => c.fractions.as_ref().is_some_and(|f| f.is_empty()),
        };
        if sweep_empty {
            return Err(Error::Config("experiment sweep is empty".into()));
        }
        Ok(())
    }

    pub fn kind_name(&self) -> &'static str {
        match self.kind {
            ExperimentKind::Mimic(_) => "mimic",
            ExperimentKind::SparseTarget(_) => "sparse_target",
            ExperimentKind::RealDataset(_) => "real_dataset",
            ExperimentKind::ScalingProtocol(_) => "scaling_protocol",
        }
    }
}

/// Runs whichever protocol `cfg` names. Real-dataset runs need `csv`.
pub fn run_experiment(cfg: &ExperimentConfig, csv: Option<&std::path::Path>) -> Result<Vec<ResultRecord>> {
    cfg.validate()?;
    match &cfg.kind {
        ExperimentKind::Mimic(_) => run_mimic(cfg),
        ExperimentKind::SparseTarget(_) => run_sparse_target(cfg),
        ExperimentKind::RealDataset(c) => {
            let path = csv
                .map(PathBuf::from)
                .or_else(|| c.path.clone())
                .ok_or_else(|| Error::Config("real_dataset experiment needs a CSV path".into()))?;
            run_real_dataset(cfg, &path)
        }
        ExperimentKind::ScalingProtocol(_) => run_scaling_protocol(cfg).map(|o| o.records),
    }
}

/// Shared inputs of an RFF sweep over strategies and sample counts for one seed.
pub(crate) struct SweepTask<'a> {
    pub experiment: &'a ExperimentConfig,
    pub strategies: &'a [StrategySpec],
    pub sweep: &'a Sweep,
    pub fit: &'a FitConfig,
    pub source: &'a SamplingSource<'a>,
    /// Default grid when a Grid strategy has none.
    pub grid: &'a GridParams,
    /// `|Ω₊|` for fraction bookkeeping.
    pub population: usize,
    pub seed: u64,
    pub train: &'a Dataset,
    pub test: Option<&'a Dataset>,
    pub classification: bool,
}

pub(crate) fn accuracy(pred: &nalgebra::DVector<f64>, labels: &nalgebra::DVector<f64>) -> f64 {
    let hits = pred
        .iter()
        .zip(labels.iter())
        .filter(|(p, y)| (p.is_sign_negative() && **y < 0.0) || (!p.is_sign_negative() && **y >= 0.0))
        .count();
    hits as f64 / labels.len().max(1) as f64
}

/// Fits every `(strategy, D)` pair. Sweeps are nested: one draw of the largest
/// `D` per strategy, and each smaller `D` uses its leading rows.
pub(crate) fn run_sweep(task: &SweepTask<'_>) -> Result<Vec<ResultRecord>> {
    let mut jobs = Vec::new();
    for (si, spec) in task.strategies.iter().enumerate() {
        let opts = spec.options();
        let sweep = opts.sweep.as_ref().unwrap_or(task.sweep);
        let points = sweep.resolve(task.population)?;
        let d_max = points.iter().map(|p| p.0).max().unwrap_or(1);
        let mut cfg = SamplingConfig::new(opts.strategy, d_max, crate::rng::derive_seed(task.seed, si as u64 + 1));
        cfg.replacement = opts.replacement;
        cfg.all_pairs = opts.all_pairs;
        if opts.strategy == Strategy::Grid {
            cfg.grid = Some(opts.grid.clone().unwrap_or_else(|| task.grid.clone()));
        }
        let label = opts.label.clone().unwrap_or_else(|| opts.strategy.name().to_owned());
        let drawn = sample(&cfg, task.source)?;
        for (d, fraction) in points {
            jobs.push((label.clone(), cfg.clone(), drawn.clone(), d, fraction));
        }
    }
    jobs.par_iter()
        .enumerate()
        .map(|(j, (label, cfg, drawn, d, fraction))| {
            let start = Instant::now();
            let rows = drawn.len().min(*d);
            let freqs = FrequencySample::from_rows(drawn.dims(), &drawn.to_rows()[..rows])?;
            let map = FeatureMap::new(freqs)?;
            let fit_seed = crate::rng::derive_seed(task.seed, 1000 + j as u64);
            let mut rec = ResultRecord::new(&task.experiment.id, label, *d, *fraction, task.seed)
                .meta("sampling", serde_json::to_string(cfg)?)
                .meta("prefix", rows);
            match task.fit.fit(&map, task.train, fit_seed) {
                Ok(model) => {
                    let pred = model.predict(&task.train.inputs)?;
                    rec.train_mse = Some(task.train.mse(&pred));
                    if task.classification {
                        rec.metadata
                            .insert("train_accuracy".into(), accuracy(&pred, &task.train.targets).to_string());
                    }
                    if let Some(test) = task.test {
                        let pred = model.predict(&test.inputs)?;
                        rec.test_mse = Some(test.mse(&pred));
                        if task.classification {
                            rec.accuracy = Some(accuracy(&pred, &test.targets));
                        }
                    }
                    rec.metadata.insert("solver".into(), serde_json::to_string(&model.meta)?);
                }
                Err(Error::DivergedTraining { epoch }) => {
                    rec.diverged = true;
                    rec.metadata.insert("diverged_epoch".into(), epoch.to_string());
                }
                Err(e) => return Err(e),
            }
            if task.experiment.record_wall_time {
                rec.wall_time = Some(start.elapsed().as_secs_f64());
            }
            Ok(rec)
        })
        .collect()
}

/// Uniform points on `[0, x_max)`.
pub(crate) fn uniform_points(x_max: &[f64], count: usize, seed: u64) -> nalgebra::DMatrix<f64> {
    use rand::Rng;
    let mut rng = crate::rng::rng_from_seed(seed);
    let d = x_max.len();
    let mut data = Vec::with_capacity(count * d);
    for _ in 0..count {
        for &x in x_max {
            data.push(rng.random_range(0.0..x));
        }
    }
    nalgebra::DMatrix::from_row_slice(count, d, &data)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sweep_resolution() {
        let s = Sweep::Fractions(vec![0.1, 0.5, 1.0]);
        assert_eq!(s.resolve(21).unwrap(), vec![(2, 2.0 / 21.0), (11, 11.0 / 21.0), (21, 1.0)]);
        assert!(Sweep::Samples(vec![]).resolve(3).is_err());
        assert!(Sweep::Samples(vec![0]).resolve(3).is_err());
        assert!(Sweep::Fractions(vec![-0.1]).resolve(3).is_err());
    }

    #[test]
    fn config_parsing() {
        let text = r#"{
            "id": "m", "kind": "mimic", "seeds": [1, 2],
            "generator": {"pool": [{"hamiltonian": {"qubits": 1, "pauli_terms": [{"coeff": 0.5, "ops": [[0, "Z"]]}]}}],
                          "gates_per_dim": 3, "dims": 1},
            "strategies": ["distinct", {"strategy": "grid", "replacement": false, "label": "grid-nr"}],
            "sweep": {"fractions": [0.5, 1.0]}
        }"#;
        let cfg: ExperimentConfig = serde_json::from_str(text).unwrap();
        cfg.validate().unwrap();
        assert_eq!(cfg.kind_name(), "mimic");
        let bad = text.replace("[1, 2]", "[]");
        let cfg: ExperimentConfig = serde_json::from_str(&bad).unwrap();
        assert!(matches!(cfg.validate(), Err(Error::Config(_))));
    }

    #[test]
    fn accuracy_thresholds_at_zero() {
        let p = nalgebra::DVector::from_vec(vec![0.3, -0.2, 0.0, -1.0]);
        let y = nalgebra::DVector::from_vec(vec![1.0, 1.0, 1.0, -1.0]);
        assert_eq!(accuracy(&p, &y), 0.75);
    }
}
