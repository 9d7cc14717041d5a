use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::{accuracy, all_strategies, run_sweep, ExperimentConfig, ExperimentKind, FitConfig, StrategySpec, Sweep, SweepTask};
use crate::error::{Error, Result};
use crate::harness::data::{preprocess, read_csv_path, PreprocessConfig};
use crate::harness::record::ResultRecord;
use crate::rff::Dataset;
use crate::sampling::{GridParams, SamplingSource};
use crate::sim::{random_instance, train, GeneratorConfig, TrainOptions};
use crate::spectrum::{EncodingLayout, Spectrum};

fn one() -> usize {
    1
}

fn eighty() -> f64 {
    0.8
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VqcComparison {
    #[serde(default = "super::sparse::five")]
    pub qubits: usize,
    #[serde(default)]
    pub train: TrainOptions,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RealDatasetConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub path: Option<PathBuf>,
    #[serde(default)]
    pub preprocess: PreprocessConfig,
    /// Two-valued targets become ±1 and predictions are scored by sign.
    #[serde(default)]
    pub classification: bool,
    #[serde(default = "eighty")]
    pub train_fraction: f64,
    /// Pauli encoding gates per feature of the circuit being approximated.
    #[serde(default = "one")]
    pub gates_per_dim: usize,
    #[serde(default = "all_strategies")]
    pub strategies: Vec<StrategySpec>,
    pub sweep: Sweep,
    #[serde(default)]
    pub fit: FitConfig,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid: Option<GridParams>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vqc: Option<VqcComparison>,
}

fn to_signs(data: &Dataset) -> Result<Dataset> {
    let mut values: Vec<f64> = data.targets.iter().copied().collect();
    values.sort_by(f64::total_cmp);
    values.dedup();
    if values.len() != 2 {
        return Err(Error::InsufficientData(format!(
            "classification needs exactly two label values, found {}",
            values.len()
        )));
    }
    let hi = values[1];
    Dataset::new(data.inputs.clone(), data.targets.map(|y| if y == hi { 1.0 } else { -1.0 }))
}

/// CSV regression or classification: preprocessing, then RFF strategies
/// (and optionally a trained circuit) scored on a held-out split.
pub fn run_real_dataset(exp: &ExperimentConfig, csv: &Path) -> Result<Vec<ResultRecord>> {
    let ExperimentKind::RealDataset(cfg) = &exp.kind else {
        return Err(Error::Config("not a real_dataset experiment".into()));
    };
    let table = read_csv_path(csv)?;
    let mut data = preprocess(&table, &cfg.preprocess)?;
    if cfg.classification {
        data = to_signs(&data)?;
    }
    let d = data.dims();
    let l = cfg.gates_per_dim;
    let spectrum = Spectrum::pauli(l, d);
    let tree = EncodingLayout::pauli(l, d)?.eigen_tree()?;
    let population = spectrum
        .size()
        .omega_plus_usize()
        .ok_or_else(|| Error::Config("|Ω₊| too large to index".into()))?;
    let grid = cfg.grid.clone().unwrap_or_else(|| super::mimic::integer_grid(&spectrum));
    let source = SamplingSource {
        spectrum: Some(&spectrum),
        tree: Some(&tree),
        dims: d,
    };
    let mut records = Vec::new();
    for &seed in &exp.seeds {
        let (train_set, test_set) = data.split(cfg.train_fraction, crate::rng::derive_seed(seed, 0))?;
        let task = SweepTask {
            experiment: exp,
            strategies: &cfg.strategies,
            sweep: &cfg.sweep,
            fit: &cfg.fit,
            source: &source,
            grid: &grid,
            population,
            seed,
            train: &train_set,
            test: Some(&test_set),
            classification: cfg.classification,
        };
        for rec in run_sweep(&task)? {
            records.push(rec.meta("dims", d).meta("preprocess", serde_json::to_string(&cfg.preprocess)?));
        }
        if let Some(vqc) = &cfg.vqc {
            let gen = GeneratorConfig {
                qubits: vqc.qubits,
                ..GeneratorConfig::pauli(l, d, seed)
            };
            let (desc, theta0) = random_instance(&gen)?;
            let circuit = desc.compile()?;
            let opts = TrainOptions { seed, ..vqc.train };
            let start = std::time::Instant::now();
            let mut rec = ResultRecord::new(&exp.id, "vqc", circuit.parameters(), 0.0, seed)
                .meta("train", serde_json::to_string(&opts)?)
                .meta("dims", d);
            match train(&circuit, &theta0, &train_set, &opts) {
                Ok(report) => {
                    rec.train_mse = Some(report.best_loss);
                    let predict = |set: &Dataset| -> Result<nalgebra::DVector<f64>> {
                        (0..set.len())
                            .map(|i| circuit.evaluate(&report.theta, &set.point(i)))
                            .collect::<Result<Vec<f64>>>()
                            .map(Into::into)
                    };
                    let pred = predict(&test_set)?;
                    rec.test_mse = Some(test_set.mse(&pred));
                    if cfg.classification {
                        rec.accuracy = Some(accuracy(&pred, &test_set.targets));
                    }
                }
                Err(Error::DivergedTraining { epoch }) => {
                    rec.diverged = true;
                    rec = rec.meta("diverged_epoch", epoch);
                }
                Err(e) => return Err(e),
            }
            if exp.record_wall_time {
                rec.wall_time = Some(start.elapsed().as_secs_f64());
            }
            records.push(rec);
        }
    }
    Ok(records)
}
