use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use super::{all_strategies, run_sweep, ExperimentConfig, ExperimentKind, FitConfig, StrategySpec, Sweep, SweepTask};
use crate::analysis::{empirical_fourier, omega_effective};
use crate::error::{Error, Result};
use crate::harness::record::ResultRecord;
use crate::rff::Dataset;
use crate::sampling::{FrequencySample, GridParams, SamplingSource};
use crate::sim::{lattice, random_instance, train, GeneratorConfig, TrainOptions};
use crate::spectrum::Spectrum;

fn default_targets() -> Vec<f64> {
    vec![2.0, 5.0, 12.0]
}

fn default_gates() -> usize {
    40
}

fn tau() -> f64 {
    TAU
}

fn default_fourier_points() -> usize {
    0
}

fn one_percent() -> f64 {
    0.01
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SparseTargetConfig {
    /// The target is `Σ_ω cos(ωx) + sin(ωx)` over these frequencies.
    #[serde(default = "default_targets")]
    pub target_frequencies: Vec<f64>,
    /// Pauli encoding gates of the reference circuit.
    #[serde(default = "default_gates")]
    pub gates_per_dim: usize,
    #[serde(default = "five")]
    pub qubits: usize,
    #[serde(default = "tau")]
    pub x_max: f64,
    /// Training lattice size; defaults to twice the Shannon minimum of the circuit.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub points: Option<usize>,
    #[serde(default = "all_strategies")]
    pub strategies: Vec<StrategySpec>,
    pub sweep: Sweep,
    #[serde(default)]
    pub fit: FitConfig,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid: Option<GridParams>,
    /// Trains the circuit itself when present.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vqc: Option<TrainOptions>,
    /// DFT size used to measure `ω_eff` of random circuits; 0 picks the smallest even size
    /// that resolves the spectrum.
    #[serde(default = "default_fourier_points")]
    pub fourier_points: usize,
    #[serde(default = "one_percent")]
    pub omega_effective_fraction: f64,
}

pub(crate) fn five() -> usize {
    5
}

pub(crate) fn sparse_target(freqs: &[f64], x: f64) -> f64 {
    freqs.iter().map(|w| (w * x).cos() + (w * x).sin()).sum()
}

/// Dataset mean of `(cos ωx + sin ωx)²` over target frequencies the sample lacks:
/// the loss a model without them cannot remove.
fn missing_energy(targets: &[f64], sample: &[Vec<f64>], data: &Dataset) -> f64 {
    let missing: Vec<f64> = targets
        .iter()
        .copied()
        .filter(|w| !sample.iter().any(|s| (s[0].abs() - w).abs() < 1e-9))
        .collect();
    (0..data.len())
        .map(|i| sparse_target(&missing, data.inputs[(i, 0)]).powi(2))
        .sum::<f64>()
        / data.len() as f64
}

/// Sparse Fourier target fitted by all RFF strategies (and optionally the circuit)
/// on one shared lattice.
pub fn run_sparse_target(exp: &ExperimentConfig) -> Result<Vec<ResultRecord>> {
    let ExperimentKind::SparseTarget(cfg) = &exp.kind else {
        return Err(Error::Config("not a sparse_target experiment".into()));
    };
    if cfg.target_frequencies.is_empty() {
        return Err(Error::Config("target_frequencies is empty".into()));
    }
    let l = cfg.gates_per_dim;
    let spectrum = Spectrum::pauli(l, 1);
    let population = l + 1;
    let need = (cfg.x_max * l as f64 / std::f64::consts::PI + 1e-9).floor() as usize + 1;
    let m = cfg.points.unwrap_or(2 * need);
    let inputs = lattice(&[cfg.x_max], &[m])?;
    let targets: Vec<f64> = inputs.column(0).iter().map(|&x| sparse_target(&cfg.target_frequencies, x)).collect();
    let data = Dataset::new(inputs, targets.into())?;
    let layout = crate::spectrum::EncodingLayout::pauli(l, 1)?;
    let tree = layout.eigen_tree()?;
    let grid = cfg.grid.clone().unwrap_or_else(|| super::mimic::integer_grid(&spectrum));

    let generator = |seed: u64| GeneratorConfig {
        qubits: cfg.qubits,
        ..GeneratorConfig::pauli(l, 1, seed)
    };
    let n = if cfg.fourier_points == 0 {
        let min = (2.0 * l as f64 * cfg.x_max / std::f64::consts::PI).ceil() as usize;
        (min + 1) & !1
    } else {
        cfg.fourier_points
    };
    let circuits = exp
        .seeds
        .iter()
        .map(|&s| {
            let (desc, theta) = random_instance(&generator(s))?;
            Ok((s, desc.compile()?, theta))
        })
        .collect::<Result<Vec<_>>>()?;
    let emp = empirical_fourier(
        |s, x| {
            let (_, c, theta) = circuits.iter().find(|c| c.0 == s).expect("seed present");
            c.evaluate(theta, x)
        },
        &[cfg.x_max],
        n.max(2),
        &exp.seeds,
        Some(&[l as f64]),
    )?;
    let w_eff = omega_effective(&emp, cfg.omega_effective_fraction);
    let max_target = cfg.target_frequencies.iter().copied().fold(0.0, f64::max);

    let source = SamplingSource {
        spectrum: Some(&spectrum),
        tree: Some(&tree),
        dims: 1,
    };
    let mut records = Vec::new();
    for &seed in &exp.seeds {
        let task = SweepTask {
            experiment: exp,
            strategies: &cfg.strategies,
            sweep: &cfg.sweep,
            fit: &cfg.fit,
            source: &source,
            grid: &grid,
            population,
            seed,
            train: &data,
            test: None,
            classification: false,
        };
        for rec in run_sweep(&task)? {
            let sampling: crate::sampling::SamplingConfig = serde_json::from_str(&rec.metadata["sampling"])?;
            let prefix: usize = rec.metadata["prefix"].parse().unwrap_or(rec.d);
            let drawn: FrequencySample = crate::sampling::sample(&sampling, &source)?;
            let rows = drawn.to_rows();
            let energy = missing_energy(&cfg.target_frequencies, &rows[..prefix.min(rows.len())], &data);
            records.push(
                rec.meta("omega_effective", w_eff)
                    .meta("excluded_by_omega_effective", max_target > w_eff)
                    .meta("missing_energy", energy)
                    .meta("points", m),
            );
        }
        if let Some(opts) = &cfg.vqc {
            let (_, circuit, theta0) = circuits.iter().find(|c| c.0 == seed).expect("seed present");
            let start = std::time::Instant::now();
            let opts = TrainOptions { seed, ..*opts };
            let mut rec = ResultRecord::new(&exp.id, "vqc", circuit.parameters(), 0.0, seed)
                .meta("train", serde_json::to_string(&opts)?)
                .meta("omega_effective", w_eff)
                .meta("points", m);
            match train(circuit, theta0, &data, &opts) {
                Ok(report) => rec.train_mse = Some(report.best_loss),
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
