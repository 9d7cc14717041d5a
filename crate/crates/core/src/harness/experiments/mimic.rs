use serde::{Deserialize, Serialize};

use super::{all_strategies, run_sweep, uniform_points, ExperimentConfig, ExperimentKind, FitConfig, StrategySpec, Sweep, SweepTask};
use crate::error::{Error, Result};
use crate::harness::record::ResultRecord;
use crate::rff::Dataset;
use crate::sampling::{GridParams, OmegaMax, SamplingSource};
use crate::sim::{minimum_points, random_instance, sample_grid_dataset, GeneratorConfig};
use crate::spectrum::{Spectrum, SpectrumOptions};

fn default_test_points() -> usize {
    200
}

fn default_oversampling() -> usize {
    2
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MimicConfig {
    /// Random circuit generator; its seed is replaced by each experiment seed.
    pub generator: GeneratorConfig,
    #[serde(default = "all_strategies")]
    pub strategies: Vec<StrategySpec>,
    pub sweep: Sweep,
    #[serde(default)]
    pub fit: FitConfig,
    /// Defaults to `2π` per dimension.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x_max: Option<Vec<f64>>,
    /// Lattice size per dimension; defaults to `oversampling` times the Shannon minimum.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub points: Option<Vec<usize>>,
    #[serde(default = "default_oversampling")]
    pub oversampling: usize,
    /// Grid for Grid strategies without their own; defaults to step 1 up to `ω_max + 1`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid: Option<GridParams>,
    /// Off-lattice uniform points scored as the test set.
    #[serde(default = "default_test_points")]
    pub test_points: usize,
}

/// Default grid: unit step reaching one past the largest frequency of each dimension.
pub(crate) fn integer_grid(spectrum: &Spectrum) -> GridParams {
    GridParams {
        omega_max: OmegaMax::PerDim(
            spectrum
                .dimensions()
                .iter()
                .map(|d| d.max_frequency().floor() + 1.0)
                .collect(),
        ),
        step: 1.0,
    }
}

/// Random circuits fitted by RFF models on a Shannon-sized lattice of their outputs.
pub fn run_mimic(exp: &ExperimentConfig) -> Result<Vec<ResultRecord>> {
    let ExperimentKind::Mimic(cfg) = &exp.kind else {
        return Err(Error::Config("not a mimic experiment".into()));
    };
    let mut records = Vec::new();
    for &seed in &exp.seeds {
        let gen = GeneratorConfig {
            seed,
            ..cfg.generator.clone()
        };
        let (desc, theta) = random_instance(&gen)?;
        let circuit = desc.compile()?;
        let layout = desc.encoding_layout()?;
        let spectrum = Spectrum::build(&layout, SpectrumOptions::default())?;
        let tree = layout.eigen_tree()?;
        let d = circuit.dims();
        let x_max = cfg.x_max.clone().unwrap_or_else(|| vec![std::f64::consts::TAU; d]);
        let points = match &cfg.points {
            Some(p) => p.clone(),
            None => minimum_points(&circuit, &x_max)?
                .into_iter()
                .map(|p| p * cfg.oversampling.max(1))
                .collect(),
        };
        let train = sample_grid_dataset(&circuit, &theta, &x_max, &points, false)?;
        let test_inputs = uniform_points(&x_max, cfg.test_points, crate::rng::derive_seed(seed, 0));
        let test_targets = (0..test_inputs.nrows())
            .map(|i| circuit.evaluate(&theta, test_inputs.row(i).clone_owned().as_slice()))
            .collect::<Result<Vec<f64>>>()?;
        let test = Dataset::new(test_inputs, test_targets.into())?;
        let population = spectrum
            .size()
            .omega_plus_usize()
            .ok_or_else(|| Error::Config("|Ω₊| does not fit in memory-sized counts".into()))?;
        let grid = cfg.grid.clone().unwrap_or_else(|| integer_grid(&spectrum));
        let source = SamplingSource {
            spectrum: Some(&spectrum),
            tree: Some(&tree),
            dims: d,
        };
        let task = SweepTask {
            experiment: exp,
            strategies: &cfg.strategies,
            sweep: &cfg.sweep,
            fit: &cfg.fit,
            source: &source,
            grid: &grid,
            population,
            seed,
            train: &train,
            test: (cfg.test_points > 0).then_some(&test),
            classification: false,
        };
        for rec in run_sweep(&task)? {
            records.push(
                rec.meta("omega_plus", population)
                    .meta("points", format!("{points:?}"))
                    .meta("generator", serde_json::to_string(&gen)?),
            );
        }
    }
    Ok(records)
}
