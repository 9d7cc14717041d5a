use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{uniform_points, ExperimentConfig, ExperimentKind, FitConfig, Method};
use crate::error::{Error, Result};
use crate::harness::record::ResultRecord;
use crate::rff::{Dataset, FeatureMap, SgdOptions};
use crate::rng::{derive_seed, rng_from_seed};
use crate::sampling::FrequencySample;

fn default_l() -> usize {
    9
}

fn default_dims() -> usize {
    3
}

fn default_points() -> usize {
    2000
}

fn ninety() -> f64 {
    0.9
}

fn default_epsilons() -> Vec<f64> {
    vec![0.5]
}

fn default_fit() -> FitConfig {
    FitConfig {
        lambda0: 1e-6,
        method: Method::Adam,
        sgd: SgdOptions {
            epochs: 100,
            ..Default::default()
        },
        ..Default::default()
    }
}

/// Planted Fourier series on the lattice `⟦0, L⟧^d`, fitted with growing subsets
/// of the lattice and compared to the fit that uses all of it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScalingConfig {
    #[serde(default = "default_l")]
    pub gates_per_dim: usize,
    #[serde(default = "default_dims")]
    pub dims: usize,
    #[serde(default = "default_points")]
    pub points: usize,
    #[serde(default = "ninety")]
    pub train_fraction: f64,
    /// Fractions of `|Ω|` to try besides `D = 1`; defaults to tenths.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fractions: Option<Vec<f64>>,
    #[serde(default = "default_epsilons")]
    pub epsilons: Vec<f64>,
    #[serde(default = "default_fit")]
    pub fit: FitConfig,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScalingSelection {
    pub gates_per_dim: usize,
    pub dims: usize,
    pub epsilon: f64,
    pub seed: u64,
    #[serde(rename = "D")]
    pub d: usize,
    pub fraction: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScalingOutcome {
    pub records: Vec<ResultRecord>,
    pub selections: Vec<ScalingSelection>,
}

impl ScalingOutcome {
    /// Seed-mean selected fraction for `epsilon`.
    pub fn mean_fraction(&self, epsilon: f64) -> Option<f64> {
        let f: Vec<f64> = self
            .selections
            .iter()
            .filter(|s| s.epsilon == epsilon)
            .map(|s| s.fraction)
            .collect();
        (!f.is_empty()).then(|| f.iter().sum::<f64>() / f.len() as f64)
    }
}

fn lattice_point(mut index: usize, side: usize, dims: usize) -> Vec<f64> {
    let mut out = vec![0.0; dims];
    for k in (0..dims).rev() {
        out[k] = (index % side) as f64;
        index /= side;
    }
    out
}

pub(crate) fn sample_counts(total: usize, fractions: &[f64]) -> Vec<usize> {
    let mut ds = vec![1];
    ds.extend(
        fractions
            .iter()
            .map(|f| ((f * total as f64).round() as usize).clamp(1, total)),
    );
    ds.sort_unstable();
    ds.dedup();
    if ds.last() != Some(&total) {
        ds.push(total);
    }
    ds
}

pub fn run_scaling_protocol(exp: &ExperimentConfig) -> Result<ScalingOutcome> {
    let ExperimentKind::ScalingProtocol(cfg) = &exp.kind else {
        return Err(Error::Config("not a scaling_protocol experiment".into()));
    };
    if cfg.dims == 0 || cfg.points < 2 {
        return Err(Error::Config("scaling protocol needs d ≥ 1 and at least 2 points".into()));
    }
    let side = cfg.gates_per_dim + 1;
    let total = side
        .checked_pow(cfg.dims as u32)
        .filter(|&t| t <= crate::spectrum::DEFAULT_ENUMERATION_CAP)
        .ok_or_else(|| Error::SpectrumTooLarge {
            count: format!("{side}^{}", cfg.dims),
            cap: crate::spectrum::DEFAULT_ENUMERATION_CAP,
        })?;
    let lattice: Vec<Vec<f64>> = (0..total).map(|i| lattice_point(i, side, cfg.dims)).collect();
    let tenths: Vec<f64> = (1..=10).map(|k| k as f64 / 10.0).collect();
    let counts = sample_counts(total, cfg.fractions.as_deref().unwrap_or(&tenths));

    let mut records = Vec::new();
    let mut selections = Vec::new();
    for &seed in &exp.seeds {
        let inputs = uniform_points(&vec![1.0; cfg.dims], cfg.points, derive_seed(seed, 0));
        let mut rng = rng_from_seed(derive_seed(seed, 1));
        let amp = 1.0 / (total as f64).sqrt();
        let coeffs: Vec<(f64, f64)> = (0..total)
            .map(|_| (rng.random_range(0.0..=amp), rng.random_range(0.0..=amp)))
            .collect();
        let targets: Vec<f64> = (0..cfg.points)
            .into_par_iter()
            .map(|i| {
                lattice
                    .iter()
                    .zip(&coeffs)
                    .map(|(w, (a, b))| {
                        let t: f64 = w.iter().enumerate().map(|(k, wk)| wk * inputs[(i, k)]).sum();
                        a * t.cos() + b * t.sin()
                    })
                    .sum()
            })
            .collect();
        let data = Dataset::new(inputs, targets.into())?;
        let (train, test) = data.split(cfg.train_fraction, derive_seed(seed, 2))?;

        let fits = counts
            .par_iter()
            .map(|&d| {
                let mut srng = rng_from_seed(derive_seed(seed, 100 + d as u64));
                let idx = rand::seq::index::sample(&mut srng, total, d).into_vec();
                let rows: Vec<Vec<f64>> = idx.iter().map(|&i| lattice[i].clone()).collect();
                let map = FeatureMap::new(FrequencySample::from_rows(cfg.dims, &rows)?)?;
                let start = std::time::Instant::now();
                let model = cfg.fit.fit(&map, &train, derive_seed(seed, 200 + d as u64));
                let elapsed = start.elapsed().as_secs_f64();
                Ok((d, model, elapsed))
            })
            .collect::<Result<Vec<_>>>()?;

        let mut preds = Vec::new();
        for (d, model, elapsed) in fits {
            let mut rec = ResultRecord::new(&exp.id, "distinct", d, d as f64 / total as f64, seed)
                .meta("lattice", format!("[0,{}]^{}", cfg.gates_per_dim, cfg.dims))
                .meta("omega", total);
            if exp.record_wall_time {
                rec.wall_time = Some(elapsed);
            }
            match model {
                Ok(model) => {
                    rec.train_mse = Some(train.mse(&model.predict(&train.inputs)?));
                    let p = model.predict(&test.inputs)?;
                    rec.test_mse = Some(test.mse(&p));
                    rec.metadata.insert("solver".into(), serde_json::to_string(&model.meta)?);
                    preds.push(Some(p));
                }
                Err(Error::DivergedTraining { epoch }) => {
                    rec.diverged = true;
                    rec = rec.meta("diverged_epoch", epoch);
                    preds.push(None);
                }
                Err(e) => return Err(e),
            }
            records.push(rec);
        }
        let start = records.len() - counts.len();
        let full = preds.last().cloned().flatten();
        let mae: Vec<Option<f64>> = preds
            .iter()
            .map(|p| match (p, &full) {
                (Some(p), Some(f)) => Some((p - f).abs().mean()),
                _ => None,
            })
            .collect();
        for (rec, m) in records[start..].iter_mut().zip(&mae) {
            if let Some(m) = m {
                rec.metadata.insert("mae_vs_full".into(), m.to_string());
            }
        }
        for &eps in &cfg.epsilons {
            let d = counts
                .iter()
                .zip(&mae)
                .find(|(_, m)| m.is_some_and(|m| m < eps))
                .map(|(&d, _)| d)
                .filter(|&d| d < total)
                .unwrap_or(total);
            let sel = ScalingSelection {
                gates_per_dim: cfg.gates_per_dim,
                dims: cfg.dims,
                epsilon: eps,
                seed,
                d,
                fraction: d as f64 / total as f64,
            };
            records.push(
                ResultRecord::new(&exp.id, "selected", d, sel.fraction, seed)
                    .meta("epsilon", eps)
                    .meta("omega", total),
            );
            selections.push(sel);
        }
    }
    Ok(ScalingOutcome { records, selections })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn exp(epsilons: Vec<f64>) -> ExperimentConfig {
        ExperimentConfig {
            id: "scale".into(),
            kind: ExperimentKind::ScalingProtocol(ScalingConfig {
                gates_per_dim: 2,
                dims: 2,
                points: 200,
                train_fraction: 0.9,
                fractions: None,
                epsilons,
                fit: FitConfig {
                    lambda0: 1e-6,
                    ..Default::default()
                },
            }),
            seeds: vec![0, 1],
            output: None,
            record_wall_time: false,
        }
    }

    #[test]
    fn extreme_epsilons() {
        let out = run_scaling_protocol(&exp(vec![1e9, 0.0])).unwrap();
        assert_eq!(out.mean_fraction(1e9), Some(1.0 / 9.0));
        assert_eq!(out.mean_fraction(0.0), Some(1.0));
        let full: Vec<_> = out.records.iter().filter(|r| r.strategy == "distinct" && r.d == 9).collect();
        assert!(full.iter().all(|r| r.metadata["mae_vs_full"] == "0"));
    }

    #[test]
    fn counts_cover_tenths() {
        assert_eq!(sample_counts(1000, &[0.1, 0.2, 1.0]), vec![1, 100, 200, 1000]);
        assert_eq!(sample_counts(9, &[0.1, 0.5]), vec![1, 5, 9]);
        assert_eq!(lattice_point(5, 3, 2), vec![1.0, 2.0]);
    }
}
