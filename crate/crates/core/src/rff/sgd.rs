use nalgebra::{DMatrix, DVector};
use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};

use super::ridge::{objective, FitMetadata, RffModel};
use super::{Dataset, FeatureMap};
use crate::error::{Error, Result};
use crate::rng::rng_from_seed;

/// Adam moments and hyperparameters, shared with circuit training.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct AdamConfig {
    pub learning_rate: f64,
    pub beta1: f64,
    pub beta2: f64,
    pub epsilon: f64,
}

impl Default for AdamConfig {
    fn default() -> Self {
        Self {
            learning_rate: 1e-3,
            beta1: 0.9,
            beta2: 0.999,
            epsilon: 1e-8,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Adam {
    cfg: AdamConfig,
    m: Vec<f64>,
    v: Vec<f64>,
    t: i32,
}

impl Adam {
    pub fn new(cfg: AdamConfig, params: usize) -> Self {
        Self {
            cfg,
            m: vec![0.0; params],
            v: vec![0.0; params],
            t: 0,
        }
    }

    pub fn step(&mut self, params: &mut [f64], grad: &[f64]) {
        let c = self.cfg;
        self.t += 1;
        let bc1 = 1.0 - c.beta1.powi(self.t);
        let bc2 = 1.0 - c.beta2.powi(self.t);
        for i in 0..params.len() {
            self.m[i] = c.beta1 * self.m[i] + (1.0 - c.beta1) * grad[i];
            self.v[i] = c.beta2 * self.v[i] + (1.0 - c.beta2) * grad[i] * grad[i];
            let mh = self.m[i] / bc1;
            let vh = self.v[i] / bc2;
            params[i] -= c.learning_rate * mh / (vh.sqrt() + c.epsilon);
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SgdOptions {
    #[serde(flatten)]
    pub adam: AdamConfig,
    pub epochs: usize,
    pub batch_size: usize,
    pub seed: u64,
}

impl Default for SgdOptions {
    fn default() -> Self {
        Self {
            adam: AdamConfig::default(),
            epochs: 500,
            batch_size: 32,
            seed: 0,
        }
    }
}

/// Result of [`fit_sgd`]: the model plus the full-data objective after each epoch.
#[derive(Debug, Clone)]
pub struct SgdFit {
    pub model: RffModel,
    pub losses: Vec<f64>,
}

/// Minimizes `(1/M) ‖Φw − y‖² + λ₀ ‖w‖²` with Adam on shuffled minibatches,
/// starting from `w = 0`.
pub fn fit_sgd(map: &FeatureMap, data: &Dataset, lambda0: f64, opts: SgdOptions) -> Result<SgdFit> {
    if opts.batch_size == 0 {
        return Err(Error::InvalidSpec("batch size must be at least 1".into()));
    }
    let phi = map.feature_matrix(&data.inputs)?;
    let m = data.len();
    let p = phi.ncols();
    let mut w = vec![0.0; p];
    let mut adam = Adam::new(opts.adam, p);
    let mut rng = rng_from_seed(opts.seed);
    let mut order: Vec<usize> = (0..m).collect();
    let mut losses = Vec::with_capacity(opts.epochs);
    let mut grad = vec![0.0; p];
    for epoch in 0..opts.epochs {
        order.shuffle(&mut rng);
        for batch in order.chunks(opts.batch_size) {
            batch_gradient(&phi, &data.targets, &w, batch, lambda0, &mut grad);
            adam.step(&mut w, &grad);
        }
        let loss = objective(&phi, &DVector::from_column_slice(&w), &data.targets, lambda0);
        if !loss.is_finite() {
            return Err(Error::DivergedTraining { epoch });
        }
        losses.push(loss);
    }
    let weights = DVector::from_vec(w);
    let final_loss = objective(&phi, &weights, &data.targets, lambda0);
    let meta = FitMetadata {
        solver: "adam".into(),
        lambda0,
        lambda: m as f64 * lambda0,
        epochs: Some(opts.epochs),
        batch_size: Some(opts.batch_size),
        learning_rate: Some(opts.adam.learning_rate),
        seed: Some(opts.seed),
        final_loss,
        ..Default::default()
    };
    Ok(SgdFit {
        model: RffModel::new(map.clone(), weights, meta)?,
        losses,
    })
}

fn batch_gradient(
    phi: &DMatrix<f64>,
    y: &DVector<f64>,
    w: &[f64],
    batch: &[usize],
    lambda0: f64,
    grad: &mut [f64],
) {
    for (g, wi) in grad.iter_mut().zip(w) {
        *g = 2.0 * lambda0 * wi;
    }
    let scale = 2.0 / batch.len() as f64;
    for &i in batch {
        let row = phi.row(i);
        let r: f64 = row.iter().zip(w).map(|(a, b)| a * b).sum::<f64>() - y[i];
        for (g, a) in grad.iter_mut().zip(row.iter()) {
            *g += scale * r * a;
        }
    }
}
