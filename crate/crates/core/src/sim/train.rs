use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::circuit::Circuit;
use crate::error::{Error, Result};
use crate::rff::{Adam, AdamConfig, Dataset};

pub const DEFAULT_FD_STEP: f64 = 1e-4;

fn fd_step() -> f64 {
    DEFAULT_FD_STEP
}

fn epochs() -> usize {
    100
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrainOptions {
    #[serde(flatten)]
    pub adam: AdamConfig,
    #[serde(default = "epochs")]
    pub epochs: usize,
    /// `None` trains on the full batch.
    #[serde(default)]
    pub batch_size: Option<usize>,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "fd_step")]
    pub fd_step: f64,
}

impl Default for TrainOptions {
    fn default() -> Self {
        Self {
            adam: AdamConfig::default(),
            epochs: epochs(),
            batch_size: None,
            seed: 0,
            fd_step: DEFAULT_FD_STEP,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrainReport {
    /// Parameters with the lowest full-data loss seen.
    pub theta: Vec<f64>,
    pub best_loss: f64,
    /// Full-data loss before training and after each epoch.
    pub losses: Vec<f64>,
}

/// Mean squared error of the circuit on `rows` of `data` (all rows if `None`).
pub fn mse(circuit: &Circuit, theta: &[f64], data: &Dataset, rows: Option<&[usize]>) -> Result<f64> {
    let all: Vec<usize>;
    let rows = match rows {
        Some(r) => r,
        None => {
            all = (0..data.len()).collect();
            &all
        }
    };
    let errs = rows
        .par_iter()
        .map(|&i| Ok((circuit.evaluate(theta, &data.point(i))? - data.targets[i]).powi(2)))
        .collect::<Result<Vec<f64>>>()?;
    Ok(errs.iter().sum::<f64>() / rows.len() as f64)
}

/// Central finite-difference gradient of the MSE, step `h` per parameter.
pub fn fd_gradient(
    circuit: &Circuit,
    theta: &[f64],
    data: &Dataset,
    rows: Option<&[usize]>,
    h: f64,
) -> Result<Vec<f64>> {
    let mut probe = theta.to_vec();
    (0..theta.len())
        .map(|j| {
            probe[j] = theta[j] + h;
            let up = mse(circuit, &probe, data, rows)?;
            probe[j] = theta[j] - h;
            let down = mse(circuit, &probe, data, rows)?;
            probe[j] = theta[j];
            Ok((up - down) / (2.0 * h))
        })
        .collect()
}

/// Adam on the mean squared error, with finite-difference gradients.
pub fn train(circuit: &Circuit, theta0: &[f64], data: &Dataset, opts: &TrainOptions) -> Result<TrainReport> {
    use rand::seq::SliceRandom;
    if data.dims() != circuit.dims() {
        return Err(Error::Shape(format!(
            "{}-dimensional data for a {}-dimensional circuit",
            data.dims(),
            circuit.dims()
        )));
    }
    let mut theta = theta0.to_vec();
    let mut adam = Adam::new(opts.adam, theta.len());
    let mut rng = crate::rng::rng_from_seed(opts.seed);
    let mut order: Vec<usize> = (0..data.len()).collect();
    let batch = opts.batch_size.unwrap_or(data.len()).max(1);

    let start = mse(circuit, &theta, data, None)?;
    let mut losses = vec![start];
    let (mut best, mut best_loss) = (theta.clone(), start);
    for epoch in 0..opts.epochs {
        if batch < data.len() {
            order.shuffle(&mut rng);
        }
        for rows in order.chunks(batch) {
            let g = fd_gradient(circuit, &theta, data, Some(rows), opts.fd_step)?;
            adam.step(&mut theta, &g);
        }
        let loss = mse(circuit, &theta, data, None)?;
        if !loss.is_finite() {
            return Err(Error::DivergedTraining { epoch });
        }
        if loss < best_loss {
            best_loss = loss;
            best.clone_from(&theta);
        }
        losses.push(loss);
    }
    Ok(TrainReport {
        theta: best,
        best_loss,
        losses,
    })
}
