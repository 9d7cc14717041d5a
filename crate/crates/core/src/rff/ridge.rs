use std::io::Write;

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use super::solve::spd_solve;
use super::{Dataset, FeatureMap};
use crate::error::{Error, Result};
use crate::sampling::FrequencySample;

pub const DEFAULT_DENSE_CAP: usize = 8192;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Solver {
    /// Primal when `2D < M`, dual otherwise.
    #[default]
    Auto,
    Primal,
    Dual,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitOptions {
    pub solver: Solver,
    pub dense_cap: usize,
}

impl Default for FitOptions {
    fn default() -> Self {
        Self {
            solver: Solver::Auto,
            dense_cap: DEFAULT_DENSE_CAP,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct FitMetadata {
    pub solver: String,
    pub lambda0: f64,
    /// `M λ₀`, the weight actually added to the diagonal.
    pub lambda: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub jitter: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub epochs: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub batch_size: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub learning_rate: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    /// Training objective at the returned weights.
    pub final_loss: f64,
}

/// Linear model on random Fourier features, `f̃(x) = w̃ᵀ φ̃(x)`.
#[derive(Debug, Clone, PartialEq)]
pub struct RffModel {
    pub map: FeatureMap,
    /// `(a_1, b_1, a_2, b_2, …)`: cos then sin weight per frequency.
    pub weights: DVector<f64>,
    pub meta: FitMetadata,
}

impl RffModel {
    pub fn new(map: FeatureMap, weights: DVector<f64>, meta: FitMetadata) -> Result<Self> {
        if weights.len() != map.feature_dim() {
            return Err(Error::Shape(format!(
                "{} weights for {} features",
                weights.len(),
                map.feature_dim()
            )));
        }
        if weights.iter().any(|w| !w.is_finite()) {
            return Err(Error::InvalidSpec("model weights must be finite".into()));
        }
        Ok(Self { map, weights, meta })
    }

    pub fn predict(&self, inputs: &DMatrix<f64>) -> Result<DVector<f64>> {
        Ok(self.map.feature_matrix(inputs)? * &self.weights)
    }

    pub fn predict_one(&self, x: &[f64]) -> Result<f64> {
        let f = self.map.features(x)?;
        Ok(f.iter().zip(self.weights.iter()).map(|(a, b)| a * b).sum())
    }

    pub fn to_json(&self) -> Result<String> {
        let file = ModelFile {
            dims: self.map.dims(),
            frequencies: self.map.frequencies().to_rows(),
            weights: self.weights.iter().copied().collect(),
            metadata: self.meta.clone(),
        };
        Ok(serde_json::to_string_pretty(&file)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let file: ModelFile = serde_json::from_str(s)?;
        let map = FeatureMap::new(FrequencySample::from_rows(file.dims, &file.frequencies)?)?;
        Self::new(map, DVector::from_vec(file.weights), file.metadata)
    }
}

#[derive(Serialize, Deserialize)]
struct ModelFile {
    dims: usize,
    frequencies: Vec<Vec<f64>>,
    weights: Vec<f64>,
    metadata: FitMetadata,
}

fn check_lambda(lambda0: f64) -> Result<()> {
    if !(lambda0.is_finite() && lambda0 >= 0.0) {
        return Err(Error::InvalidSpec(format!("λ₀ must be finite and >= 0, got {lambda0}")));
    }
    Ok(())
}

/// Ridge regression on the feature matrix:
/// `w̃ = (ΦᵀΦ + Mλ₀ I)⁻¹ Φᵀ y`, or equivalently `w̃ = Φᵀ (ΦΦᵀ + Mλ₀ I)⁻¹ y`
/// through the `M × M` dual system.
pub fn fit_closed_form(
    map: &FeatureMap,
    data: &Dataset,
    lambda0: f64,
    opts: FitOptions,
) -> Result<RffModel> {
    check_lambda(lambda0)?;
    let m = data.len();
    let p = map.feature_dim();
    let solver = match opts.solver {
        Solver::Auto if p < m => Solver::Primal,
        Solver::Auto => Solver::Dual,
        s => s,
    };
    let size = if solver == Solver::Primal { p } else { m };
    if size > opts.dense_cap {
        return Err(Error::ProblemTooLarge {
            size,
            cap: opts.dense_cap,
        });
    }
    let phi = map.feature_matrix(&data.inputs)?;
    let lambda = m as f64 * lambda0;
    let regularized = lambda0 > 0.0;
    let (weights, jitter) = if solver == Solver::Primal {
        let mut a = phi.tr_mul(&phi);
        for i in 0..p {
            a[(i, i)] += lambda;
        }
        spd_solve(a, &phi.tr_mul(&data.targets), regularized)?
    } else {
        let mut g = &phi * phi.transpose();
        for i in 0..m {
            g[(i, i)] += lambda;
        }
        let (alpha, jitter) = spd_solve(g, &data.targets, regularized)?;
        (phi.tr_mul(&alpha), jitter)
    };
    let final_loss = objective(&phi, &weights, &data.targets, lambda0);
    let meta = FitMetadata {
        solver: format!("closed-form-{}", if solver == Solver::Primal { "primal" } else { "dual" }),
        lambda0,
        lambda,
        jitter,
        final_loss,
        ..Default::default()
    };
    RffModel::new(map.clone(), weights, meta)
}

/// `(1/M) ‖Φw − y‖² + λ₀ ‖w‖²`.
pub fn objective(phi: &DMatrix<f64>, w: &DVector<f64>, y: &DVector<f64>, lambda0: f64) -> f64 {
    (phi * w - y).norm_squared() / y.len() as f64 + lambda0 * w.norm_squared()
}

/// Writes `x1,…,xd,y_pred` rows.
pub fn write_predictions<W: Write>(
    inputs: &DMatrix<f64>,
    predictions: &DVector<f64>,
    out: W,
) -> Result<()> {
    if inputs.nrows() != predictions.len() {
        return Err(Error::Shape("one prediction per input row expected".into()));
    }
    let mut w = csv::Writer::from_writer(out);
    let mut header: Vec<String> = (0..inputs.ncols()).map(|k| format!("x{}", k + 1)).collect();
    header.push("y_pred".into());
    w.write_record(&header)?;
    for (i, y) in predictions.iter().enumerate() {
        let mut rec: Vec<String> = inputs.row(i).iter().map(|v| format!("{v}")).collect();
        rec.push(format!("{y}"));
        w.write_record(&rec)?;
    }
    w.flush()?;
    Ok(())
}
