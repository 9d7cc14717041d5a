//! Tabular ingest: numeric CSV with a header row, last column the target.

use std::path::Path;

use log::warn;
use nalgebra::{DMatrix, DVector, SymmetricEigen};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rff::Dataset;

/// Raw table: feature names, features (`M × p`) and targets.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<String>,
    pub features: DMatrix<f64>,
    pub targets: DVector<f64>,
}

pub fn read_csv<R: std::io::Read>(input: R) -> Result<Table> {
    let mut reader = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(input);
    let header: Vec<String> = reader.headers()?.iter().map(str::to_owned).collect();
    if header.len() < 2 {
        return Err(Error::Parse {
            row: 0,
            column: header.len(),
            message: "need at least one feature column and a target column".into(),
        });
    }
    let mut values = Vec::new();
    let mut rows = 0;
    for (i, rec) in reader.records().enumerate() {
        let row = i + 1;
        let rec = rec.map_err(|e| Error::Parse {
            row,
            column: 0,
            message: e.to_string(),
        })?;
        if rec.len() != header.len() {
            return Err(Error::Parse {
                row,
                column: rec.len().min(header.len()),
                message: format!("expected {} fields, found {}", header.len(), rec.len()),
            });
        }
        for (column, field) in rec.iter().enumerate() {
            let v: f64 = field.parse().map_err(|_| Error::Parse {
                row,
                column,
                message: format!("non-numeric value `{field}`"),
            })?;
            if !v.is_finite() {
                return Err(Error::Parse {
                    row,
                    column,
                    message: format!("non-finite value `{field}`"),
                });
            }
            values.push(v);
        }
        rows += 1;
    }
    if rows == 0 {
        return Err(Error::InsufficientData("CSV has no data rows".into()));
    }
    let p = header.len() - 1;
    let all = DMatrix::from_row_slice(rows, p + 1, &values);
    Ok(Table {
        columns: header[..p].to_vec(),
        features: all.columns(0, p).into_owned(),
        targets: all.column(p).into_owned(),
    })
}

pub fn read_csv_path(path: &Path) -> Result<Table> {
    read_csv(std::fs::File::open(path)?)
}

/// Column means and standard deviations of `features`, with zero-variance
/// columns removed (and reported).
pub fn standardize(table: &Table) -> (DMatrix<f64>, Vec<String>) {
    let m = table.features.nrows();
    let mut kept = Vec::new();
    let mut names = Vec::new();
    for (j, name) in table.columns.iter().enumerate() {
        let col = table.features.column(j);
        let mean = col.mean();
        let var = col.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / m as f64;
        if var <= 1e-24 * (1.0 + mean * mean) {
            warn!("dropping constant column `{name}`");
            continue;
        }
        let sd = var.sqrt();
        kept.push(col.map(|v| (v - mean) / sd));
        names.push(name.clone());
    }
    let out = if kept.is_empty() {
        DMatrix::zeros(m, 0)
    } else {
        DMatrix::from_columns(&kept)
    };
    (out, names)
}

/// Principal axes of centred data, largest variance first.
#[derive(Debug, Clone, PartialEq)]
pub struct Pca {
    pub components: DMatrix<f64>,
    pub variances: Vec<f64>,
}

/// Eigendecomposition of the sample covariance; keeps the top `k` axes as columns.
pub fn pca(data: &DMatrix<f64>, k: usize) -> Result<Pca> {
    let (m, p) = data.shape();
    if k == 0 || k > p {
        return Err(Error::InvalidSpec(format!("cannot keep {k} components of {p} features")));
    }
    if m < 2 {
        return Err(Error::InsufficientData("PCA needs at least two rows".into()));
    }
    let mut centred = data.clone();
    for mut col in centred.column_iter_mut() {
        let mean = col.mean();
        col.add_scalar_mut(-mean);
    }
    let cov = centred.tr_mul(&centred) / (m as f64 - 1.0);
    let eig = SymmetricEigen::new(cov);
    let mut order: Vec<usize> = (0..p).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
    let cols: Vec<DVector<f64>> = order[..k].iter().map(|&i| eig.eigenvectors.column(i).into_owned()).collect();
    Ok(Pca {
        components: DMatrix::from_columns(&cols),
        variances: order[..k].iter().map(|&i| eig.eigenvalues[i]).collect(),
    })
}

impl Pca {
    pub fn project(&self, data: &DMatrix<f64>) -> DMatrix<f64> {
        let mut centred = data.clone();
        for mut col in centred.column_iter_mut() {
            let mean = col.mean();
            col.add_scalar_mut(-mean);
        }
        centred * &self.components
    }
}

/// Affine map of every column onto `[low, high]` (min → low, max → high).
/// Constant columns map to the midpoint.
pub fn rescale(data: &DMatrix<f64>, low: f64, high: f64) -> DMatrix<f64> {
    let mut out = data.clone();
    for mut col in out.column_iter_mut() {
        let (lo, hi) = (col.min(), col.max());
        if hi > lo {
            col.apply(|v| *v = low + (*v - lo) * (high - low) / (hi - lo));
            // pin the extremes so they land exactly on the interval ends
            col.apply(|v| *v = v.clamp(low, high));
        } else {
            col.fill((low + high) / 2.0);
        }
    }
    out
}

fn pi_range() -> [f64; 2] {
    [-std::f64::consts::PI, std::f64::consts::PI]
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PreprocessConfig {
    /// Principal components kept; `None` keeps all standardized features.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub components: Option<usize>,
    #[serde(default = "pi_range")]
    pub range: [f64; 2],
}

impl Default for PreprocessConfig {
    fn default() -> Self {
        Self {
            components: None,
            range: pi_range(),
        }
    }
}

/// Standardize, optionally project with PCA, rescale into `range`.
pub fn preprocess(table: &Table, cfg: &PreprocessConfig) -> Result<Dataset> {
    let (z, _) = standardize(table);
    if z.ncols() == 0 {
        return Err(Error::InsufficientData("every feature column is constant".into()));
    }
    let features = match cfg.components {
        Some(k) => pca(&z, k.min(z.ncols()))?.project(&z),
        None => z,
    };
    Dataset::new(rescale(&features, cfg.range[0], cfg.range[1]), table.targets.clone())
}
