use nalgebra::DMatrix;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::sampling::FrequencySample;

/// `φ̃(x) = (1/√D) [cos ω_1·x, sin ω_1·x, cos ω_2·x, …]`, interleaved per frequency.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureMap {
    frequencies: FrequencySample,
}

impl FeatureMap {
    pub fn new(frequencies: FrequencySample) -> Result<Self> {
        if frequencies.is_empty() {
            return Err(Error::InvalidSpec("feature map needs at least one frequency".into()));
        }
        Ok(Self { frequencies })
    }

    pub fn frequencies(&self) -> &FrequencySample {
        &self.frequencies
    }

    pub fn dims(&self) -> usize {
        self.frequencies.dims()
    }

    /// `D`, the number of sampled frequencies.
    pub fn len(&self) -> usize {
        self.frequencies.len()
    }

    pub fn is_empty(&self) -> bool {
        self.frequencies.is_empty()
    }

    /// `2D`.
    pub fn feature_dim(&self) -> usize {
        2 * self.len()
    }

    fn check(&self, x: &[f64]) -> Result<()> {
        if x.len() != self.dims() {
            return Err(Error::Shape(format!(
                "input of dimension {} for a {}-dimensional feature map",
                x.len(),
                self.dims()
            )));
        }
        Ok(())
    }

    fn fill(&self, x: &[f64], out: &mut [f64]) {
        let norm = 1.0 / (self.len() as f64).sqrt();
        for (i, w) in self.frequencies.iter().enumerate() {
            let phase: f64 = w.iter().zip(x).map(|(a, b)| a * b).sum();
            let (s, c) = phase.sin_cos();
            out[2 * i] = norm * c;
            out[2 * i + 1] = norm * s;
        }
    }

    pub fn features(&self, x: &[f64]) -> Result<Vec<f64>> {
        self.check(x)?;
        let mut out = vec![0.0; self.feature_dim()];
        self.fill(x, &mut out);
        Ok(out)
    }

    /// `Φ`, one feature row per input row (`M × 2D`). Rows are built in parallel.
    pub fn feature_matrix(&self, inputs: &DMatrix<f64>) -> Result<DMatrix<f64>> {
        if inputs.ncols() != self.dims() {
            return Err(Error::Shape(format!(
                "inputs have {} columns for a {}-dimensional feature map",
                inputs.ncols(),
                self.dims()
            )));
        }
        let p = self.feature_dim();
        let mut rows = vec![0.0; inputs.nrows() * p];
        rows.par_chunks_mut(p).enumerate().for_each(|(i, out)| {
            let x: Vec<f64> = inputs.row(i).iter().copied().collect();
            self.fill(&x, out);
        });
        Ok(DMatrix::from_row_slice(inputs.nrows(), p, &rows))
    }

    /// `k̃(x, y) = (1/D) Σ cos ω_i·(x − y)`.
    pub fn approx_kernel(&self, x: &[f64], y: &[f64]) -> Result<f64> {
        self.check(x)?;
        self.check(y)?;
        let sum: f64 = self
            .frequencies
            .iter()
            .map(|w| {
                w.iter()
                    .zip(x.iter().zip(y))
                    .map(|(a, (p, q))| a * (p - q))
                    .sum::<f64>()
                    .cos()
            })
            .sum();
        Ok(sum / self.len() as f64)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_2;

    fn map(rows: &[Vec<f64>]) -> FeatureMap {
        FeatureMap::new(FrequencySample::from_rows(rows[0].len(), rows).unwrap()).unwrap()
    }

    #[test]
    fn origin_features() {
        let m = map(&[vec![1.0, 2.0], vec![0.5, -1.0], vec![3.0, 0.0], vec![0.0, 0.0]]);
        let f = m.features(&[0.0, 0.0]).unwrap();
        for i in 0..4 {
            assert!((f[2 * i] - 0.5).abs() < 1e-15);
            assert_eq!(f[2 * i + 1], 0.0);
        }
    }

    #[test]
    fn quarter_turn() {
        let f = map(&[vec![1.0]]).features(&[FRAC_PI_2]).unwrap();
        assert!(f[0].abs() < 1e-15 && (f[1] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn shape_errors() {
        let m = map(&[vec![1.0, 2.0]]);
        assert!(matches!(m.features(&[1.0]), Err(Error::Shape(_))));
        assert!(m.approx_kernel(&[1.0, 2.0], &[1.0]).is_err());
        assert!(m.feature_matrix(&DMatrix::zeros(3, 1)).is_err());
    }

    #[test]
    fn matrix_rows_match_features() {
        let m = map(&[vec![1.0, 2.0], vec![-0.3, 0.7]]);
        let x = DMatrix::from_row_slice(3, 2, &[0.1, 0.2, -1.0, 3.0, 2.5, 0.0]);
        let phi = m.feature_matrix(&x).unwrap();
        for i in 0..3 {
            let row = m.features(&[x[(i, 0)], x[(i, 1)]]).unwrap();
            for j in 0..4 {
                assert_eq!(phi[(i, j)], row[j]);
            }
        }
    }

    #[test]
    fn kernel_is_feature_inner_product() {
        let m = map(&[vec![1.0, 2.0], vec![-0.3, 0.7], vec![4.0, -1.0]]);
        let (x, y) = ([0.3, -0.2], [1.7, 0.4]);
        let dot: f64 = m
            .features(&x)
            .unwrap()
            .iter()
            .zip(m.features(&y).unwrap())
            .map(|(a, b)| a * b)
            .sum();
        assert!((dot - m.approx_kernel(&x, &y).unwrap()).abs() < 1e-14);
        assert!((m.approx_kernel(&x, &x).unwrap() - 1.0).abs() < 1e-15);
        assert_eq!(m.approx_kernel(&x, &y).unwrap(), m.approx_kernel(&y, &x).unwrap());
    }
}
