use nalgebra::{DMatrix, DVector};
use rand::seq::SliceRandom;

use crate::error::{Error, Result};
use crate::rng::rng_from_seed;

/// Inputs (`M × d`, one point per row) with scalar targets.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    pub inputs: DMatrix<f64>,
    pub targets: DVector<f64>,
}

impl Dataset {
    pub fn new(inputs: DMatrix<f64>, targets: DVector<f64>) -> Result<Self> {
        if inputs.nrows() == 0 || inputs.ncols() == 0 {
            return Err(Error::Shape("dataset needs at least one point and one feature".into()));
        }
        if inputs.nrows() != targets.len() {
            return Err(Error::Shape(format!(
                "{} input rows but {} targets",
                inputs.nrows(),
                targets.len()
            )));
        }
        if inputs.iter().chain(targets.iter()).any(|v| !v.is_finite()) {
            return Err(Error::InvalidSpec("dataset contains non-finite values".into()));
        }
        Ok(Self { inputs, targets })
    }

    pub fn from_rows(rows: &[Vec<f64>], targets: Vec<f64>) -> Result<Self> {
        let d = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != d) {
            return Err(Error::Shape("ragged input rows".into()));
        }
        Self::new(
            DMatrix::from_row_iterator(rows.len(), d, rows.iter().flatten().copied()),
            DVector::from_vec(targets),
        )
    }

    pub fn len(&self) -> usize {
        self.inputs.nrows()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn dims(&self) -> usize {
        self.inputs.ncols()
    }

    pub fn point(&self, i: usize) -> Vec<f64> {
        self.inputs.row(i).iter().copied().collect()
    }

    pub fn subset(&self, indices: &[usize]) -> Result<Self> {
        Self::new(
            self.inputs.select_rows(indices),
            DVector::from_iterator(indices.len(), indices.iter().map(|&i| self.targets[i])),
        )
    }

    /// Shuffled split with `round(train_fraction · M)` training points.
    pub fn split(&self, train_fraction: f64, seed: u64) -> Result<(Self, Self)> {
        let m = self.len();
        let n_train = (train_fraction * m as f64).round() as usize;
        if !(0.0..=1.0).contains(&train_fraction) || n_train == 0 || n_train >= m {
            return Err(Error::InsufficientData(format!(
                "cannot split {m} points with train fraction {train_fraction}"
            )));
        }
        let mut idx: Vec<usize> = (0..m).collect();
        idx.shuffle(&mut rng_from_seed(seed));
        Ok((self.subset(&idx[..n_train])?, self.subset(&idx[n_train..])?))
    }

    /// Writes `x1,…,xd,y` rows.
    pub fn write_csv<W: std::io::Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        let mut header: Vec<String> = (1..=self.dims()).map(|k| format!("x{k}")).collect();
        header.push("y".into());
        w.write_record(&header)?;
        for i in 0..self.len() {
            let mut rec: Vec<String> = self.inputs.row(i).iter().map(|v| format!("{v}")).collect();
            rec.push(format!("{}", self.targets[i]));
            w.write_record(&rec)?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn mse(&self, predictions: &DVector<f64>) -> f64 {
        (predictions - &self.targets).norm_squared() / self.len() as f64
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(Dataset::from_rows(&[vec![1.0], vec![2.0]], vec![1.0]).is_err());
        assert!(Dataset::from_rows(&[vec![f64::NAN]], vec![1.0]).is_err());
        assert!(Dataset::from_rows(&[vec![1.0, 2.0], vec![3.0]], vec![1.0, 2.0]).is_err());
        let d = Dataset::from_rows(&[vec![1.0, 2.0], vec![3.0, 4.0]], vec![5.0, 6.0]).unwrap();
        assert_eq!(d.point(1), vec![3.0, 4.0]);
        assert_eq!(d.dims(), 2);
    }

    #[test]
    fn split_partitions() {
        let rows: Vec<Vec<f64>> = (0..10).map(|i| vec![i as f64]).collect();
        let d = Dataset::from_rows(&rows, (0..10).map(f64::from).collect()).unwrap();
        let (a, b) = d.split(0.9, 1).unwrap();
        assert_eq!((a.len(), b.len()), (9, 1));
        let mut all: Vec<f64> = a.targets.iter().chain(b.targets.iter()).copied().collect();
        all.sort_by(f64::total_cmp);
        assert_eq!(all, (0..10).map(f64::from).collect::<Vec<_>>());
        assert!(d.split(1.0, 1).is_err());
    }
}
