use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `f(x) = Σ a_ω cos(ω·x) + b_ω sin(ω·x)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FourierSeries {
    pub dims: usize,
    pub frequencies: Vec<Vec<f64>>,
    pub cos: Vec<f64>,
    pub sin: Vec<f64>,
}

impl FourierSeries {
    pub fn new(frequencies: Vec<Vec<f64>>, cos: Vec<f64>, sin: Vec<f64>) -> Result<Self> {
        let dims = frequencies.first().map_or(0, Vec::len);
        if dims == 0 || frequencies.iter().any(|w| w.len() != dims) {
            return Err(Error::Shape("frequencies must be non-empty vectors of equal length".into()));
        }
        if cos.len() != frequencies.len() || sin.len() != frequencies.len() {
            return Err(Error::Shape("one cos and one sin coefficient per frequency".into()));
        }
        Ok(Self {
            dims,
            frequencies,
            cos,
            sin,
        })
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        self.frequencies
            .iter()
            .zip(self.cos.iter().zip(&self.sin))
            .map(|(w, (a, b))| {
                let p: f64 = w.iter().zip(x).map(|(u, v)| u * v).sum();
                a * p.cos() + b * p.sin()
            })
            .sum()
    }

    /// `Σ |a_ω| + |b_ω|`.
    pub fn l1(&self) -> f64 {
        self.cos.iter().chain(&self.sin).map(|c| c.abs()).sum()
    }
}

/// Nearest multiple of `s`; exact half-steps go toward zero.
pub fn snap_to_grid(w: f64, s: f64) -> f64 {
    let q = w / s;
    let r = if (q - q.trunc()).abs() == 0.5 { q.trunc() } else { q.round() };
    r * s
}

#[derive(Debug, Clone, PartialEq)]
pub struct GridShift {
    pub shifted: FourierSeries,
    /// `s |X| Σ (|a_ω| + |b_ω|)`.
    pub bound: f64,
}

/// Moves every frequency of `f` to its nearest grid node, keeping coefficients,
/// on the box `[0, x_max]^d`. The Euclidean displacement is at most `s √d / 2`,
/// which stays within `s` only for `d <= 4`.
pub fn grid_shift_construction(f: &FourierSeries, step: f64, x_max: &[f64]) -> Result<GridShift> {
    if !(step.is_finite() && step > 0.0) {
        return Err(Error::InvalidSpec(format!("grid step must be positive, got {step}")));
    }
    if x_max.len() != f.dims {
        return Err(Error::Shape("one domain bound per dimension expected".into()));
    }
    if f.dims > 4 {
        return Err(Error::InvalidSpec(format!(
            "nearest-node rounding moves frequencies by up to s·√d/2 > s for d = {}",
            f.dims
        )));
    }
    let frequencies = f
        .frequencies
        .iter()
        .map(|w| w.iter().map(|&c| snap_to_grid(c, step)).collect())
        .collect();
    let diameter = x_max.iter().map(|x| x * x).sum::<f64>().sqrt();
    Ok(GridShift {
        shifted: FourierSeries {
            dims: f.dims,
            frequencies,
            cos: f.cos.clone(),
            sin: f.sin.clone(),
        },
        bound: step * diameter * f.l1(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::TAU;

    fn sup_error(a: &FourierSeries, b: &FourierSeries, x_max: f64, n: usize) -> f64 {
        (0..=n)
            .map(|i| {
                let x = [i as f64 * x_max / n as f64];
                (a.eval(&x) - b.eval(&x)).abs()
            })
            .fold(0.0, f64::max)
    }

    #[test]
    fn snapping() {
        assert_eq!(snap_to_grid(1.3, 1.0), 1.0);
        assert_eq!(snap_to_grid(1.5, 1.0), 1.0);
        assert_eq!(snap_to_grid(-1.5, 1.0), -1.0);
        assert_eq!(snap_to_grid(1.75, 0.5), 1.5);
        assert_eq!(snap_to_grid(1.8, 0.5), 2.0);
    }

    #[test]
    fn on_grid_is_identity() {
        let f = FourierSeries::new(vec![vec![1.0], vec![3.0]], vec![0.5, -1.0], vec![0.2, 0.0]).unwrap();
        let g = grid_shift_construction(&f, 1.0, &[TAU]).unwrap();
        assert!(sup_error(&f, &g.shifted, TAU, 10_000) < 1e-12);
    }

    #[test]
    fn off_grid_cosine() {
        let f = FourierSeries::new(vec![vec![1.3]], vec![1.0], vec![0.0]).unwrap();
        let g = grid_shift_construction(&f, 1.0, &[TAU]).unwrap();
        assert_eq!(g.shifted.frequencies, vec![vec![1.0]]);
        assert!(sup_error(&f, &g.shifted, TAU, 10_000) <= 0.3 * TAU);
        assert!((g.bound - TAU).abs() < 1e-15);
        let f2 = FourierSeries::new(vec![vec![1.3]], vec![2.0], vec![0.0]).unwrap();
        assert_eq!(grid_shift_construction(&f2, 1.0, &[TAU]).unwrap().bound, 2.0 * g.bound);
    }

    #[test]
    fn rejects_high_dimension() {
        let f = FourierSeries::new(vec![vec![0.1; 5]], vec![1.0], vec![0.0]).unwrap();
        assert!(grid_shift_construction(&f, 1.0, &[1.0; 5]).is_err());
    }
}
