use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;

use super::circuit::Circuit;
use crate::error::{Error, Result};
use crate::rff::Dataset;
use crate::spectrum::{EncodingLayout, Spectrum, SpectrumOptions};

/// Smallest lattice size per dimension resolving the circuit's highest
/// frequency on `[0, x_max)`: `n_κ > x_max,κ ω_max,κ / π`.
/// Dimensions without encoding gates are constant and need one point.
pub fn minimum_points(circuit: &Circuit, x_max: &[f64]) -> Result<Vec<usize>> {
    let gates = circuit.description().encoding_gates();
    if x_max.len() != gates.len() {
        return Err(Error::Shape(format!(
            "{} ranges for a {}-dimensional circuit",
            x_max.len(),
            gates.len()
        )));
    }
    gates
        .into_iter()
        .zip(x_max)
        .map(|(g, &x)| {
            if g.is_empty() {
                return Ok(1);
            }
            let s = Spectrum::build(&EncodingLayout::new(vec![g])?, SpectrumOptions::default())?;
            Ok(minimum_points_for(&s, &[x])?[0])
        })
        .collect()
}

pub fn minimum_points_for(spectrum: &Spectrum, x_max: &[f64]) -> Result<Vec<usize>> {
    if x_max.len() != spectrum.dims() {
        return Err(Error::Shape(format!(
            "{} ranges for a {}-dimensional spectrum",
            x_max.len(),
            spectrum.dims()
        )));
    }
    Ok(spectrum
        .dimensions()
        .iter()
        .zip(x_max)
        .map(|(d, &x)| (x * d.max_frequency() / std::f64::consts::PI + 1e-9).floor() as usize + 1)
        .collect())
}

/// Half-open lattice `x = (j_1 x_max,1 / n_1, …)`, `0 <= j_κ < n_κ`, in
/// lexicographic order (first coordinate slowest).
pub fn lattice(x_max: &[f64], points: &[usize]) -> Result<DMatrix<f64>> {
    if x_max.len() != points.len() || points.is_empty() {
        return Err(Error::Shape("x_max and points must have one entry per dimension".into()));
    }
    if points.contains(&0) || x_max.iter().any(|x| !(x.is_finite() && *x > 0.0)) {
        return Err(Error::InvalidSpec("lattice needs positive sizes and ranges".into()));
    }
    let total: usize = points.iter().product();
    let d = points.len();
    let mut data = Vec::with_capacity(total * d);
    for mut r in 0..total {
        let mut row = vec![0.0; d];
        for k in (0..d).rev() {
            row[k] = (r % points[k]) as f64 * x_max[k] / points[k] as f64;
            r /= points[k];
        }
        data.extend(row);
    }
    Ok(DMatrix::from_row_slice(total, d, &data))
}

/// Circuit outputs on a lattice. Fails with `ShannonViolation` when some
/// dimension has fewer points than [`minimum_points`] unless `force` is set.
pub fn sample_grid_dataset(
    circuit: &Circuit,
    theta: &[f64],
    x_max: &[f64],
    points: &[usize],
    force: bool,
) -> Result<Dataset> {
    if !force {
        let need = minimum_points(circuit, x_max)?;
        if points.len() != need.len() {
            return Err(Error::Shape("one lattice size per dimension expected".into()));
        }
        if points.iter().zip(&need).any(|(p, n)| p < n) {
            return Err(Error::ShannonViolation {
                required: need.iter().product(),
                got: points.iter().product(),
            });
        }
    }
    let inputs = lattice(x_max, points)?;
    let targets = (0..inputs.nrows())
        .into_par_iter()
        .map(|i| {
            let x: Vec<f64> = inputs.row(i).iter().copied().collect();
            circuit.evaluate(theta, &x)
        })
        .collect::<Result<Vec<f64>>>()?;
    Dataset::new(inputs, DVector::from_vec(targets))
}
