use nalgebra::{DMatrix, DVector};
use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::solve::spd_solve;
use super::{Dataset, FeatureMap, DEFAULT_DENSE_CAP};
use crate::error::{Error, Result};
use crate::spectrum::Spectrum;

/// Shift-invariant kernel `k(x, y)`.
pub trait Kernel: Sync {
    fn dims(&self) -> usize;
    /// Callers guarantee both slices have length [`Kernel::dims`].
    fn eval(&self, x: &[f64], y: &[f64]) -> f64;
}

impl Kernel for FeatureMap {
    fn dims(&self) -> usize {
        FeatureMap::dims(self)
    }
    fn eval(&self, x: &[f64], y: &[f64]) -> f64 {
        self.approx_kernel(x, y).expect("dimensions checked by caller")
    }
}

/// Law over frequencies defining the exact kernel.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Weighting {
    /// Uniform over the distinct frequencies of `Ω₊`.
    #[default]
    Uniform,
    /// Redundancy-weighted over `Ω` (the law tree sampling draws from).
    Redundancy,
}

/// `k(x, y) = Σ_{ω ∈ Ω₊} p(ω) cos ω·(x − y)`, materialized over `Ω₊`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactKernel {
    dims: usize,
    frequencies: Vec<f64>,
    weights: Vec<f64>,
}

fn ratio(num: &BigUint, den: &BigUint) -> f64 {
    let shift = den.bits().saturating_sub(1000);
    let (n, d) = (num >> shift, den >> shift);
    n.to_f64().unwrap_or(f64::INFINITY) / d.to_f64().unwrap_or(f64::INFINITY)
}

impl ExactKernel {
    pub fn from_spectrum(spectrum: &Spectrum, weighting: Weighting, cap: usize) -> Result<Self> {
        let half = spectrum.positive_half(cap)?;
        let dims = spectrum.dims();
        let weights = match weighting {
            Weighting::Uniform => vec![1.0 / half.len() as f64; half.len()],
            Weighting::Redundancy => {
                let totals: Vec<BigUint> =
                    spectrum.dimensions().iter().map(|d| d.total_redundancy()).collect();
                half.iter()
                    .map(|(w, _)| {
                        // p(ω) = Π_κ r_κ / R_κ, folded with -ω unless ω = 0
                        let per_dim = spectrum.dimensions().iter().zip(w).zip(&totals).map(
                            |((dim, &c), total)| {
                                let i = dim.find(c, spectrum.tolerance()).expect("member of Ω");
                                ratio(&dim.redundancies()[i], total)
                            },
                        );
                        let p: f64 = per_dim.product();
                        if w.iter().all(|&c| c == 0.0) { p } else { 2.0 * p }
                    })
                    .collect()
            }
        };
        Ok(Self {
            dims,
            frequencies: half.into_iter().flat_map(|(w, _)| w).collect(),
            weights,
        })
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }
}

impl Kernel for ExactKernel {
    fn dims(&self) -> usize {
        self.dims
    }
    fn eval(&self, x: &[f64], y: &[f64]) -> f64 {
        self.frequencies
            .chunks_exact(self.dims)
            .zip(&self.weights)
            .map(|(w, p)| {
                p * w
                    .iter()
                    .zip(x.iter().zip(y))
                    .map(|(a, (u, v))| a * (u - v))
                    .sum::<f64>()
                    .cos()
            })
            .sum()
    }
}

fn rows(m: &DMatrix<f64>) -> Vec<Vec<f64>> {
    (0..m.nrows()).map(|i| m.row(i).iter().copied().collect()).collect()
}

/// Gram matrix `K_ij = k(a_i, b_j)`, rows in parallel.
pub fn gram<K: Kernel + ?Sized>(kernel: &K, a: &DMatrix<f64>, b: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    if a.ncols() != kernel.dims() || b.ncols() != kernel.dims() {
        return Err(Error::Shape(format!(
            "inputs with {} / {} columns for a {}-dimensional kernel",
            a.ncols(),
            b.ncols(),
            kernel.dims()
        )));
    }
    let (ra, rb) = (rows(a), rows(b));
    let flat: Vec<f64> = ra
        .par_iter()
        .flat_map_iter(|x| rb.iter().map(|y| kernel.eval(x, y)).collect::<Vec<_>>())
        .collect();
    Ok(DMatrix::from_row_slice(ra.len(), rb.len(), &flat))
}

/// Kernel ridge regression in dual form, `f(x) = Σ_i α_i k(x_i, x)`.
#[derive(Debug, Clone)]
pub struct KrrModel<K> {
    pub kernel: K,
    pub inputs: DMatrix<f64>,
    pub alpha: DVector<f64>,
    pub lambda0: f64,
    pub jitter: Option<f64>,
}

/// `α = (K + Mλ₀ I)⁻¹ y` with `K` the training Gram matrix.
pub fn fit_krr_dual<K: Kernel>(kernel: K, data: &Dataset, lambda0: f64) -> Result<KrrModel<K>> {
    fit_krr_dual_capped(kernel, data, lambda0, DEFAULT_DENSE_CAP)
}

pub fn fit_krr_dual_capped<K: Kernel>(
    kernel: K,
    data: &Dataset,
    lambda0: f64,
    cap: usize,
) -> Result<KrrModel<K>> {
    if !(lambda0.is_finite() && lambda0 >= 0.0) {
        return Err(Error::InvalidSpec(format!("λ₀ must be finite and >= 0, got {lambda0}")));
    }
    let m = data.len();
    if m > cap {
        return Err(Error::ProblemTooLarge { size: m, cap });
    }
    let mut g = gram(&kernel, &data.inputs, &data.inputs)?;
    for i in 0..m {
        g[(i, i)] += m as f64 * lambda0;
    }
    let (alpha, jitter) = spd_solve(g, &data.targets, lambda0 > 0.0)?;
    Ok(KrrModel {
        kernel,
        inputs: data.inputs.clone(),
        alpha,
        lambda0,
        jitter,
    })
}

impl<K: Kernel> KrrModel<K> {
    pub fn predict(&self, inputs: &DMatrix<f64>) -> Result<DVector<f64>> {
        Ok(gram(&self.kernel, inputs, &self.inputs)? * &self.alpha)
    }
}
