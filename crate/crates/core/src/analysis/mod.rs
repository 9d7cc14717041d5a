//! Empirical Fourier analysis, spectrum diagnostics and sample-complexity bounds.

mod bounds;
mod fourier;
mod gridshift;

pub use bounds::{
    bound_rff_kernel, bound_rff_kernel_probability, bound_samples, bound_samples_grid,
    bound_samples_pauli, grid_constant, BoundInputs, BoundReport,
};
pub use fourier::{empirical_fourier, EmpiricalSpectrum};
pub use gridshift::{grid_shift_construction, snap_to_grid, FourierSeries, GridShift};

use nalgebra::{DMatrix, DVector};
use num_traits::ToPrimitive;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::spectrum::Spectrum;

pub const DEFAULT_PACKET_GAP: f64 = 0.5;

/// Average ranks (ties share the mean of their positions), 1-based.
fn ranks(v: &[f64]) -> Vec<f64> {
    let mut idx: Vec<usize> = (0..v.len()).collect();
    idx.sort_by(|&a, &b| v[a].total_cmp(&v[b]));
    let mut out = vec![0.0; v.len()];
    let mut i = 0;
    while i < idx.len() {
        let mut j = i;
        while j + 1 < idx.len() && v[idx[j + 1]] == v[idx[i]] {
            j += 1;
        }
        let r = (i + j) as f64 / 2.0 + 1.0;
        for &k in &idx[i..=j] {
            out[k] = r;
        }
        i = j + 1;
    }
    out
}

/// Spearman rank correlation (Pearson correlation of average ranks).
pub fn spearman(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::Shape("rank correlation needs equal-length inputs".into()));
    }
    if a.len() < 3 {
        return Err(Error::InsufficientData(format!(
            "rank correlation needs at least 3 pairs, got {}",
            a.len()
        )));
    }
    let (ra, rb) = (ranks(a), ranks(b));
    let mean = (a.len() as f64 + 1.0) / 2.0;
    let (mut sab, mut saa, mut sbb) = (0.0, 0.0, 0.0);
    for (x, y) in ra.iter().zip(&rb) {
        sab += (x - mean) * (y - mean);
        saa += (x - mean).powi(2);
        sbb += (y - mean).powi(2);
    }
    if saa == 0.0 || sbb == 0.0 {
        return Err(Error::InsufficientData("a constant sequence has no ranking".into()));
    }
    Ok(sab / (saa * sbb).sqrt())
}

/// Spearman correlation between redundancy and averaged magnitude over the
/// members of `Ω₊` that fall on the empirical DFT grid.
pub fn redundancy_correlation(empirical: &EmpiricalSpectrum, spectrum: &Spectrum, cap: usize) -> Result<f64> {
    let (mut red, mut mag) = (Vec::new(), Vec::new());
    for (w, r) in spectrum.positive_half(cap)? {
        if let Some(m) = empirical.mode_for(&w, 1e-9).and_then(|m| empirical.magnitude(&m)) {
            red.push(r.to_f64().unwrap_or(f64::MAX));
            mag.push(m);
        }
    }
    spearman(&red, &mag)
}

/// Largest DFT magnitude at modes outside `Ω`, relative to the largest overall.
pub fn containment_ratio(empirical: &EmpiricalSpectrum, spectrum: &Spectrum) -> f64 {
    let max = empirical.max_magnitude();
    if max == 0.0 {
        return 0.0;
    }
    let outside = empirical
        .modes()
        .filter(|(_, w, _)| !spectrum.contains(w))
        .map(|(_, _, m)| m)
        .fold(0.0, f64::max);
    outside / max
}

/// Relative least-squares residual `‖f − P f‖ / ‖f‖` of the samples
/// `f(points_i)` projected onto `{cos ω·x, sin ω·x : ω ∈ Ω₊}`. Works for
/// non-integer spectra, where a DFT grid cannot isolate each frequency.
pub fn containment_residual<F>(eval: F, spectrum: &Spectrum, points: &DMatrix<f64>, cap: usize) -> Result<f64>
where
    F: Fn(&[f64]) -> Result<f64> + Sync,
{
    if points.ncols() != spectrum.dims() {
        return Err(Error::Shape("probe points must match the spectrum dimension".into()));
    }
    let half = spectrum.positive_half(cap)?;
    let mut columns = Vec::with_capacity(2 * half.len());
    for (w, _) in &half {
        columns.push((w.clone(), false));
        if w.iter().any(|&c| c != 0.0) {
            columns.push((w.clone(), true));
        }
    }
    if points.nrows() <= columns.len() {
        return Err(Error::InsufficientData(format!(
            "{} probe points for {} basis functions",
            points.nrows(),
            columns.len()
        )));
    }
    let rows: Vec<Vec<f64>> = (0..points.nrows())
        .map(|i| points.row(i).iter().copied().collect())
        .collect();
    let y = rows.par_iter().map(|x| eval(x)).collect::<Result<Vec<f64>>>()?;
    let a = DMatrix::from_fn(rows.len(), columns.len(), |i, j| {
        let (w, sin) = &columns[j];
        let p: f64 = w.iter().zip(&rows[i]).map(|(a, b)| a * b).sum();
        if *sin { p.sin() } else { p.cos() }
    });
    let y = DVector::from_vec(y);
    let norm = y.norm();
    if norm == 0.0 {
        return Ok(0.0);
    }
    let coef = a
        .clone()
        .svd(true, true)
        .solve(&y, 1e-12)
        .map_err(|e| Error::InvalidSpec(e.to_string()))?;
    Ok((a * coef - &y).norm() / norm)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Packet {
    pub low: f64,
    pub high: f64,
    pub members: usize,
}

/// Groups sorted frequencies whose consecutive gaps are at most `gap`.
pub fn detect_packets(frequencies: &[f64], gap: f64) -> Vec<Packet> {
    let mut sorted = frequencies.to_vec();
    sorted.sort_by(f64::total_cmp);
    let mut out: Vec<Packet> = Vec::new();
    for w in sorted {
        match out.last_mut() {
            Some(p) if w - p.high <= gap => {
                p.high = w;
                p.members += 1;
            }
            _ => out.push(Packet {
                low: w,
                high: w,
                members: 1,
            }),
        }
    }
    out
}

/// Largest `‖ω‖` whose averaged magnitude reaches `fraction` of the peak.
pub fn omega_effective(empirical: &EmpiricalSpectrum, fraction: f64) -> f64 {
    let threshold = fraction * empirical.max_magnitude();
    empirical
        .modes()
        .filter(|(_, _, m)| *m >= threshold && *m > 0.0)
        .map(|(_, w, _)| w.iter().map(|c| c * c).sum::<f64>().sqrt())
        .fold(0.0, f64::max)
}
