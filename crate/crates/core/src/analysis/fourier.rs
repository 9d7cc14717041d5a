use std::io::Write;

use nalgebra::Complex;
use rayon::prelude::*;
use rustfft::FftPlanner;

use crate::error::{Error, Result};

/// Averaged DFT magnitudes of a model sampled on `[0, x_max)^d`, `d <= 2`.
///
/// Mode `m` (per dimension, `-N/2 <= m < N/2`) sits at frequency
/// `2π m / x_max` and its magnitude estimates `|c_ω|` in
/// `f(x) = Σ c_ω e^{i ω·x}`. Storage is row-major over shifted modes.
#[derive(Debug, Clone, PartialEq)]
pub struct EmpiricalSpectrum {
    pub x_max: Vec<f64>,
    pub points: usize,
    pub magnitudes: Vec<f64>,
    /// Number of model instances averaged.
    pub averaged: usize,
}

impl EmpiricalSpectrum {
    pub fn dims(&self) -> usize {
        self.x_max.len()
    }

    fn mode_of(&self, flat: usize) -> Vec<i64> {
        let n = self.points;
        let half = (n / 2) as i64;
        let mut out = vec![0i64; self.dims()];
        let mut r = flat;
        for k in (0..self.dims()).rev() {
            out[k] = (r % n) as i64 - half;
            r /= n;
        }
        out
    }

    fn flat_of(&self, mode: &[i64]) -> Option<usize> {
        let half = (self.points / 2) as i64;
        mode.iter().try_fold(0usize, |acc, &m| {
            (-half..half)
                .contains(&m)
                .then(|| acc * self.points + (m + half) as usize)
        })
    }

    /// `(mode, frequency vector, magnitude)` for every grid mode.
    pub fn modes(&self) -> impl Iterator<Item = (Vec<i64>, Vec<f64>, f64)> + '_ {
        self.magnitudes.iter().enumerate().map(|(i, &mag)| {
            let m = self.mode_of(i);
            let w = m
                .iter()
                .zip(&self.x_max)
                .map(|(&m, &x)| std::f64::consts::TAU * m as f64 / x)
                .collect();
            (m, w, mag)
        })
    }

    /// Integer mode of a frequency vector if it lies on the DFT grid.
    pub fn mode_for(&self, omega: &[f64], tolerance: f64) -> Option<Vec<i64>> {
        if omega.len() != self.dims() {
            return None;
        }
        omega
            .iter()
            .zip(&self.x_max)
            .map(|(&w, &x)| {
                let m = w * x / std::f64::consts::TAU;
                ((m - m.round()).abs() <= tolerance).then(|| m.round() as i64)
            })
            .collect()
    }

    pub fn magnitude(&self, mode: &[i64]) -> Option<f64> {
        self.flat_of(mode).map(|i| self.magnitudes[i])
    }

    pub fn max_magnitude(&self) -> f64 {
        self.magnitudes.iter().fold(0.0, |m, &v| m.max(v))
    }

    /// Writes `frequency,magnitude` (or `frequency_1,…,magnitude` for d > 1).
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        let mut header: Vec<String> = if self.dims() == 1 {
            vec!["frequency".into()]
        } else {
            (1..=self.dims()).map(|k| format!("frequency_{k}")).collect()
        };
        header.push("magnitude".into());
        w.write_record(&header)?;
        for (_, freq, mag) in self.modes() {
            let mut rec: Vec<String> = freq.iter().map(|f| format!("{f}")).collect();
            rec.push(format!("{mag}"));
            w.write_record(&rec)?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Samples `eval(seed, x)` for every seed on the `N^d` half-open lattice,
/// takes the normalized DFT and averages magnitudes over seeds.
///
/// When `max_frequency` is given, `N` must satisfy `N >= 2 ω_max x_max / π`
/// per dimension.
pub fn empirical_fourier<F>(
    eval: F,
    x_max: &[f64],
    points: usize,
    seeds: &[u64],
    max_frequency: Option<&[f64]>,
) -> Result<EmpiricalSpectrum>
where
    F: Fn(u64, &[f64]) -> Result<f64> + Sync,
{
    let d = x_max.len();
    if d == 0 || d > 2 {
        return Err(Error::InvalidSpec(format!(
            "empirical Fourier analysis supports 1 or 2 dimensions, got {d}"
        )));
    }
    if points < 2 || points % 2 != 0 {
        return Err(Error::InvalidSpec(format!("grid size must be even, got {points}")));
    }
    if seeds.is_empty() {
        return Err(Error::InvalidSpec("need at least one seed to average".into()));
    }
    if let Some(w) = max_frequency {
        if w.len() != d {
            return Err(Error::Shape("one maximum frequency per dimension expected".into()));
        }
        let required = w
            .iter()
            .zip(x_max)
            .map(|(w, x)| (2.0 * w * x / std::f64::consts::PI - 1e-9).ceil().max(0.0) as usize)
            .max()
            .unwrap_or(0);
        if points < required {
            return Err(Error::ShannonViolation {
                required,
                got: points,
            });
        }
    }
    let total = points.pow(d as u32);
    let per_seed = seeds
        .par_iter()
        .map(|&seed| {
            let mut buf = (0..total)
                .map(|i| {
                    let x: Vec<f64> = if d == 1 {
                        vec![i as f64 * x_max[0] / points as f64]
                    } else {
                        vec![
                            (i / points) as f64 * x_max[0] / points as f64,
                            (i % points) as f64 * x_max[1] / points as f64,
                        ]
                    };
                    eval(seed, &x).map(|v| Complex::new(v, 0.0))
                })
                .collect::<Result<Vec<_>>>()?;
            dft_in_place(&mut buf, points, d);
            Ok(shifted_magnitudes(&buf, points, d))
        })
        .collect::<Result<Vec<Vec<f64>>>>()?;
    let mut magnitudes = vec![0.0; total];
    for m in &per_seed {
        for (acc, v) in magnitudes.iter_mut().zip(m) {
            *acc += v / seeds.len() as f64;
        }
    }
    Ok(EmpiricalSpectrum {
        x_max: x_max.to_vec(),
        points,
        magnitudes,
        averaged: seeds.len(),
    })
}

/// Forward DFT normalized by `1/N^d`, row-major layout.
pub(crate) fn dft_in_place(buf: &mut [Complex<f64>], n: usize, d: usize) {
    let fft = FftPlanner::new().plan_fft_forward(n);
    for row in buf.chunks_exact_mut(n) {
        fft.process(row);
    }
    if d == 2 {
        let mut col = vec![Complex::new(0.0, 0.0); n];
        for j in 0..n {
            for i in 0..n {
                col[i] = buf[i * n + j];
            }
            fft.process(&mut col);
            for i in 0..n {
                buf[i * n + j] = col[i];
            }
        }
    }
    let scale = 1.0 / buf.len() as f64;
    for v in buf.iter_mut() {
        *v *= scale;
    }
}

fn shifted_magnitudes(buf: &[Complex<f64>], n: usize, d: usize) -> Vec<f64> {
    let shift = |i: usize| (i + n / 2) % n;
    if d == 1 {
        (0..n).map(|s| buf[shift(s)].norm()).collect()
    } else {
        (0..n * n)
            .map(|s| buf[shift(s / n) * n + shift(s % n)].norm())
            .collect()
    }
}
