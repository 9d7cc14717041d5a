//! Sample-complexity calculators for random Fourier feature approximations.
//!
//! All functions evaluate the closed-form right-hand sides literally; they say
//! nothing about the hidden constants of the asymptotic statements.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct BoundInputs {
    pub d: usize,
    /// Encoding gates per dimension (Pauli bound).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gates_per_dim: Option<usize>,
    /// Largest frequency of the grid (grid bound).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega_max: Option<f64>,
    pub lambda0: f64,
    pub epsilon: f64,
    pub delta: f64,
    /// Root mean square target, `σ_y`.
    pub sigma_y: f64,
    /// Domain diameter `|X|`.
    pub diameter: f64,
    /// Grid step `s` (grid bound).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub step: Option<f64>,
    /// `σ_p = E_p[ωᵀω]` (general bound).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sigma_p: Option<f64>,
    /// `|f|_∞`, defaulting to `σ_y` when absent (grid bound).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f_inf: Option<f64>,
}

fn positive(name: &str, v: f64) -> Result<f64> {
    if v.is_finite() && v > 0.0 {
        Ok(v)
    } else {
        Err(Error::InvalidSpec(format!("{name} must be positive, got {v}")))
    }
}

impl BoundInputs {
    fn check(&self) -> Result<()> {
        if self.d == 0 {
            return Err(Error::InvalidSpec("d must be at least 1".into()));
        }
        positive("ε", self.epsilon)?;
        positive("λ₀", self.lambda0)?;
        positive("σ_y", self.sigma_y)?;
        positive("|X|", self.diameter)?;
        if !(self.delta > 0.0 && self.delta < 1.0) {
            return Err(Error::InvalidSpec(format!("δ must lie in (0, 1), got {}", self.delta)));
        }
        Ok(())
    }
}

/// `66 (σ_p |X| / ε)² exp(−D ε² / (4 (d + 2)))`, unclamped.
pub fn bound_rff_kernel(sigma_p: f64, diameter: f64, epsilon: f64, d: usize, samples: f64) -> f64 {
    66.0 * (sigma_p * diameter / epsilon).powi(2)
        * (-samples * epsilon * epsilon / (4.0 * (d as f64 + 2.0))).exp()
}

/// [`bound_rff_kernel`] clamped to a probability.
pub fn bound_rff_kernel_probability(sigma_p: f64, diameter: f64, epsilon: f64, d: usize, samples: f64) -> f64 {
    bound_rff_kernel(sigma_p, diameter, epsilon, d, samples).clamp(0.0, 1.0)
}

/// `K = (λ₀ + 1) σ_y / (λ₀² ε)`.
fn prefactor(lambda0: f64, sigma_y: f64, epsilon: f64) -> f64 {
    (lambda0 + 1.0) * sigma_y / (lambda0 * lambda0 * epsilon)
}

/// `D = d K² [log(σ_p |X|) + log K − log δ]` with `K = (λ₀ + 1) σ_y / (λ₀² ε)`.
pub fn bound_samples(inputs: &BoundInputs) -> Result<f64> {
    inputs.check()?;
    let sigma_p = positive(
        "σ_p",
        inputs
            .sigma_p
            .ok_or_else(|| Error::InvalidSpec("σ_p is required".into()))?,
    )?;
    let k = prefactor(inputs.lambda0, inputs.sigma_y, inputs.epsilon);
    Ok(inputs.d as f64 * k * k * ((sigma_p * inputs.diameter).ln() + k.ln() - inputs.delta.ln()))
}

/// [`bound_samples`] with `σ_p = d L (L + 1) / 3`, the mean of `ωᵀω` over `⟦−L, L⟧^d`.
pub fn bound_samples_pauli(inputs: &BoundInputs) -> Result<f64> {
    let l = inputs
        .gates_per_dim
        .ok_or_else(|| Error::InvalidSpec("gates_per_dim is required".into()))?;
    let sigma_p = crate::spectrum::pauli_sigma_p(l, inputs.d);
    bound_samples(&BoundInputs {
        sigma_p: Some(sigma_p),
        ..inputs.clone()
    })
}

/// `C = |X| |f|_∞`.
pub fn grid_constant(inputs: &BoundInputs) -> f64 {
    inputs.diameter * inputs.f_inf.unwrap_or(inputs.sigma_y)
}

/// `D = d K_s² [log(ω_max / s) + log K_s − log δ]`, `K_s = (λ₀ + 1) σ_y / (λ₀² (ε − sC))`.
/// Requires `s < ε / C`.
pub fn bound_samples_grid(inputs: &BoundInputs) -> Result<f64> {
    inputs.check()?;
    let s = positive(
        "s",
        inputs
            .step
            .ok_or_else(|| Error::InvalidSpec("grid step s is required".into()))?,
    )?;
    let omega_max = positive(
        "ω_max",
        inputs
            .omega_max
            .ok_or_else(|| Error::InvalidSpec("omega_max is required".into()))?,
    )?;
    let c = grid_constant(inputs);
    let limit = inputs.epsilon / c;
    if s >= limit {
        return Err(Error::StepTooCoarse { step: s, limit });
    }
    let k = prefactor(inputs.lambda0, inputs.sigma_y, inputs.epsilon - s * c);
    Ok(inputs.d as f64 * k * k * ((omega_max / s).ln() + k.ln() - inputs.delta.ln()))
}

/// Bound value with the inputs that produced it, for `inputs…,D_bound` records.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub kind: String,
    #[serde(flatten)]
    pub inputs: BoundInputs,
    #[serde(rename = "D_bound")]
    pub d_bound: f64,
    pub note: String,
}
