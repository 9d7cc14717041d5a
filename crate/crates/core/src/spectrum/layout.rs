use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::operators::{build_matrix, eigendecompose, presets, HamiltonianSpec};

fn unit() -> f64 {
    1.0
}

/// One encoding gate `exp(-i β x_κ H)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EncodingGate {
    pub hamiltonian: HamiltonianSpec,
    #[serde(default = "unit")]
    pub scaling: f64,
}

impl EncodingGate {
    pub fn new(hamiltonian: HamiltonianSpec, scaling: f64) -> Self {
        Self {
            hamiltonian,
            scaling,
        }
    }

    /// Eigenvalues of `β H`, with multiplicity, ascending.
    pub fn scaled_eigenvalues(&self) -> Result<Vec<f64>> {
        let eig = eigendecompose(&build_matrix(&self.hamiltonian)?)?;
        Ok(eig.eigenvalues.iter().map(|l| l * self.scaling).collect())
    }
}

/// Encoding gates grouped by the input dimension they load.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<EncodingGate>>", into = "Vec<Vec<EncodingGate>>")]
pub struct EncodingLayout {
    dims: Vec<Vec<EncodingGate>>,
}

impl EncodingLayout {
    pub fn new(dims: Vec<Vec<EncodingGate>>) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::InvalidSpec("layout needs at least one dimension".into()));
        }
        for (k, gates) in dims.iter().enumerate() {
            if gates.is_empty() {
                return Err(Error::InvalidSpec(format!("dimension {k} has no encoding gate")));
            }
            if let Some(g) = gates.iter().find(|g| !g.scaling.is_finite() || g.scaling == 0.0) {
                return Err(Error::InvalidSpec(format!(
                    "scaling factor {} in dimension {k} must be finite and nonzero",
                    g.scaling
                )));
            }
        }
        Ok(Self { dims })
    }

    /// The same `gates_per_dim` gates on each of `dims` dimensions.
    pub fn uniform(gate: EncodingGate, gates_per_dim: usize, dims: usize) -> Result<Self> {
        Self::new(vec![vec![gate; gates_per_dim]; dims])
    }

    /// `L` gates `exp(-i x Z/2)` per dimension.
    pub fn pauli(gates_per_dim: usize, dims: usize) -> Result<Self> {
        Self::uniform(
            EncodingGate::new(presets::pauli_z_half(), 1.0),
            gates_per_dim,
            dims,
        )
    }

    /// Pauli gates with scalings `β_ℓ = 3^(ℓ-1)`, giving `3^L` distinct
    /// integer frequencies per dimension.
    pub fn exponential_pauli(gates_per_dim: usize, dims: usize) -> Result<Self> {
        let gates = (0..gates_per_dim)
            .map(|l| EncodingGate::new(presets::pauli_z_half(), 3f64.powi(l as i32)))
            .collect::<Vec<_>>();
        Self::new(vec![gates; dims])
    }

    pub fn dims(&self) -> usize {
        self.dims.len()
    }

    pub fn gates(&self, dim: usize) -> &[EncodingGate] {
        &self.dims[dim]
    }

    pub fn iter(&self) -> impl Iterator<Item = &[EncodingGate]> {
        self.dims.iter().map(Vec::as_slice)
    }

    /// Scaled eigenvalues of every gate: the branching of each dimension's tree.
    pub fn eigen_tree(&self) -> Result<EigenTree> {
        let dims = self
            .dims
            .iter()
            .map(|gates| gates.iter().map(EncodingGate::scaled_eigenvalues).collect())
            .collect::<Result<Vec<Vec<_>>>>()?;
        Ok(EigenTree { dims })
    }
}

impl TryFrom<Vec<Vec<EncodingGate>>> for EncodingLayout {
    type Error = Error;
    fn try_from(dims: Vec<Vec<EncodingGate>>) -> Result<Self> {
        Self::new(dims)
    }
}

impl From<EncodingLayout> for Vec<Vec<EncodingGate>> {
    fn from(layout: EncodingLayout) -> Self {
        layout.dims
    }
}

/// Per dimension, per gate: the scaled eigenvalues (with multiplicity).
#[derive(Debug, Clone, PartialEq)]
pub struct EigenTree {
    pub dims: Vec<Vec<Vec<f64>>>,
}

impl EigenTree {
    pub fn dims(&self) -> usize {
        self.dims.len()
    }
}
