use rand::seq::SliceRandom;
use rand::Rng as _;
use serde::{Deserialize, Serialize};

use super::circuit::{Block, CircuitDescription, Rotation};
use crate::error::{Error, Result};
use crate::operators::{presets, HamiltonianSpec, Pauli};
use crate::rng::rng_from_seed;

fn unit() -> f64 {
    1.0
}

fn five() -> usize {
    5
}

fn one() -> usize {
    1
}

fn yes() -> bool {
    true
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PoolEntry {
    pub hamiltonian: HamiltonianSpec,
    #[serde(default = "unit")]
    pub scaling: f64,
}

impl PoolEntry {
    pub fn new(hamiltonian: HamiltonianSpec, scaling: f64) -> Self {
        Self {
            hamiltonian,
            scaling,
        }
    }
}

/// How encoding gates are picked from the pool.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Selection {
    /// Gate `ℓ` of every dimension takes entry `ℓ mod |pool|`.
    #[default]
    Cycle,
    Random,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeneratorConfig {
    #[serde(default = "five")]
    pub qubits: usize,
    pub pool: Vec<PoolEntry>,
    /// Encoding gates per input dimension (`L`).
    pub gates_per_dim: usize,
    pub dims: usize,
    /// Rotation layers (each followed by a CNOT ladder) per ansatz block.
    #[serde(default = "one")]
    pub ansatz_depth: usize,
    #[serde(default)]
    pub selection: Selection,
    /// Extra factor `base^ℓ` on the scaling of gate `ℓ`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scaling_base: Option<f64>,
    /// Put an ansatz block before the first encoding layer too.
    #[serde(default = "yes")]
    pub initial_ansatz: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub observable: Option<HamiltonianSpec>,
    #[serde(default)]
    pub seed: u64,
}

impl GeneratorConfig {
    pub fn new(pool: Vec<PoolEntry>, gates_per_dim: usize, dims: usize, seed: u64) -> Self {
        Self {
            qubits: 5,
            pool,
            gates_per_dim,
            dims,
            ansatz_depth: 1,
            selection: Selection::Cycle,
            scaling_base: None,
            initial_ansatz: true,
            observable: None,
            seed,
        }
    }

    /// Pool of one `Z/2` Pauli generator.
    pub fn pauli(gates_per_dim: usize, dims: usize, seed: u64) -> Self {
        Self::new(vec![PoolEntry::new(presets::pauli_z_half(), 1.0)], gates_per_dim, dims, seed)
    }

    /// `H_XYZ` followed by four scaled Pauli gates.
    pub fn mixed_hxyz(dims: usize, seed: u64) -> Self {
        let mut pool = vec![PoolEntry::new(presets::hxyz(), 1.0)];
        pool.extend(
            presets::SCALED_PAULI_FACTORS
                .iter()
                .map(|&s| PoolEntry::new(presets::pauli_z_half(), s)),
        );
        let l = pool.len();
        Self::new(pool, l, dims, seed)
    }
}

/// Random circuit: per layer, one encoding gate for each dimension on randomly
/// chosen qubits, then an ansatz block of random-axis rotations and CNOT ladders.
/// Parameters are drawn uniformly on `[0, 2π)`.
pub fn random_instance(cfg: &GeneratorConfig) -> Result<(CircuitDescription, Vec<f64>)> {
    if cfg.pool.is_empty() {
        return Err(Error::InvalidSpec("Hamiltonian pool is empty".into()));
    }
    if let Some(e) = cfg.pool.iter().find(|e| e.hamiltonian.qubits() > cfg.qubits) {
        return Err(Error::InvalidSpec(format!(
            "{}-qubit pool Hamiltonian on a {}-qubit register",
            e.hamiltonian.qubits(),
            cfg.qubits
        )));
    }
    if cfg.gates_per_dim == 0 || cfg.dims == 0 {
        return Err(Error::InvalidSpec("need at least one gate and one dimension".into()));
    }
    let mut rng = rng_from_seed(cfg.seed);
    let mut blocks = Vec::new();
    let mut params = 0usize;
    let mut ansatz = |rng: &mut crate::rng::Rng, blocks: &mut Vec<Block>| {
        for _ in 0..cfg.ansatz_depth {
            let rotations = (0..cfg.qubits)
                .map(|q| {
                    let axis = Pauli::ALL[rng.random_range(0..3u32) as usize];
                    params += 1;
                    Rotation {
                        axis,
                        qubit: q,
                        param: params - 1,
                    }
                })
                .collect();
            blocks.push(Block::Ansatz {
                rotations,
                cnot_ladder: true,
                repetitions: 1,
            });
        }
    };
    if cfg.initial_ansatz {
        ansatz(&mut rng, &mut blocks);
    }
    let qubits: Vec<usize> = (0..cfg.qubits).collect();
    for l in 0..cfg.gates_per_dim {
        for k in 0..cfg.dims {
            let entry = match cfg.selection {
                Selection::Cycle => &cfg.pool[l % cfg.pool.len()],
                Selection::Random => &cfg.pool[rng.random_range(0..cfg.pool.len() as u64) as usize],
            };
            let width = entry.hamiltonian.qubits();
            let mut targets = qubits.clone();
            targets.shuffle(&mut rng);
            targets.truncate(width);
            let scaling = entry.scaling * cfg.scaling_base.map_or(1.0, |b| b.powi(l as i32));
            blocks.push(Block::Encoding {
                dim: k,
                hamiltonian: entry.hamiltonian.clone(),
                targets,
                scaling,
            });
        }
        ansatz(&mut rng, &mut blocks);
    }
    let theta = (0..params)
        .map(|_| rng.random_range(0.0..std::f64::consts::TAU))
        .collect();
    let desc = CircuitDescription {
        qubits: cfg.qubits,
        dims: cfg.dims,
        parameters: params,
        blocks,
        observable: cfg.observable.clone(),
    };
    desc.validate()?;
    Ok((desc, theta))
}
