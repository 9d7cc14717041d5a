use nalgebra::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::operators::{
    apply_cnot, apply_gate, build_matrix, eigendecompose, evolution, CMatrix, EigenDecomposition,
    HamiltonianForm, HamiltonianSpec, Pauli, PauliTerm, C64, DEFAULT_MAX_QUBITS,
};
use crate::spectrum::{EncodingGate, EncodingLayout};

fn unit() -> f64 {
    1.0
}

fn one() -> usize {
    1
}

/// `exp(-i θ σ / 2)` on one qubit, `θ` taken from the parameter vector.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Rotation {
    pub axis: Pauli,
    pub qubit: usize,
    pub param: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum Block {
    /// `exp(-i β x_dim H)` on `targets` (local qubit `j` of `H` is `targets[j]`).
    Encoding {
        dim: usize,
        hamiltonian: HamiltonianSpec,
        targets: Vec<usize>,
        #[serde(default = "unit")]
        scaling: f64,
    },
    /// Rotations in order, then optionally CNOT(q, q+1) for q = 0…n−2; the
    /// whole block applied `repetitions` times with the same parameters.
    Ansatz {
        rotations: Vec<Rotation>,
        #[serde(default)]
        cnot_ladder: bool,
        #[serde(default = "one")]
        repetitions: usize,
    },
}

/// Gate sequence acting on `|0…0⟩`, measured with `observable`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CircuitDescription {
    pub qubits: usize,
    /// Input dimension `d`.
    pub dims: usize,
    /// Parameter count `P`.
    pub parameters: usize,
    pub blocks: Vec<Block>,
    /// Defaults to `Z` on qubit 0. Acts on qubits `0…p−1` for a `p`-qubit spec.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub observable: Option<HamiltonianSpec>,
}

pub fn default_observable() -> HamiltonianSpec {
    HamiltonianSpec::single_pauli(Pauli::Z, 1.0)
}

impl CircuitDescription {
    pub fn observable(&self) -> HamiltonianSpec {
        self.observable.clone().unwrap_or_else(default_observable)
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.qubits;
        if n == 0 || n > DEFAULT_MAX_QUBITS {
            return Err(Error::InvalidSpec(format!(
                "circuit must have 1..={DEFAULT_MAX_QUBITS} qubits, got {n}"
            )));
        }
        if self.dims == 0 {
            return Err(Error::InvalidSpec("circuit needs at least one input dimension".into()));
        }
        let mut used = vec![false; self.parameters];
        for (b, block) in self.blocks.iter().enumerate() {
            match block {
                Block::Encoding {
                    dim,
                    hamiltonian,
                    targets,
                    scaling,
                } => {
                    if *dim >= self.dims {
                        return Err(Error::InvalidSpec(format!(
                            "block {b} encodes dimension {dim} of a {}-dimensional input",
                            self.dims
                        )));
                    }
                    if targets.len() != hamiltonian.qubits() {
                        return Err(Error::InvalidSpec(format!(
                            "block {b}: {}-qubit Hamiltonian on {} targets",
                            hamiltonian.qubits(),
                            targets.len()
                        )));
                    }
                    check_targets(b, targets, n)?;
                    if !scaling.is_finite() || *scaling == 0.0 {
                        return Err(Error::InvalidSpec(format!(
                            "block {b}: scaling must be finite and nonzero"
                        )));
                    }
                }
                Block::Ansatz {
                    rotations,
                    repetitions,
                    ..
                } => {
                    if *repetitions == 0 {
                        return Err(Error::InvalidSpec(format!("block {b}: zero repetitions")));
                    }
                    for r in rotations {
                        check_targets(b, &[r.qubit], n)?;
                        match used.get_mut(r.param) {
                            Some(u) => *u = true,
                            None => {
                                return Err(Error::InvalidSpec(format!(
                                    "block {b}: parameter {} out of {}",
                                    r.param, self.parameters
                                )))
                            }
                        }
                    }
                }
            }
        }
        if let Some(p) = used.iter().position(|u| !u) {
            return Err(Error::InvalidSpec(format!("parameter {p} is never used")));
        }
        let obs = self.observable();
        if obs.qubits() > n {
            return Err(Error::InvalidSpec(format!(
                "{}-qubit observable on a {n}-qubit register",
                obs.qubits()
            )));
        }
        Ok(())
    }

    /// Encoding gates grouped by input dimension, possibly empty.
    pub fn encoding_gates(&self) -> Vec<Vec<EncodingGate>> {
        let mut dims = vec![Vec::new(); self.dims];
        for block in &self.blocks {
            if let Block::Encoding {
                dim,
                hamiltonian,
                scaling,
                ..
            } = block
            {
                dims[*dim].push(EncodingGate::new(hamiltonian.clone(), *scaling));
            }
        }
        dims
    }

    /// The layout the spectrum is built from; fails if a dimension is never encoded.
    pub fn encoding_layout(&self) -> Result<EncodingLayout> {
        EncodingLayout::new(self.encoding_gates())
    }

    pub fn compile(&self) -> Result<Circuit> {
        Circuit::new(self.clone())
    }
}

fn check_targets(block: usize, targets: &[usize], n: usize) -> Result<()> {
    for (i, &t) in targets.iter().enumerate() {
        if t >= n || targets[..i].contains(&t) {
            return Err(Error::InvalidSpec(format!(
                "block {block}: target {t} invalid on {n} qubits"
            )));
        }
    }
    Ok(())
}

enum Observable {
    Terms(Vec<PauliTerm>),
    Dense { matrix: CMatrix, targets: Vec<usize> },
}

/// A validated circuit with encoding eigendecompositions cached.
pub struct Circuit {
    desc: CircuitDescription,
    eigs: Vec<Option<EigenDecomposition>>,
    observable: Observable,
}

impl Circuit {
    pub fn new(desc: CircuitDescription) -> Result<Self> {
        desc.validate()?;
        let eigs = desc
            .blocks
            .iter()
            .map(|b| match b {
                Block::Encoding { hamiltonian, .. } => {
                    eigendecompose(&build_matrix(hamiltonian)?).map(Some)
                }
                Block::Ansatz { .. } => Ok(None),
            })
            .collect::<Result<Vec<_>>>()?;
        let obs = desc.observable();
        let observable = match obs.form() {
            HamiltonianForm::PauliSum(terms) => Observable::Terms(terms.clone()),
            HamiltonianForm::ExplicitMatrix(m) => Observable::Dense {
                matrix: m.clone(),
                targets: (0..obs.qubits()).collect(),
            },
        };
        Ok(Self {
            desc,
            eigs,
            observable,
        })
    }

    pub fn description(&self) -> &CircuitDescription {
        &self.desc
    }

    pub fn dims(&self) -> usize {
        self.desc.dims
    }

    pub fn parameters(&self) -> usize {
        self.desc.parameters
    }

    fn check(&self, theta: &[f64], x: &[f64]) -> Result<()> {
        if x.len() != self.desc.dims {
            return Err(Error::Shape(format!(
                "input of dimension {} for a {}-dimensional circuit",
                x.len(),
                self.desc.dims
            )));
        }
        if theta.len() != self.desc.parameters {
            return Err(Error::Shape(format!(
                "{} parameters for a circuit with {}",
                theta.len(),
                self.desc.parameters
            )));
        }
        if theta.iter().chain(x).any(|v| !v.is_finite()) {
            return Err(Error::InvalidSpec("non-finite parameter or input".into()));
        }
        Ok(())
    }

    /// Runs the circuit, calling `after_block` with the state after each block.
    pub fn run_with<F: FnMut(&[C64])>(
        &self,
        theta: &[f64],
        x: &[f64],
        mut after_block: F,
    ) -> Result<Vec<C64>> {
        self.check(theta, x)?;
        let n = self.desc.qubits;
        let mut state = vec![C64::new(0.0, 0.0); 1 << n];
        state[0] = C64::new(1.0, 0.0);
        for (block, eig) in self.desc.blocks.iter().zip(&self.eigs) {
            match block {
                Block::Encoding {
                    dim,
                    targets,
                    scaling,
                    ..
                } => {
                    let u = evolution(eig.as_ref().expect("cached"), scaling * x[*dim]);
                    apply_gate(&mut state, &u, targets)?;
                }
                Block::Ansatz {
                    rotations,
                    cnot_ladder,
                    repetitions,
                } => {
                    for _ in 0..*repetitions {
                        for r in rotations {
                            apply_gate(&mut state, &rotation(r.axis, theta[r.param]), &[r.qubit])?;
                        }
                        if *cnot_ladder {
                            for q in 0..n.saturating_sub(1) {
                                apply_cnot(&mut state, q, q + 1);
                            }
                        }
                    }
                }
            }
            after_block(&state);
        }
        Ok(state)
    }

    pub fn final_state(&self, theta: &[f64], x: &[f64]) -> Result<Vec<C64>> {
        self.run_with(theta, x, |_| {})
    }

    /// `f(x; θ) = ⟨ψ(x; θ)| O |ψ(x; θ)⟩`.
    pub fn evaluate(&self, theta: &[f64], x: &[f64]) -> Result<f64> {
        let state = self.final_state(theta, x)?;
        let value = match &self.observable {
            Observable::Terms(terms) => terms
                .iter()
                .map(|t| {
                    let mask = t.flip_mask();
                    state
                        .iter()
                        .enumerate()
                        .map(|(b, amp)| state[b ^ mask].conj() * t.phase(b) * amp)
                        .sum::<C64>()
                })
                .sum::<C64>(),
            Observable::Dense { matrix, targets } => {
                let mut out = state.clone();
                apply_gate(&mut out, matrix, targets)?;
                state.iter().zip(&out).map(|(a, b)| a.conj() * b).sum::<C64>()
            }
        };
        debug_assert!(
            value.im.abs() <= 1e-10 * value.norm().max(1.0),
            "expectation has imaginary part {}",
            value.im
        );
        Ok(value.re)
    }
}

/// `exp(-i θ σ / 2) = cos(θ/2) I − i sin(θ/2) σ`.
pub fn rotation(axis: Pauli, theta: f64) -> CMatrix {
    let (s, c) = (theta / 2.0).sin_cos();
    let id = CMatrix::identity(2, 2) * Complex::new(c, 0.0);
    id + axis.matrix() * Complex::new(0.0, -s)
}
