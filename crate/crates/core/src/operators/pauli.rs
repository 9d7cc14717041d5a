use serde::{Deserialize, Serialize};

use super::{max_hermitian_deviation, CMatrix, C64, HERMITIAN_TOLERANCE};
use crate::error::{Error, Result};

pub const DEFAULT_MAX_QUBITS: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Pauli {
    X,
    Y,
    Z,
}

impl Pauli {
    pub const ALL: [Pauli; 3] = [Pauli::X, Pauli::Y, Pauli::Z];

    pub fn matrix(self) -> CMatrix {
        let o = C64::new(0.0, 0.0);
        let l = C64::new(1.0, 0.0);
        let i = C64::new(0.0, 1.0);
        match self {
            Pauli::X => CMatrix::from_row_slice(2, 2, &[o, l, l, o]),
            Pauli::Y => CMatrix::from_row_slice(2, 2, &[o, -i, i, o]),
            Pauli::Z => CMatrix::from_row_slice(2, 2, &[l, o, o, -l]),
        }
    }
}

/// `coefficient · ⊗_q σ_q` over the listed qubits, identity elsewhere.
#[derive(Debug, Clone, PartialEq)]
pub struct PauliTerm {
    coefficient: f64,
    factors: Vec<(usize, Pauli)>,
}

impl PauliTerm {
    pub fn new(coefficient: f64, mut factors: Vec<(usize, Pauli)>) -> Result<Self> {
        if !coefficient.is_finite() {
            return Err(Error::InvalidSpec(format!(
                "Pauli coefficient {coefficient} is not finite"
            )));
        }
        factors.sort_by_key(|&(q, _)| q);
        if factors.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::InvalidSpec(
                "Pauli term has two factors on the same qubit".into(),
            ));
        }
        Ok(Self {
            coefficient,
            factors,
        })
    }

    pub fn coefficient(&self) -> f64 {
        self.coefficient
    }

    /// Factors sorted by qubit index.
    pub fn factors(&self) -> &[(usize, Pauli)] {
        &self.factors
    }

    fn max_qubit(&self) -> Option<usize> {
        self.factors.last().map(|&(q, _)| q)
    }

    /// Bit mask of qubits flipped by the string (X or Y factors).
    pub(crate) fn flip_mask(&self) -> usize {
        self.factors
            .iter()
            .filter(|(_, p)| *p != Pauli::Z)
            .fold(0, |m, &(q, _)| m | (1 << q))
    }

    /// Amplitude picked up by basis state `b`: `P|b> = phase(b) |b ^ flip_mask>`.
    pub(crate) fn phase(&self, b: usize) -> C64 {
        let mut phase = C64::new(self.coefficient, 0.0);
        for &(q, p) in &self.factors {
            let bit = (b >> q) & 1;
            match (p, bit) {
                (Pauli::X, _) | (Pauli::Z, 0) => {}
                (Pauli::Z, _) => phase = -phase,
                (Pauli::Y, 0) => phase *= C64::new(0.0, 1.0),
                (Pauli::Y, _) => phase *= C64::new(0.0, -1.0),
            }
        }
        phase
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum HamiltonianForm {
    PauliSum(Vec<PauliTerm>),
    ExplicitMatrix(CMatrix),
}

/// Hermitian generator on `qubits` qubits.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawHamiltonian", into = "RawHamiltonian")]
pub struct HamiltonianSpec {
    qubits: usize,
    form: HamiltonianForm,
}

impl HamiltonianSpec {
    pub fn pauli_sum(qubits: usize, terms: Vec<PauliTerm>) -> Result<Self> {
        check_width(qubits, DEFAULT_MAX_QUBITS)?;
        if let Some(bad) = terms.iter().filter_map(PauliTerm::max_qubit).find(|&q| q >= qubits) {
            return Err(Error::InvalidSpec(format!(
                "Pauli factor on qubit {bad} but Hamiltonian has {qubits} qubits"
            )));
        }
        Ok(Self {
            qubits,
            form: HamiltonianForm::PauliSum(terms),
        })
    }

    pub fn explicit(matrix: CMatrix) -> Result<Self> {
        let n = matrix.nrows();
        if n != matrix.ncols() || !n.is_power_of_two() || n < 2 {
            return Err(Error::InvalidSpec(format!(
                "explicit Hamiltonian must be 2^p x 2^p, got {}x{}",
                matrix.nrows(),
                matrix.ncols()
            )));
        }
        let qubits = n.trailing_zeros() as usize;
        check_width(qubits, DEFAULT_MAX_QUBITS)?;
        let dev = max_hermitian_deviation(&matrix);
        if dev > HERMITIAN_TOLERANCE {
            return Err(Error::NotHermitian { max_deviation: dev });
        }
        Ok(Self {
            qubits,
            form: HamiltonianForm::ExplicitMatrix(matrix),
        })
    }

    /// `coefficient · σ` on a single qubit.
    pub fn single_pauli(axis: Pauli, coefficient: f64) -> Self {
        let term = PauliTerm::new(coefficient, vec![(0, axis)]).expect("finite coefficient");
        Self::pauli_sum(1, vec![term]).expect("one qubit is valid")
    }

    pub fn qubits(&self) -> usize {
        self.qubits
    }

    pub fn form(&self) -> &HamiltonianForm {
        &self.form
    }

    /// Rejects Hamiltonians wider than `max_qubits`.
    pub fn check_max_qubits(&self, max_qubits: usize) -> Result<()> {
        check_width(self.qubits, max_qubits)
    }

    /// Multiplies every coefficient (or matrix entry) by `factor`.
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        match &self.form {
            HamiltonianForm::PauliSum(terms) => {
                let terms = terms
                    .iter()
                    .map(|t| PauliTerm::new(t.coefficient * factor, t.factors.clone()))
                    .collect::<Result<Vec<_>>>()?;
                Self::pauli_sum(self.qubits, terms)
            }
            HamiltonianForm::ExplicitMatrix(m) => Self::explicit(m * C64::new(factor, 0.0)),
        }
    }
}

fn check_width(qubits: usize, max: usize) -> Result<()> {
    if qubits == 0 {
        return Err(Error::InvalidSpec("Hamiltonian needs at least one qubit".into()));
    }
    if qubits > max {
        return Err(Error::InvalidSpec(format!(
            "Hamiltonian on {qubits} qubits exceeds the maximum of {max}"
        )));
    }
    Ok(())
}

/// Dense `2^p × 2^p` matrix of the Hamiltonian (little-endian qubit order).
pub fn build_matrix(spec: &HamiltonianSpec) -> Result<CMatrix> {
    let dim = 1usize << spec.qubits;
    match &spec.form {
        HamiltonianForm::ExplicitMatrix(m) => Ok(m.clone()),
        HamiltonianForm::PauliSum(terms) => {
            let mut h = CMatrix::zeros(dim, dim);
            for term in terms {
                if let Some(q) = term.max_qubit().filter(|&q| q >= spec.qubits) {
                    return Err(Error::InvalidSpec(format!(
                        "Pauli factor on qubit {q} outside {} qubits",
                        spec.qubits
                    )));
                }
                let mask = term.flip_mask();
                for col in 0..dim {
                    h[(col ^ mask, col)] += term.phase(col);
                }
            }
            Ok(h)
        }
    }
}

#[derive(Serialize, Deserialize)]
struct RawTerm {
    coeff: f64,
    ops: Vec<(usize, Pauli)>,
}

#[derive(Serialize, Deserialize)]
struct RawHamiltonian {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    qubits: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pauli_terms: Option<Vec<RawTerm>>,
    /// Row-major `[re, im]` pairs.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    matrix: Option<Vec<[f64; 2]>>,
}

impl TryFrom<RawHamiltonian> for HamiltonianSpec {
    type Error = Error;

    fn try_from(raw: RawHamiltonian) -> Result<Self> {
        match (raw.pauli_terms, raw.matrix) {
            (Some(terms), None) => {
                let qubits = raw
                    .qubits
                    .ok_or_else(|| Error::InvalidSpec("pauli_terms requires \"qubits\"".into()))?;
                let terms = terms
                    .into_iter()
                    .map(|t| PauliTerm::new(t.coeff, t.ops))
                    .collect::<Result<Vec<_>>>()?;
                Self::pauli_sum(qubits, terms)
            }
            (None, Some(entries)) => {
                let n = (entries.len() as f64).sqrt().round() as usize;
                if n * n != entries.len() {
                    return Err(Error::InvalidSpec(format!(
                        "matrix has {} entries, not a square count",
                        entries.len()
                    )));
                }
                let data: Vec<C64> = entries.iter().map(|&[re, im]| C64::new(re, im)).collect();
                let spec = Self::explicit(CMatrix::from_row_slice(n, n, &data))?;
                if let Some(q) = raw.qubits.filter(|&q| q != spec.qubits) {
                    return Err(Error::InvalidSpec(format!(
                        "\"qubits\" = {q} disagrees with a {n}x{n} matrix"
                    )));
                }
                Ok(spec)
            }
            _ => Err(Error::InvalidSpec(
                "Hamiltonian needs exactly one of \"pauli_terms\" or \"matrix\"".into(),
            )),
        }
    }
}

impl From<HamiltonianSpec> for RawHamiltonian {
    fn from(spec: HamiltonianSpec) -> Self {
        match spec.form {
            HamiltonianForm::PauliSum(terms) => RawHamiltonian {
                qubits: Some(spec.qubits),
                pauli_terms: Some(
                    terms
                        .into_iter()
                        .map(|t| RawTerm {
                            coeff: t.coefficient,
                            ops: t.factors,
                        })
                        .collect(),
                ),
                matrix: None,
            },
            HamiltonianForm::ExplicitMatrix(m) => {
                let n = m.nrows();
                let mut entries = Vec::with_capacity(n * n);
                for r in 0..n {
                    for c in 0..n {
                        entries.push([m[(r, c)].re, m[(r, c)].im]);
                    }
                }
                RawHamiltonian {
                    qubits: Some(spec.qubits),
                    pauli_terms: None,
                    matrix: Some(entries),
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operators::presets;

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    #[test]
    fn half_z_is_diagonal() {
        let h = build_matrix(&HamiltonianSpec::single_pauli(Pauli::Z, 0.5)).unwrap();
        assert_eq!(h, CMatrix::from_diagonal(&nalgebra::dvector![c(0.5), c(-0.5)]));
    }

    #[test]
    fn xx_is_anti_diagonal() {
        let term = PauliTerm::new(1.0, vec![(0, Pauli::X), (1, Pauli::X)]).unwrap();
        let h = build_matrix(&HamiltonianSpec::pauli_sum(2, vec![term]).unwrap()).unwrap();
        for r in 0..4 {
            for col in 0..4 {
                let want = if r + col == 3 { 1.0 } else { 0.0 };
                assert_eq!(h[(r, col)], c(want));
            }
        }
    }

    #[test]
    fn single_factor_matches_kronecker_placement() {
        // Y on qubit 1 of 2 must equal kron(Y, I).
        let term = PauliTerm::new(1.0, vec![(1, Pauli::Y)]).unwrap();
        let h = build_matrix(&HamiltonianSpec::pauli_sum(2, vec![term]).unwrap()).unwrap();
        let want = Pauli::Y.matrix().kronecker(&CMatrix::identity(2, 2));
        assert_eq!(h, want);
    }

    #[test]
    fn hxyz_is_hermitian_8x8() {
        let h = build_matrix(&presets::hxyz()).unwrap();
        assert_eq!(h.shape(), (8, 8));
        assert!(max_hermitian_deviation(&h) < 1e-15);
    }

    #[test]
    fn rejects_out_of_range_qubit() {
        let term = PauliTerm::new(1.0, vec![(3, Pauli::X)]).unwrap();
        assert!(matches!(
            HamiltonianSpec::pauli_sum(2, vec![term]),
            Err(Error::InvalidSpec(_))
        ));
    }

    #[test]
    fn rejects_duplicate_qubit_and_nonfinite() {
        assert!(PauliTerm::new(1.0, vec![(0, Pauli::X), (0, Pauli::Z)]).is_err());
        assert!(PauliTerm::new(f64::NAN, vec![(0, Pauli::X)]).is_err());
    }

    #[test]
    fn rejects_too_many_qubits() {
        let term = PauliTerm::new(1.0, vec![(0, Pauli::Z)]).unwrap();
        assert!(HamiltonianSpec::pauli_sum(11, vec![term.clone()]).is_err());
        let ok = HamiltonianSpec::pauli_sum(4, vec![term]).unwrap();
        assert!(ok.check_max_qubits(3).is_err());
    }

    #[test]
    fn explicit_rejects_non_hermitian() {
        let m = CMatrix::from_row_slice(2, 2, &[c(0.0), c(1.0), c(0.0), c(0.0)]);
        assert!(matches!(
            HamiltonianSpec::explicit(m),
            Err(Error::NotHermitian { .. })
        ));
    }

    #[test]
    fn json_forms() {
        let spec: HamiltonianSpec =
            serde_json::from_str(r#"{"qubits": 2, "pauli_terms": [{"coeff": 0.5, "ops": [[1, "X"], [0, "Z"]]}]}"#)
                .unwrap();
        assert_eq!(spec.qubits(), 2);
        let back: HamiltonianSpec =
            serde_json::from_str(&serde_json::to_string(&spec).unwrap()).unwrap();
        assert_eq!(back, spec);

        let m: HamiltonianSpec =
            serde_json::from_str(r#"{"matrix": [[1,0],[0,-1],[0,1],[-1,0]]}"#).unwrap();
        assert_eq!(m.qubits(), 1);
        let h = build_matrix(&m).unwrap();
        assert_eq!(h[(0, 1)], C64::new(0.0, -1.0));

        assert!(serde_json::from_str::<HamiltonianSpec>(r#"{"matrix": [[1,0],[0,0],[0,0]]}"#).is_err());
        assert!(serde_json::from_str::<HamiltonianSpec>(r#"{"pauli_terms": []}"#).is_err());
    }
}
