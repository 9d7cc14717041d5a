//! Dense complex operators: Pauli-sum Hamiltonians, Hermitian
//! eigendecomposition, unitary evolution and qubit embedding.
//!
//! Qubit ordering is little-endian everywhere: qubit `q` is bit `q` of a basis
//! index, so qubit 0 is the least-significant (right-most) Kronecker factor.
//! `X` on qubit 1 of a two-qubit register is therefore `X ⊗ I`.

mod linalg;
mod pauli;

pub use linalg::{
    apply_cnot, apply_gate, eigendecompose, embed, evolution, max_hermitian_deviation,
    EigenDecomposition, HERMITIAN_TOLERANCE,
};
pub use pauli::{build_matrix, HamiltonianForm, HamiltonianSpec, Pauli, PauliTerm, DEFAULT_MAX_QUBITS};

use nalgebra::{Complex, DMatrix};

pub type C64 = Complex<f64>;
pub type CMatrix = DMatrix<C64>;

pub mod presets {
    //! Encoding Hamiltonians used by the experiments.
    use super::{HamiltonianSpec, Pauli, PauliTerm};

    /// `Z/2`: eigenvalues ±1/2, i.e. the generator of `R_Z(x)`.
    pub fn pauli_z_half() -> HamiltonianSpec {
        HamiltonianSpec::single_pauli(Pauli::Z, 0.5)
    }

    /// Three-qubit two-body Hamiltonian with the coefficients used for the
    /// mixed-encoding experiment:
    /// `7 X0X1 + 7 X1X0 + 0.11 X0X2 + 0.1 X2X0 + 8 (Y1Y2 + Y2Y1 + Z0Z2 + Z2Z0)`.
    pub fn hxyz() -> HamiltonianSpec {
        use Pauli::*;
        let t = |c: f64, a: (usize, Pauli), b: (usize, Pauli)| {
            PauliTerm::new(c, vec![a, b]).expect("static term is valid")
        };
        HamiltonianSpec::pauli_sum(
            3,
            vec![
                t(7.0, (0, X), (1, X)),
                t(7.0, (1, X), (0, X)),
                t(0.11, (0, X), (2, X)),
                t(0.1, (2, X), (0, X)),
                t(8.0, (1, Y), (2, Y)),
                t(8.0, (2, Y), (1, Y)),
                t(8.0, (0, Z), (2, Z)),
                t(8.0, (2, Z), (0, Z)),
            ],
        )
        .expect("static Hamiltonian is valid")
    }

    /// Scaling factors of the four scaled Pauli gates paired with [`hxyz`].
    pub const SCALED_PAULI_FACTORS: [f64; 4] = [26.4309, 34.4309, 22.4309, 0.4309];
}
