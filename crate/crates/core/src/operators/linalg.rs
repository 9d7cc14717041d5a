use nalgebra::{DVector, SymmetricEigen};

use super::{CMatrix, C64};
use crate::error::{Error, Result};

/// Entrywise tolerance on `|H - H†|` for accepting a matrix as Hermitian.
pub const HERMITIAN_TOLERANCE: f64 = 1e-10;

pub fn max_hermitian_deviation(m: &CMatrix) -> f64 {
    let n = m.nrows();
    let mut dev = 0.0f64;
    for r in 0..n {
        for c in r..n {
            dev = dev.max((m[(r, c)] - m[(c, r)].conj()).norm());
        }
    }
    dev
}

/// `H = V diag(λ) V†` with eigenvalues ascending.
#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    pub eigenvalues: Vec<f64>,
    /// Unitary matrix whose columns are the eigenvectors.
    pub eigenvectors: CMatrix,
}

impl EigenDecomposition {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn reconstruct(&self) -> CMatrix {
        let v = &self.eigenvectors;
        let d = DVector::from_iterator(
            self.dim(),
            self.eigenvalues.iter().map(|&l| C64::new(l, 0.0)),
        );
        v * CMatrix::from_diagonal(&d) * v.adjoint()
    }
}

/// Hermitian eigendecomposition. Eigenvector choice inside degenerate
/// eigenspaces is whatever the underlying routine returns.
pub fn eigendecompose(h: &CMatrix) -> Result<EigenDecomposition> {
    if h.nrows() != h.ncols() || h.nrows() == 0 {
        return Err(Error::Shape(format!(
            "eigendecomposition needs a non-empty square matrix, got {}x{}",
            h.nrows(),
            h.ncols()
        )));
    }
    let dev = max_hermitian_deviation(h);
    if dev > HERMITIAN_TOLERANCE {
        return Err(Error::NotHermitian { max_deviation: dev });
    }
    let sym = (h + h.adjoint()) * C64::new(0.5, 0.0);
    let eig = SymmetricEigen::new(sym);
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let eigenvalues = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let eigenvectors = CMatrix::from_fn(h.nrows(), h.ncols(), |r, c| eig.eigenvectors[(r, order[c])]);
    Ok(EigenDecomposition {
        eigenvalues,
        eigenvectors,
    })
}

/// `exp(-i x H) = V diag(exp(-i x λ_k)) V†`.
pub fn evolution(eig: &EigenDecomposition, x: f64) -> CMatrix {
    let v = &eig.eigenvectors;
    let n = eig.dim();
    let mut scaled = v.clone();
    for (k, &l) in eig.eigenvalues.iter().enumerate() {
        let phase = C64::from_polar(1.0, -x * l);
        for r in 0..n {
            scaled[(r, k)] *= phase;
        }
    }
    scaled * v.adjoint()
}

fn check_targets(targets: &[usize], n: usize) -> Result<()> {
    for (i, &t) in targets.iter().enumerate() {
        if t >= n {
            return Err(Error::InvalidSpec(format!("target qubit {t} outside {n} qubits")));
        }
        if targets[..i].contains(&t) {
            return Err(Error::InvalidSpec(format!("duplicate target qubit {t}")));
        }
    }
    Ok(())
}

fn check_gate(gate: &CMatrix, targets: &[usize]) -> Result<()> {
    let dim = 1usize << targets.len();
    if gate.nrows() != dim || gate.ncols() != dim {
        return Err(Error::Shape(format!(
            "gate is {}x{} but {} targets need {dim}x{dim}",
            gate.nrows(),
            gate.ncols(),
            targets.len()
        )));
    }
    Ok(())
}

/// Offsets of the `2^p` local basis states: local bit `j` lives on qubit `targets[j]`.
fn local_offsets(targets: &[usize]) -> Vec<usize> {
    (0..1usize << targets.len())
        .map(|k| {
            targets
                .iter()
                .enumerate()
                .fold(0, |acc, (j, &t)| acc | (((k >> j) & 1) << t))
        })
        .collect()
}

/// Full `2^n × 2^n` matrix acting as `gate` on `targets` and identity elsewhere.
pub fn embed(gate: &CMatrix, targets: &[usize], n: usize) -> Result<CMatrix> {
    check_targets(targets, n)?;
    check_gate(gate, targets)?;
    let dim = 1usize << n;
    let offsets = local_offsets(targets);
    let target_mask = offsets.last().copied().unwrap_or(0);
    let mut out = CMatrix::zeros(dim, dim);
    for base in (0..dim).filter(|b| b & target_mask == 0) {
        for (r, &ro) in offsets.iter().enumerate() {
            for (c, &co) in offsets.iter().enumerate() {
                out[(base | ro, base | co)] = gate[(r, c)];
            }
        }
    }
    Ok(out)
}

/// Applies `gate` to the amplitudes of `targets` in place.
pub fn apply_gate(state: &mut [C64], gate: &CMatrix, targets: &[usize]) -> Result<()> {
    if !state.len().is_power_of_two() {
        return Err(Error::Shape(format!("state length {} is not 2^n", state.len())));
    }
    let n = state.len().trailing_zeros() as usize;
    check_targets(targets, n)?;
    check_gate(gate, targets)?;
    let offsets = local_offsets(targets);
    let target_mask = offsets.last().copied().unwrap_or(0);
    let k = offsets.len();
    let mut local = vec![C64::new(0.0, 0.0); k];
    for base in (0..state.len()).filter(|b| b & target_mask == 0) {
        for (slot, &o) in local.iter_mut().zip(&offsets) {
            *slot = state[base | o];
        }
        for (r, &o) in offsets.iter().enumerate() {
            let mut acc = C64::new(0.0, 0.0);
            for (c, amp) in local.iter().enumerate() {
                acc += gate[(r, c)] * amp;
            }
            state[base | o] = acc;
        }
    }
    Ok(())
}

/// CNOT with the given control and target qubits.
pub fn apply_cnot(state: &mut [C64], control: usize, target: usize) {
    let (cm, tm) = (1usize << control, 1usize << target);
    for b in 0..state.len() {
        if b & cm != 0 && b & tm == 0 {
            state.swap(b, b | tm);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operators::{build_matrix, presets, HamiltonianSpec, Pauli};
    use crate::rng::rng_from_seed;
    use rand::Rng;

    fn max_abs(m: &CMatrix) -> f64 {
        m.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    fn random_hermitian(n: usize, seed: u64) -> CMatrix {
        let mut rng = rng_from_seed(seed);
        let a = CMatrix::from_fn(n, n, |_, _| {
            C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
        });
        (&a + a.adjoint()) * C64::new(0.5, 0.0)
    }

    /// Truncated Taylor series of exp(-i x H), squared back up from a small step.
    fn taylor_exp(h: &CMatrix, x: f64) -> CMatrix {
        let squarings = 10;
        let a = h * C64::new(0.0, -x / f64::from(1 << squarings));
        let n = h.nrows();
        let mut term = CMatrix::identity(n, n);
        let mut sum = CMatrix::identity(n, n);
        for k in 1..30 {
            term = &term * &a / C64::new(k as f64, 0.0);
            sum += &term;
        }
        for _ in 0..squarings {
            sum = &sum * &sum;
        }
        sum
    }

    fn cnot() -> CMatrix {
        // local qubit 0 = control, local qubit 1 = target
        let mut m = CMatrix::zeros(4, 4);
        let one = C64::new(1.0, 0.0);
        m[(0, 0)] = one;
        m[(2, 2)] = one;
        m[(3, 1)] = one;
        m[(1, 3)] = one;
        m
    }

    #[test]
    fn diagonal_eigenvalues_ascend() {
        let h = build_matrix(&HamiltonianSpec::single_pauli(Pauli::Z, 0.5)).unwrap();
        assert_eq!(eigendecompose(&h).unwrap().eigenvalues, vec![-0.5, 0.5]);
    }

    #[test]
    fn pauli_x_spectrum() {
        let e = eigendecompose(&Pauli::X.matrix()).unwrap();
        assert!((e.eigenvalues[0] + 1.0).abs() < 1e-14);
        assert!((e.eigenvalues[1] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn random_hermitian_reconstructs() {
        let h = random_hermitian(4, 11);
        let e = eigendecompose(&h).unwrap();
        assert!(max_abs(&(e.reconstruct() - &h)) < 1e-9);
        let v = &e.eigenvectors;
        assert!(max_abs(&(v.adjoint() * v - CMatrix::identity(4, 4))) < 1e-10);
    }

    #[test]
    fn hxyz_eigenvalues_match_reference() {
        // Reference values from an independent 30-digit dense symmetric solver.
        let a = 26.776359395606735588;
        let b = 26.440778685910573872;
        let want = [-a, -a, -b, -b, b, b, a, a];
        let e = eigendecompose(&build_matrix(&presets::hxyz()).unwrap()).unwrap();
        for (got, want) in e.eigenvalues.iter().zip(want) {
            assert!((got - want).abs() < 1e-10, "{got} vs {want}");
        }
    }

    #[test]
    fn rejects_non_hermitian() {
        let mut m = CMatrix::identity(2, 2);
        m[(0, 1)] = C64::new(1e-6, 0.0);
        assert!(matches!(eigendecompose(&m), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn evolution_at_zero_is_identity() {
        let e = eigendecompose(&random_hermitian(4, 3)).unwrap();
        assert!(max_abs(&(evolution(&e, 0.0) - CMatrix::identity(4, 4))) < 1e-12);
    }

    #[test]
    fn half_z_at_pi() {
        let e = eigendecompose(&build_matrix(&presets::pauli_z_half()).unwrap()).unwrap();
        let u = evolution(&e, std::f64::consts::PI);
        assert!((u[(0, 0)] - C64::new(0.0, -1.0)).norm() < 1e-12);
        assert!((u[(1, 1)] - C64::new(0.0, 1.0)).norm() < 1e-12);
        assert!(u[(0, 1)].norm() < 1e-12);
    }

    #[test]
    fn x_at_half_pi_matches_series() {
        let x = Pauli::X.matrix();
        let u = evolution(&eigendecompose(&x).unwrap(), std::f64::consts::FRAC_PI_2);
        assert!(max_abs(&(&u - taylor_exp(&x, std::f64::consts::FRAC_PI_2))) < 1e-9);
        assert!(max_abs(&(&u - &x * C64::new(0.0, -1.0))) < 1e-12);
    }

    #[test]
    fn evolution_matches_series_on_random_matrix() {
        let h = random_hermitian(8, 5);
        let u = evolution(&eigendecompose(&h).unwrap(), 0.7);
        assert!(max_abs(&(&u - taylor_exp(&h, 0.7))) < 1e-9);
    }

    #[test]
    fn embed_identity_and_placement() {
        let id = embed(&CMatrix::identity(2, 2), &[2], 3).unwrap();
        assert_eq!(id, CMatrix::identity(8, 8));
        let x1 = embed(&Pauli::X.matrix(), &[1], 2).unwrap();
        assert_eq!(x1, Pauli::X.matrix().kronecker(&CMatrix::identity(2, 2)));
    }

    #[test]
    fn embedded_cnot_orientations_differ_and_square_to_identity() {
        let a = embed(&cnot(), &[0, 1], 2).unwrap();
        let b = embed(&cnot(), &[1, 0], 2).unwrap();
        assert_ne!(a, b);
        assert_eq!(&a * &a, CMatrix::identity(4, 4));
        assert_eq!(&b * &b, CMatrix::identity(4, 4));
    }

    #[test]
    fn embed_rejects_duplicate_targets() {
        assert!(matches!(
            embed(&cnot(), &[1, 1], 2),
            Err(Error::InvalidSpec(_))
        ));
    }

    #[test]
    fn apply_gate_matches_embed() {
        let mut rng = rng_from_seed(9);
        let gate = evolution(&eigendecompose(&random_hermitian(4, 2)).unwrap(), 1.3);
        let state: Vec<C64> = (0..16)
            .map(|_| C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
            .collect();
        let full = embed(&gate, &[3, 1], 4).unwrap();
        let want = &full * DVector::from_column_slice(&state);
        let mut got = state.clone();
        apply_gate(&mut got, &gate, &[3, 1]).unwrap();
        for (g, w) in got.iter().zip(want.iter()) {
            assert!((g - w).norm() < 1e-12);
        }
    }

    #[test]
    fn apply_cnot_matches_embed() {
        let state: Vec<C64> = (0..8).map(|k| C64::new(k as f64, -(k as f64))).collect();
        let full = embed(&cnot(), &[2, 0], 3).unwrap();
        let want = &full * DVector::from_column_slice(&state);
        let mut got = state;
        apply_cnot(&mut got, 2, 0);
        for (g, w) in got.iter().zip(want.iter()) {
            assert_eq!(g, w);
        }
    }
}
