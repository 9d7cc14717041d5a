//! Pauli-sum Hamiltonians, their eigenvalues and the spectra they encode.
//!
//! cargo run --example pauli_hamiltonians

use vqc_rff::operators::{build_matrix, eigendecompose, presets, HamiltonianSpec, Pauli, PauliTerm};
use vqc_rff::spectrum::{EncodingGate, EncodingLayout, Spectrum, SpectrumOptions};

fn main() -> vqc_rff::Result<()> {
    let zz = HamiltonianSpec::pauli_sum(
        2,
        vec![
            PauliTerm::new(1.0, vec![(0, Pauli::Z), (1, Pauli::Z)])?,
            PauliTerm::new(0.3, vec![(0, Pauli::X)])?,
        ],
    )?;
    let eig = eigendecompose(&build_matrix(&zz)?)?;
    println!("ZZ + 0.3 X0 eigenvalues: {:?}", eig.eigenvalues.as_slice());

    let hxyz = presets::hxyz();
    let eig = eigendecompose(&build_matrix(&hxyz)?)?;
    println!("H_XYZ eigenvalues: {:.4?}", eig.eigenvalues.as_slice());

    // one H_XYZ gate and four scaled Z/2 gates on a single input
    let mut gates = vec![EncodingGate::new(hxyz, 1.0)];
    for f in presets::SCALED_PAULI_FACTORS {
        gates.push(EncodingGate::new(presets::pauli_z_half(), f));
    }
    let layout = EncodingLayout::new(vec![gates])?;
    let s = Spectrum::build(&layout, SpectrumOptions::default())?;
    let dim = s.dimension(0);
    println!(
        "mixed encoding: {} distinct frequencies, largest {:.4}, {} with redundancy 1",
        dim.distinct_count(),
        dim.max_frequency(),
        dim.redundancies().iter().filter(|r| **r == 1u32.into()).count()
    );
    Ok(())
}
