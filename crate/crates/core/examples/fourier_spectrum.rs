//! Averaged DFT of random circuits: support lies inside the predicted spectrum
//! and magnitude follows redundancy.
//!
//! cargo run --release --example fourier_spectrum

use vqc_rff::analysis::{containment_ratio, empirical_fourier, omega_effective, redundancy_correlation};
use vqc_rff::sim::{random_instance, GeneratorConfig};
use vqc_rff::spectrum::{Spectrum, SpectrumOptions, DEFAULT_ENUMERATION_CAP};

fn main() -> vqc_rff::Result<()> {
    let seeds: Vec<u64> = (0..16).collect();
    let circuits = seeds
        .iter()
        .map(|&s| {
            let (desc, theta) = random_instance(&GeneratorConfig::pauli(8, 1, s))?;
            Ok((desc.compile()?, theta))
        })
        .collect::<vqc_rff::Result<Vec<_>>>()?;
    let layout = circuits[0].0.description().encoding_layout()?;
    let spectrum = Spectrum::build(&layout, SpectrumOptions::default())?;
    let emp = empirical_fourier(
        |s, x| {
            let (c, t) = &circuits[s as usize];
            c.evaluate(t, x)
        },
        &[std::f64::consts::TAU],
        64,
        &seeds,
        Some(&[8.0]),
    )?;
    for (mode, w, mag) in emp.modes().filter(|(m, _, _)| m[0] >= 0 && m[0] <= 10) {
        println!("mode {:>2} ω={:>4} mean |c| {:.2e}", mode[0], w[0], mag);
    }
    println!("energy outside Ω (relative): {:.1e}", containment_ratio(&emp, &spectrum));
    println!("ω_eff: {}", omega_effective(&emp, 0.01));
    println!(
        "spearman(redundancy, magnitude): {:.3}",
        redundancy_correlation(&emp, &spectrum, DEFAULT_ENUMERATION_CAP)?
    );
    Ok(())
}
