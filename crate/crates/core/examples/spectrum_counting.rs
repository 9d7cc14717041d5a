//! Spectrum sizes and redundancies for a few encoding layouts.
//!
//! cargo run --example spectrum_counting

use vqc_rff::spectrum::{EncodingLayout, Spectrum, SpectrumOptions};

fn main() -> vqc_rff::Result<()> {
    for (l, d) in [(1, 1), (5, 1), (5, 4), (10, 2)] {
        let s = Spectrum::pauli(l, d);
        let size = s.size();
        println!(
            "pauli L={l:<2} d={d}: |Ω|={:<8} |Ω₊|={:<8} σ_p={}",
            size.omega,
            size.omega_plus,
            s.sigma_p()
        );
    }

    // redundancies of a single Pauli dimension are binomial coefficients
    let s = Spectrum::pauli(4, 1);
    let dim = s.dimension(0);
    for (w, r) in dim.frequencies().iter().zip(dim.redundancies()) {
        println!("  ω={w:>3}  redundancy={r}");
    }

    // the 3^(ℓ-1) scaling spreads two gates over nine distinct integers
    let layout = EncodingLayout::exponential_pauli(2, 1)?;
    let exp = Spectrum::build(&layout, SpectrumOptions::default())?;
    println!("exponential L=2: frequencies {:?}", exp.dimension(0).frequencies());

    // sizes come from per-dimension spectra, so very large products are still countable
    let big = Spectrum::pauli(200, 16).size();
    println!("pauli L=200 d=16: |Ω₊| has {} digits", big.omega_plus.to_string().len());
    Ok(())
}
