//! The three frequency samplers side by side on one Pauli spectrum.
//!
//! cargo run --example sampling_strategies

use std::collections::BTreeMap;

use vqc_rff::sampling::{sample, GridParams, SamplingConfig, SamplingSource, Strategy};
use vqc_rff::spectrum::{EncodingLayout, Spectrum, SpectrumOptions};

fn main() -> vqc_rff::Result<()> {
    let layout = EncodingLayout::pauli(6, 1)?;
    let spectrum = Spectrum::build(&layout, SpectrumOptions::default())?;
    let tree = layout.eigen_tree()?;
    let source = SamplingSource {
        spectrum: Some(&spectrum),
        tree: Some(&tree),
        dims: 1,
    };
    for strategy in Strategy::ALL {
        let cfg = SamplingConfig::new(strategy, 2000, 42)
            .with_grid(GridParams::new(6.5, 0.5))
            .with_replacement(true);
        let freqs = sample(&cfg, &source)?;
        let mut hist: BTreeMap<String, usize> = BTreeMap::new();
        for w in freqs.iter() {
            *hist.entry(format!("{:>5.1}", w[0].abs())).or_default() += 1;
        }
        println!("{:<8} |ω| histogram over {} draws:", strategy.name(), freqs.len());
        for (w, n) in hist {
            println!("  {w} {}", "#".repeat(n / 20));
        }
    }
    Ok(())
}
