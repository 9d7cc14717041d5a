//! Monte-Carlo kernel error shrinking with D, against the exhaustive kernel.
//!
//! cargo run --release --example kernel_approximation

use vqc_rff::rff::{ExactKernel, FeatureMap, Kernel, Weighting};
use vqc_rff::sampling::{sample_distinct, SamplingConfig, Strategy};
use vqc_rff::spectrum::{Spectrum, DEFAULT_ENUMERATION_CAP};

fn main() -> vqc_rff::Result<()> {
    let spectrum = Spectrum::pauli(3, 2);
    let exact = ExactKernel::from_spectrum(&spectrum, Weighting::Uniform, DEFAULT_ENUMERATION_CAP)?;
    let probes: Vec<(Vec<f64>, Vec<f64>)> = (0..50)
        .map(|i| {
            let t = i as f64 * 0.37;
            (vec![t.sin() * 3.0, t.cos()], vec![(2.0 * t).cos(), t.sin() * 2.0])
        })
        .collect();
    for d in [4, 16, 64, 256, 1024] {
        let mut worst = 0.0f64;
        for seed in 0..5 {
            let cfg = SamplingConfig::new(Strategy::Distinct, d, seed).with_replacement(true);
            let map = FeatureMap::new(sample_distinct(&spectrum, &cfg)?)?;
            for (x, y) in &probes {
                worst = worst.max((map.approx_kernel(x, y)? - exact.eval(x, y)).abs());
            }
        }
        println!("D={d:<5} sup |k̃ - k| over probes and seeds = {worst:.4}");
    }
    Ok(())
}
