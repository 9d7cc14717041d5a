//! Smallest D whose model stays within ε of the full-lattice model.
//!
//! cargo run --release --example scaling_protocol

use vqc_rff::harness::experiments::ScalingConfig;
use vqc_rff::harness::{run_scaling_protocol, ExperimentConfig, ExperimentKind, FitConfig};

fn main() -> vqc_rff::Result<()> {
    for (l, d) in [(4, 2), (9, 2), (4, 3)] {
        let exp = ExperimentConfig {
            id: format!("scaling-L{l}-d{d}"),
            kind: ExperimentKind::ScalingProtocol(ScalingConfig {
                gates_per_dim: l,
                dims: d,
                points: 1500,
                train_fraction: 0.9,
                fractions: None,
                epsilons: vec![0.05, 0.5],
                fit: FitConfig {
                    lambda0: 1e-6,
                    ..Default::default()
                },
            }),
            seeds: vec![0, 1],
            output: None,
            record_wall_time: false,
        };
        let out = run_scaling_protocol(&exp)?;
        for eps in [0.05, 0.5] {
            println!(
                "L={l} d={d} |Ω|={:<4} ε={eps:<4} selected fraction {:.2}",
                (l + 1usize).pow(d as u32),
                out.mean_fraction(eps).unwrap_or(f64::NAN)
            );
        }
    }
    Ok(())
}
