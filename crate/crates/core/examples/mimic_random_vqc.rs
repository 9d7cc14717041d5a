//! Loss versus fraction of |Ω₊| for the three strategies on random Pauli circuits.
//!
//! cargo run --release --example mimic_random_vqc

use std::collections::BTreeMap;

use vqc_rff::harness::{run_mimic, ExperimentConfig, ExperimentKind, FitConfig, Sweep};
use vqc_rff::harness::experiments::{all_strategies, MimicConfig};
use vqc_rff::sim::GeneratorConfig;

fn main() -> vqc_rff::Result<()> {
    let exp = ExperimentConfig {
        id: "mimic-L10".into(),
        kind: ExperimentKind::Mimic(MimicConfig {
            generator: GeneratorConfig::pauli(10, 1, 0),
            strategies: all_strategies(),
            sweep: Sweep::Fractions(vec![0.1, 0.2, 0.3, 0.5, 0.7, 1.0]),
            fit: FitConfig {
                lambda0: 1e-10,
                ..Default::default()
            },
            x_max: None,
            points: None,
            oversampling: 2,
            grid: None,
            test_points: 100,
        }),
        seeds: (0..8).collect(),
        output: None,
        record_wall_time: false,
    };
    let records = run_mimic(&exp)?;
    let mut curves: BTreeMap<(String, usize), Vec<f64>> = BTreeMap::new();
    for r in &records {
        curves.entry((r.strategy.clone(), r.d)).or_default().push(r.train_mse.unwrap_or(f64::NAN));
    }
    println!("strategy  D   mean train mse");
    for ((s, d), v) in curves {
        println!("{s:<9} {d:<3} {:.3e}", v.iter().sum::<f64>() / v.len() as f64);
    }
    Ok(())
}
