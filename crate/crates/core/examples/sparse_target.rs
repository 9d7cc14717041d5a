//! A three-frequency target that redundancy-weighted sampling struggles with.
//!
//! cargo run --release --example sparse_target

use vqc_rff::harness::experiments::{SparseTargetConfig, StrategyOptions};
use vqc_rff::harness::{run_sparse_target, ExperimentConfig, ExperimentKind, FitConfig, StrategySpec, Sweep};
use vqc_rff::sampling::{GridParams, Strategy};

fn main() -> vqc_rff::Result<()> {
    let grid = StrategySpec::Detailed(StrategyOptions {
        strategy: Strategy::Grid,
        label: Some("grid-exhaustive".into()),
        replacement: Some(false),
        grid: Some(GridParams::new(13.0, 1.0)),
        all_pairs: false,
        sweep: Some(Sweep::Samples(vec![13])),
    });
    let exp = ExperimentConfig {
        id: "sparse".into(),
        kind: ExperimentKind::SparseTarget(SparseTargetConfig {
            target_frequencies: vec![2.0, 5.0, 12.0],
            gates_per_dim: 40,
            qubits: 5,
            x_max: std::f64::consts::TAU,
            points: None,
            strategies: vec![StrategySpec::Name(Strategy::Distinct), StrategySpec::Name(Strategy::Tree), grid],
            sweep: Sweep::Samples(vec![13, 41]),
            fit: FitConfig {
                lambda0: 1e-12,
                ..Default::default()
            },
            grid: None,
            vqc: None,
            fourier_points: 0,
            omega_effective_fraction: 0.01,
        }),
        seeds: (0..5).collect(),
        output: None,
        record_wall_time: false,
    };
    let records = run_sparse_target(&exp)?;
    println!("ω_eff of random L=40 circuits: {}", records[0].metadata["omega_effective"]);
    for r in records.iter().filter(|r| r.seed == 0) {
        println!(
            "{:<16} D={:<3} train mse {:.3e}  missing energy {}",
            r.strategy,
            r.d,
            r.train_mse.unwrap_or(f64::NAN),
            r.metadata["missing_energy"]
        );
    }
    Ok(())
}
