//! CSV ingest, standardization, PCA to five components and RFF regression.
//!
//! cargo run --release --example real_dataset_pca [path/to.csv]

use std::path::PathBuf;

use vqc_rff::harness::experiments::{all_strategies, RealDatasetConfig};
use vqc_rff::harness::{read_csv_path, run_real_dataset, ExperimentConfig, ExperimentKind, FitConfig, PreprocessConfig, Sweep};

fn main() -> vqc_rff::Result<()> {
    let path = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/data/regression.csv")));
    let table = read_csv_path(&path)?;
    println!("{} rows, features {:?}", table.features.nrows(), table.columns);
    let exp = ExperimentConfig {
        id: "real".into(),
        kind: ExperimentKind::RealDataset(RealDatasetConfig {
            path: None,
            preprocess: PreprocessConfig {
                components: Some(5),
                range: [0.0, std::f64::consts::PI],
            },
            classification: false,
            train_fraction: 0.8,
            gates_per_dim: 1,
            strategies: all_strategies(),
            sweep: Sweep::Fractions(vec![0.25, 0.5, 1.0]),
            fit: FitConfig {
                lambda0: 1e-4,
                ..Default::default()
            },
            grid: None,
            vqc: None,
        }),
        seeds: vec![0],
        output: None,
        record_wall_time: false,
    };
    for r in run_real_dataset(&exp, &path)? {
        println!(
            "{:<8} D={:<4} train {:.4} test {:.4}",
            r.strategy,
            r.d,
            r.train_mse.unwrap_or(f64::NAN),
            r.test_mse.unwrap_or(f64::NAN)
        );
    }
    Ok(())
}
