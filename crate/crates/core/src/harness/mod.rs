//! Configuration, dataset pipelines, experiment protocols and result files.

pub mod cli;
pub mod config;
pub mod data;
pub mod experiments;
pub mod record;

pub use config::{load_config, RunConfig};
pub use data::{pca, preprocess, read_csv, read_csv_path, rescale, standardize, Pca, PreprocessConfig, Table};
pub use experiments::{
    run_experiment, run_mimic, run_real_dataset, run_scaling_protocol, run_sparse_target, ExperimentConfig,
    ExperimentKind, FitConfig, Method, ScalingOutcome, ScalingSelection, StrategyOptions, StrategySpec, Sweep,
};
pub use record::{write_jsonl, write_results_csv, write_run_dir, ResultRecord};
