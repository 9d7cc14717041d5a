//! Result records and the run-directory writers.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::rng::RNG_ALGORITHM;

/// One measured configuration of an experiment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultRecord {
    pub experiment_id: String,
    pub strategy: String,
    #[serde(rename = "D")]
    pub d: usize,
    /// `D / |Ω₊|` (or `D / |Ω|` for the positive-lattice protocol).
    pub fraction: f64,
    pub train_mse: Option<f64>,
    pub test_mse: Option<f64>,
    pub accuracy: Option<f64>,
    /// Seconds; only recorded on request so result files stay reproducible.
    pub wall_time: Option<f64>,
    pub seed: u64,
    /// Set when training produced non-finite values; metrics are then absent.
    pub diverged: bool,
    pub metadata: BTreeMap<String, String>,
}

impl ResultRecord {
    pub fn new(experiment_id: &str, strategy: &str, d: usize, fraction: f64, seed: u64) -> Self {
        Self {
            experiment_id: experiment_id.into(),
            strategy: strategy.into(),
            d,
            fraction,
            train_mse: None,
            test_mse: None,
            accuracy: None,
            wall_time: None,
            seed,
            diverged: false,
            metadata: BTreeMap::new(),
        }
    }

    pub fn meta(mut self, key: &str, value: impl ToString) -> Self {
        self.metadata.insert(key.into(), value.to_string());
        self
    }
}

fn opt(v: Option<f64>) -> String {
    v.map(|x| format!("{x}")).unwrap_or_default()
}

pub const CSV_HEADER: [&str; 11] = [
    "experiment_id",
    "strategy",
    "D",
    "fraction",
    "train_mse",
    "test_mse",
    "accuracy",
    "wall_time",
    "seed",
    "diverged",
    "metadata",
];

pub fn write_results_csv<W: Write>(records: &[ResultRecord], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in records {
        w.write_record([
            r.experiment_id.clone(),
            r.strategy.clone(),
            r.d.to_string(),
            format!("{}", r.fraction),
            opt(r.train_mse),
            opt(r.test_mse),
            opt(r.accuracy),
            opt(r.wall_time),
            r.seed.to_string(),
            r.diverged.to_string(),
            serde_json::to_string(&r.metadata)?,
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_jsonl<W: Write>(records: &[ResultRecord], mut out: W) -> Result<()> {
    for r in records {
        serde_json::to_writer(&mut out, r)?;
        out.write_all(b"\n")?;
    }
    Ok(())
}

/// `results.csv`, `results.jsonl` and `meta.txt` in `dir`.
pub fn write_run_dir(dir: &Path, records: &[ResultRecord], seeds: &[u64], extra: &[(String, String)]) -> Result<()> {
    std::fs::create_dir_all(dir)?;
    write_results_csv(records, std::fs::File::create(dir.join("results.csv"))?)?;
    write_jsonl(records, std::fs::File::create(dir.join("results.jsonl"))?)?;
    let mut meta = std::fs::File::create(dir.join("meta.txt"))?;
    writeln!(meta, "rng={RNG_ALGORITHM}")?;
    writeln!(meta, "seeds={seeds:?}")?;
    writeln!(meta, "crate={} {}", env!("CARGO_PKG_NAME"), env!("CARGO_PKG_VERSION"))?;
    for (k, v) in extra {
        writeln!(meta, "{k}={v}")?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_and_jsonl_fields() {
        let mut r = ResultRecord::new("x", "tree", 4, 0.5, 7).meta("lambda0", 1e-3);
        r.train_mse = Some(0.25);
        let mut buf = Vec::new();
        write_results_csv(&[r.clone()], &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("experiment_id,strategy,D,fraction,train_mse"));
        assert!(text.contains("x,tree,4,0.5,0.25,,,,7,false,"));
        let mut buf = Vec::new();
        write_jsonl(&[r.clone()], &mut buf).unwrap();
        let back: ResultRecord = serde_json::from_slice(&buf).unwrap();
        assert_eq!(back, r);
        assert!(String::from_utf8(buf).unwrap().contains("\"D\":4"));
    }
}
