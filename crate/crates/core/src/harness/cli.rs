//! Command line front end. The binary only forwards `std::env::args` here.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use super::config::{load_config, BoundKind, RunConfig};
use super::data::{preprocess, read_csv_path};
use super::experiments::{run_experiment, FitConfig};
use super::record::{write_jsonl, write_results_csv, write_run_dir, ResultRecord};
use crate::analysis::{
    bound_rff_kernel_probability, bound_samples, bound_samples_grid, bound_samples_pauli, containment_ratio, containment_residual,
    empirical_fourier, omega_effective, redundancy_correlation, BoundReport,
};
use crate::error::{Error, Result};
use crate::rff::{write_predictions, Dataset, FeatureMap};
use crate::sampling::{sample, FrequencySample, SamplingSource};
use crate::sim::{minimum_points, random_instance, sample_grid_dataset, train, Circuit, CircuitDescription};
use crate::spectrum::{EncodingLayout, Spectrum, SpectrumOptions};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Emit {
    Jsonl,
}

#[derive(Debug, Parser)]
#[command(name = "vqc-rff", version, about = "Spectra, RFF approximations and experiments for variational circuits")]
pub struct Cli {
    /// JSON run configuration.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Overrides every seed in the configuration.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Directory for result files.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Worker threads (rayon).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Echo results on stdout as one JSON record per line.
    #[arg(long, global = true, value_enum)]
    pub emit: Option<Emit>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Frequency spectrum of an encoding layout.
    Spectrum,
    /// Draw RFF frequencies.
    Sample,
    /// Fit an RFF ridge model.
    Fit,
    /// Evaluate a circuit on a lattice.
    Simulate,
    /// Train circuit parameters on data.
    TrainVqc,
    /// Averaged DFT of random circuits.
    Fourier,
    /// Sample-complexity bounds.
    Bound,
    /// Run an experiment protocol.
    Experiment {
        /// CSV for real-dataset experiments (overrides the config path).
        #[arg(long)]
        data: Option<PathBuf>,
    },
}

struct Output<'a> {
    out: &'a mut dyn Write,
    jsonl: bool,
}

impl Output<'_> {
    fn line(&mut self, text: impl std::fmt::Display) -> Result<()> {
        if !self.jsonl {
            writeln!(self.out, "{text}")?;
        }
        Ok(())
    }

    fn record<T: Serialize>(&mut self, rec: &T) -> Result<()> {
        if self.jsonl {
            serde_json::to_writer(&mut *self.out, rec)?;
            writeln!(self.out)?;
        }
        Ok(())
    }
}

/// Parses `args` and runs the command; returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = if e.use_stderr() {
                write!(stderr, "{e}")
            } else {
                write!(stdout, "{e}")
            };
            return code;
        }
    };
    match execute(&cli, stdout) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

pub fn execute(cli: &Cli, stdout: &mut dyn Write) -> Result<()> {
    if let Some(n) = cli.threads {
        if rayon::ThreadPoolBuilder::new().num_threads(n).build_global().is_err() {
            log::warn!("thread pool already initialized; --threads ignored");
        }
    }
    let cfg = match &cli.config {
        Some(p) => load_config(p)?,
        None => return Err(Error::Config("--config <path> is required".into())),
    };
    let mut out = Output {
        out: stdout,
        jsonl: cli.emit == Some(Emit::Jsonl),
    };
    let dir = cli.out.as_deref();
    match &cli.command {
        Command::Spectrum => cmd_spectrum(&cfg, dir, &mut out),
        Command::Sample => cmd_sample(&cfg, cli.seed, dir, &mut out),
        Command::Fit => cmd_fit(&cfg, cli.seed, dir, &mut out),
        Command::Simulate => cmd_simulate(&cfg, cli.seed, dir, &mut out),
        Command::TrainVqc => cmd_train(&cfg, cli.seed, dir, &mut out),
        Command::Fourier => cmd_fourier(&cfg, cli.seed, dir, &mut out),
        Command::Bound => cmd_bound(&cfg, dir, &mut out),
        Command::Experiment { data } => cmd_experiment(&cfg, cli.seed, dir, data.as_deref(), &mut out),
    }
}

fn create(dir: &Path, name: &str) -> Result<std::fs::File> {
    std::fs::create_dir_all(dir)?;
    Ok(std::fs::File::create(dir.join(name))?)
}

/// Circuit from an explicit description (plus `theta`, zero by default) or the generator.
fn circuit_source(cfg: &RunConfig, seed: Option<u64>) -> Result<Option<(CircuitDescription, Vec<f64>)>> {
    if let Some(desc) = &cfg.circuit {
        let theta = cfg.theta.clone().unwrap_or_else(|| vec![0.0; desc.parameters]);
        return Ok(Some((desc.clone(), theta)));
    }
    match &cfg.generator {
        Some(g) => {
            let mut g = g.clone();
            if let Some(s) = seed {
                g.seed = s;
            }
            random_instance(&g).map(Some)
        }
        None => Ok(None),
    }
}

fn layout_source(cfg: &RunConfig, seed: Option<u64>) -> Result<EncodingLayout> {
    if let Some(l) = &cfg.layout {
        return l.build();
    }
    match circuit_source(cfg, seed)? {
        Some((desc, _)) => desc.encoding_layout(),
        None => Err(Error::Config("config needs a `layout`, `circuit` or `generator` section".into())),
    }
}

fn required_circuit(cfg: &RunConfig, seed: Option<u64>) -> Result<(Circuit, Vec<f64>)> {
    let (desc, theta) = circuit_source(cfg, seed)?
        .ok_or_else(|| Error::Config("config needs a `circuit` or `generator` section".into()))?;
    Ok((desc.compile()?, theta))
}

#[derive(Serialize)]
struct SpectrumSummary {
    omega: String,
    omega_plus: String,
    distinct_per_dim: Vec<usize>,
    sigma_p: f64,
}

fn cmd_spectrum(cfg: &RunConfig, dir: Option<&Path>, out: &mut Output<'_>) -> Result<()> {
    let layout = layout_source(cfg, None)?;
    let spectrum = Spectrum::build(&layout, cfg.spectrum.into())?;
    let size = spectrum.size();
    let summary = SpectrumSummary {
        omega: size.omega.to_string(),
        omega_plus: size.omega_plus.to_string(),
        distinct_per_dim: size.distinct_per_dim.clone(),
        sigma_p: spectrum.sigma_p(),
    };
    out.line(format!("|omega|={}", summary.omega))?;
    out.line(format!("|omega_plus|={}", summary.omega_plus))?;
    out.line(format!("distinct_per_dim={:?}", summary.distinct_per_dim))?;
    out.line(format!("sigma_p={}", summary.sigma_p))?;
    out.record(&summary)?;
    if let Some(d) = dir {
        spectrum.write_csv(create(d, "spectrum.csv")?)?;
    }
    Ok(())
}

fn draw(cfg: &RunConfig, seed: Option<u64>) -> Result<(FrequencySample, crate::sampling::SamplingConfig, Option<usize>)> {
    let mut sc = cfg
        .sampling
        .clone()
        .ok_or_else(|| Error::Config("config needs a `sampling` section".into()))?;
    if let Some(s) = seed {
        sc.seed = s;
    }
    let layout = layout_source(cfg, seed)?;
    let opts: SpectrumOptions = cfg.spectrum.into();
    let spectrum = Spectrum::build(&layout, opts)?;
    let tree = layout.eigen_tree()?;
    let source = SamplingSource {
        spectrum: Some(&spectrum),
        tree: Some(&tree),
        dims: layout.dims(),
    };
    let freqs = sample(&sc, &source)?;
    Ok((freqs, sc, spectrum.size().omega_plus_usize()))
}

fn cmd_sample(cfg: &RunConfig, seed: Option<u64>, dir: Option<&Path>, out: &mut Output<'_>) -> Result<()> {
    let (freqs, sc, _) = draw(cfg, seed)?;
    for row in freqs.iter() {
        out.record(&serde_json::json!({ "omega": row }))?;
    }
    match dir {
        Some(d) => {
            freqs.write_csv(create(d, "frequencies.csv")?)?;
            out.line(format!("strategy={} D={} seed={}", sc.strategy.name(), freqs.len(), sc.seed))?;
        }
        None if !out.jsonl => freqs.write_csv(&mut *out.out)?,
        None => {}
    }
    Ok(())
}

/// Training data: a CSV file, or the circuit evaluated on the configured lattice.
fn dataset(cfg: &RunConfig, seed: Option<u64>) -> Result<Dataset> {
    if let Some(d) = &cfg.data {
        let table = read_csv_path(&d.path)?;
        return match &d.preprocess {
            Some(p) => preprocess(&table, p),
            None => Dataset::new(table.features, table.targets),
        };
    }
    let grid = cfg
        .grid
        .as_ref()
        .ok_or_else(|| Error::Config("config needs a `data` or `grid` section".into()))?;
    let (circuit, theta) = required_circuit(cfg, seed)?;
    let points = match &grid.points {
        Some(p) => p.clone(),
        None => minimum_points(&circuit, &grid.x_max)?,
    };
    sample_grid_dataset(&circuit, &theta, &grid.x_max, &points, grid.force)
}

fn cmd_fit(cfg: &RunConfig, seed: Option<u64>, dir: Option<&Path>, out: &mut Output<'_>) -> Result<()> {
    let data = dataset(cfg, seed)?;
    let (freqs, strategy, sampling, population) = match &cfg.frequencies {
        Some(p) => (FrequencySample::read_csv(std::fs::File::open(p)?)?, "file".to_owned(), None, None),
        None => {
            let (f, sc, pop) = draw(cfg, seed)?;
            (f, sc.strategy.name().to_owned(), Some(sc), pop)
        }
    };
    let fit: FitConfig = cfg.fit.clone().unwrap_or_default();
    let map = FeatureMap::new(freqs)?;
    let fit_seed = seed.or(sampling.as_ref().map(|s| s.seed)).unwrap_or(0);
    let model = fit.fit(&map, &data, fit_seed)?;
    let pred = model.predict(&data.inputs)?;
    let d = map.len();
    let mut rec = ResultRecord::new("fit", &strategy, d, population.map_or(0.0, |p| d as f64 / p as f64), fit_seed)
        .meta("solver", serde_json::to_string(&model.meta)?);
    if let Some(sc) = &sampling {
        rec = rec.meta("sampling", serde_json::to_string(sc)?);
    }
    rec.train_mse = Some(data.mse(&pred));
    out.line(format!(
        "strategy={strategy} D={d} solver={} train_mse={:e}",
        model.meta.solver,
        rec.train_mse.unwrap_or(f64::NAN)
    ))?;
    out.record(&rec)?;
    if let Some(dir) = dir {
        std::fs::write(dir_file(dir, "model.json")?, model.to_json()?)?;
        write_predictions(&data.inputs, &pred, create(dir, "predictions.csv")?)?;
        write_results_csv(std::slice::from_ref(&rec), create(dir, "results.csv")?)?;
    }
    Ok(())
}

fn dir_file(dir: &Path, name: &str) -> Result<PathBuf> {
    std::fs::create_dir_all(dir)?;
    Ok(dir.join(name))
}

fn cmd_simulate(cfg: &RunConfig, seed: Option<u64>, dir: Option<&Path>, out: &mut Output<'_>) -> Result<()> {
    let data = dataset(
        &RunConfig {
            data: None,
            ..cfg.clone()
        },
        seed,
    )?;
    for i in 0..data.len() {
        out.record(&serde_json::json!({ "x": data.point(i), "y": data.targets[i] }))?;
    }
    match dir {
        Some(d) => {
            data.write_csv(create(d, "dataset.csv")?)?;
            out.line(format!("points={}", data.len()))?;
        }
        None if !out.jsonl => data.write_csv(&mut *out.out)?,
        None => {}
    }
    Ok(())
}

fn cmd_train(cfg: &RunConfig, seed: Option<u64>, dir: Option<&Path>, out: &mut Output<'_>) -> Result<()> {
    let (circuit, theta0) = required_circuit(cfg, seed)?;
    let data = dataset(cfg, seed)?;
    let mut opts = cfg.train.unwrap_or_default();
    if let Some(s) = seed {
        opts.seed = s;
    }
    let report = train(&circuit, &theta0, &data, &opts)?;
    let mut rec = ResultRecord::new("train-vqc", "vqc", circuit.parameters(), 0.0, opts.seed)
        .meta("train", serde_json::to_string(&opts)?);
    rec.train_mse = Some(report.best_loss);
    out.line(format!(
        "epochs={} initial_mse={} best_mse={}",
        opts.epochs,
        report.losses.first().copied().unwrap_or(f64::NAN),
        report.best_loss
    ))?;
    out.record(&rec)?;
    if let Some(d) = dir {
        std::fs::write(dir_file(d, "theta.json")?, serde_json::to_string(&report.theta)?)?;
        let mut w = csv::Writer::from_writer(create(d, "losses.csv")?);
        w.write_record(["epoch", "mse"])?;
        for (i, l) in report.losses.iter().enumerate() {
            w.write_record([i.to_string(), format!("{l}")])?;
        }
        w.flush()?;
    }
    Ok(())
}

#[derive(Serialize)]
struct FourierSummary {
    omega_effective: f64,
    containment_ratio: f64,
    /// Least-squares residual of the first circuit off the predicted spectrum.
    #[serde(skip_serializing_if = "Option::is_none")]
    ls_residual: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    redundancy_correlation: Option<f64>,
}

fn cmd_fourier(cfg: &RunConfig, seed: Option<u64>, dir: Option<&Path>, out: &mut Output<'_>) -> Result<()> {
    let fc = cfg
        .fourier
        .as_ref()
        .ok_or_else(|| Error::Config("config needs a `fourier` section".into()))?;
    let generator = cfg
        .generator
        .as_ref()
        .ok_or_else(|| Error::Config("fourier needs a `generator` section".into()))?;
    let seeds = match seed {
        Some(s) => vec![s],
        None => fc.seeds.clone(),
    };
    let circuits = seeds
        .iter()
        .map(|&s| {
            let mut g = generator.clone();
            g.seed = s;
            let (desc, theta) = random_instance(&g)?;
            Ok((s, desc.compile()?, theta))
        })
        .collect::<Result<Vec<_>>>()?;
    let layout = circuits[0].1.description().encoding_layout()?;
    let spectrum = Spectrum::build(&layout, cfg.spectrum.into())?;
    let w_max: Vec<f64> = spectrum.dimensions().iter().map(|d| d.max_frequency()).collect();
    let emp = empirical_fourier(
        |s, x| {
            let (_, c, t) = circuits.iter().find(|c| c.0 == s).expect("seed present");
            c.evaluate(t, x)
        },
        &fc.x_max,
        fc.points,
        &seeds,
        Some(&w_max),
    )?;
    let summary = FourierSummary {
        omega_effective: omega_effective(&emp, fc.omega_effective_fraction),
        containment_ratio: containment_ratio(&emp, &spectrum),
        ls_residual: ls_residual(&circuits[0].1, &circuits[0].2, &spectrum, &fc.x_max, seeds[0]),
        redundancy_correlation: redundancy_correlation(&emp, &spectrum, cfg.spectrum.cap).ok(),
    };
    out.line(format!("omega_effective={}", summary.omega_effective))?;
    out.line(format!("containment_ratio={:e}", summary.containment_ratio))?;
    if let Some(r) = summary.ls_residual {
        out.line(format!("ls_residual={r:e}"))?;
    }
    if let Some(r) = summary.redundancy_correlation {
        out.line(format!("redundancy_correlation={r}"))?;
    }
    out.record(&summary)?;
    if let Some(d) = dir {
        emp.write_csv(create(d, "fourier.csv")?)?;
    }
    Ok(())
}

/// Skipped when `Ω₊` is too large for a dense least-squares fit.
fn ls_residual(circuit: &Circuit, theta: &[f64], spectrum: &Spectrum, x_max: &[f64], seed: u64) -> Option<f64> {
    let basis = 2 * spectrum.size().omega_plus_usize().filter(|&n| n <= 1000)?;
    let points = super::experiments::uniform_points(x_max, 2 * basis + 50, seed);
    containment_residual(|x| circuit.evaluate(theta, x), spectrum, &points, basis).ok()
}

fn cmd_bound(cfg: &RunConfig, dir: Option<&Path>, out: &mut Output<'_>) -> Result<()> {
    let b = cfg
        .bound
        .as_ref()
        .ok_or_else(|| Error::Config("config needs a `bound` section".into()))?;
    let mut reports = Vec::new();
    let mut kernel = Vec::new();
    for kind in &b.kinds {
        let (name, value, note) = match kind {
            BoundKind::Kernel => {
                let sigma_p = b
                    .inputs
                    .sigma_p
                    .ok_or_else(|| Error::Config("kernel bound needs sigma_p".into()))?;
                for &s in &b.samples {
                    let p = bound_rff_kernel_probability(sigma_p, b.inputs.diameter, b.inputs.epsilon, b.inputs.d, s);
                    out.line(format!("kernel D={s} failure_probability={p:e}"))?;
                    out.record(&serde_json::json!({ "kind": "kernel", "D": s, "probability": p }))?;
                    kernel.push((s, p));
                }
                continue;
            }
            BoundKind::General => ("general", bound_samples(&b.inputs)?, "closed-form sample bound with the given sigma_p"),
            BoundKind::Pauli => (
                "pauli",
                bound_samples_pauli(&b.inputs)?,
                "general bound with sigma_p = d L (L + 1) / 3",
            ),
            BoundKind::Grid => (
                "grid",
                bound_samples_grid(&b.inputs)?,
                "grid bound with C = |X| |f|_inf (sigma_y when |f|_inf is absent)",
            ),
        };
        let report = BoundReport {
            kind: name.into(),
            inputs: b.inputs.clone(),
            d_bound: value,
            note: note.into(),
        };
        out.line(format!("{name} D_bound={value:e}"))?;
        out.record(&report)?;
        reports.push(report);
    }
    if let Some(d) = dir {
        let mut w = csv::Writer::from_writer(create(d, "bounds.csv")?);
        w.write_record([
            "kind", "d", "gates_per_dim", "omega_max", "lambda0", "epsilon", "delta", "sigma_y", "diameter", "step",
            "sigma_p", "f_inf", "D_bound",
        ])?;
        let o = |v: Option<f64>| v.map(|x| format!("{x}")).unwrap_or_default();
        for r in &reports {
            let i = &r.inputs;
            w.write_record([
                r.kind.clone(),
                i.d.to_string(),
                i.gates_per_dim.map(|l| l.to_string()).unwrap_or_default(),
                o(i.omega_max),
                format!("{}", i.lambda0),
                format!("{}", i.epsilon),
                format!("{}", i.delta),
                format!("{}", i.sigma_y),
                format!("{}", i.diameter),
                o(i.step),
                o(i.sigma_p),
                o(i.f_inf),
                format!("{}", r.d_bound),
            ])?;
        }
        w.flush()?;
        if !kernel.is_empty() {
            let mut w = csv::Writer::from_writer(create(d, "kernel_bound.csv")?);
            w.write_record(["D", "probability"])?;
            for (s, p) in kernel {
                w.write_record([format!("{s}"), format!("{p}")])?;
            }
            w.flush()?;
        }
    }
    Ok(())
}

fn cmd_experiment(
    cfg: &RunConfig,
    seed: Option<u64>,
    dir: Option<&Path>,
    csv: Option<&Path>,
    out: &mut Output<'_>,
) -> Result<()> {
    let mut exp = cfg
        .experiment
        .clone()
        .ok_or_else(|| Error::Config("config needs an `experiment` section".into()))?;
    if let Some(s) = seed {
        exp.seeds = vec![s];
    }
    let records = run_experiment(&exp, csv)?;
    for r in &records {
        out.line(format!(
            "{} {} D={} fraction={:.4} train_mse={} test_mse={} seed={}",
            r.experiment_id,
            r.strategy,
            r.d,
            r.fraction,
            r.train_mse.map_or("-".into(), |v| format!("{v:e}")),
            r.test_mse.map_or("-".into(), |v| format!("{v:e}")),
            r.seed
        ))?;
    }
    if out.jsonl {
        write_jsonl(&records, &mut *out.out)?;
    }
    if let Some(d) = dir.map(Path::to_path_buf).or_else(|| exp.output.clone()) {
        let extra = vec![
            ("kind".to_owned(), exp.kind_name().to_owned()),
            ("config".to_owned(), serde_json::to_string(&exp)?),
        ];
        write_run_dir(&d, &records, &exp.seeds, &extra)?;
        out.line(format!("wrote {} records to {}", records.len(), d.display()))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::Strategy;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let (mut o, mut e) = (Vec::new(), Vec::new());
        let code = run(args.iter().copied(), &mut o, &mut e);
        (code, String::from_utf8(o).unwrap(), String::from_utf8(e).unwrap())
    }

    #[test]
    fn missing_config_exits_one() {
        let (code, _, err) = run_str(&["vqc-rff", "spectrum", "--config", "/no/such/file.cfg"]);
        assert_eq!(code, 1);
        assert!(err.contains("cannot read config"));
        let (code, _, _) = run_str(&["vqc-rff", "spectrum"]);
        assert_eq!(code, 1);
        let (code, _, _) = run_str(&["vqc-rff", "nonsense"]);
        assert_eq!(code, 1);
    }

    #[test]
    fn spectrum_counts() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("c.cfg");
        std::fs::write(&p, r#"{"layout": {"kind": "pauli", "gates_per_dim": 5, "dims": 4}}"#).unwrap();
        let (code, out, _) = run_str(&["vqc-rff", "spectrum", "--config", p.to_str().unwrap()]);
        assert_eq!(code, 0);
        assert!(out.contains("|omega_plus|=7321"), "{out}");
        let (_, out, _) = run_str(&["vqc-rff", "--emit", "jsonl", "spectrum", "--config", p.to_str().unwrap()]);
        let v: serde_json::Value = serde_json::from_str(out.trim()).unwrap();
        assert_eq!(v["omega_plus"], "7321");
    }

    #[test]
    fn strategy_names_round_trip() {
        for s in Strategy::ALL {
            assert_eq!(s.name().parse::<Strategy>().unwrap(), s);
        }
    }
}
