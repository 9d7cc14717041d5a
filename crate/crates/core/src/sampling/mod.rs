//! Frequency samplers feeding the random Fourier feature map.
//!
//! * [`Strategy::Distinct`]: uniform over the distinct frequencies, redundancy ignored.
//! * [`Strategy::Tree`]: sums of one random eigenvalue per gate, differenced in
//!   pairs, which reproduces the redundancy-weighted law without enumerating it.
//! * [`Strategy::Grid`]: uniform over a regular grid on `[0, ω_max)^d`, needing
//!   nothing from the circuit but a frequency bound.

use std::io::Write;

use rand::seq::index;
use rand::Rng as _;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::{rng_from_seed, Rng};
use crate::spectrum::{EigenTree, Spectrum, DEFAULT_ENUMERATION_CAP};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Strategy {
    Distinct,
    Tree,
    Grid,
}

impl Strategy {
    pub const ALL: [Strategy; 3] = [Strategy::Distinct, Strategy::Tree, Strategy::Grid];

    pub fn name(self) -> &'static str {
        match self {
            Strategy::Distinct => "distinct",
            Strategy::Tree => "tree",
            Strategy::Grid => "grid",
        }
    }
}

impl std::fmt::Display for Strategy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Strategy {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "distinct" => Ok(Strategy::Distinct),
            "tree" => Ok(Strategy::Tree),
            "grid" => Ok(Strategy::Grid),
            other => Err(Error::Config(format!("unknown sampling strategy `{other}`"))),
        }
    }
}

/// Upper bound `ω_max`, either shared by every dimension or given per dimension.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum OmegaMax {
    Uniform(f64),
    PerDim(Vec<f64>),
}

impl OmegaMax {
    pub fn resolve(&self, dims: usize) -> Result<Vec<f64>> {
        match self {
            OmegaMax::Uniform(w) => Ok(vec![*w; dims]),
            OmegaMax::PerDim(v) if v.len() == dims => Ok(v.clone()),
            OmegaMax::PerDim(v) => Err(Error::Shape(format!(
                "omega_max has {} entries for {dims} dimensions",
                v.len()
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridParams {
    pub omega_max: OmegaMax,
    pub step: f64,
}

impl GridParams {
    pub fn new(omega_max: f64, step: f64) -> Self {
        Self {
            omega_max: OmegaMax::Uniform(omega_max),
            step,
        }
    }

    /// Node count per dimension, `⌈ω_max / s⌉`.
    pub fn nodes_per_dim(&self, dims: usize) -> Result<Vec<usize>> {
        let s = self.step;
        if !(s.is_finite() && s > 0.0) {
            return Err(Error::InvalidSpec(format!("grid step must be positive, got {s}")));
        }
        self.omega_max
            .resolve(dims)?
            .into_iter()
            .map(|w| {
                if !(w.is_finite() && w > 0.0) {
                    Err(Error::InvalidSpec(format!("omega_max must be positive, got {w}")))
                } else if s > w {
                    Err(Error::InvalidSpec(format!("grid step {s} exceeds omega_max {w}")))
                } else {
                    // relative slack so 10/0.5 stays 20 despite rounding
                    Ok(((w / s) * (1.0 - 1e-12)).ceil().max(1.0) as usize)
                }
            })
            .collect()
    }
}

fn default_samples() -> usize {
    1
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SamplingConfig {
    pub strategy: Strategy,
    #[serde(default = "default_samples", alias = "D")]
    pub samples: usize,
    #[serde(default)]
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid: Option<GridParams>,
    /// `None` picks the strategy default: Distinct draws without replacement
    /// when `Ω₊` is enumerable, Tree and Grid draw with replacement.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub replacement: Option<bool>,
    /// Tree only: emit every pairwise difference of `samples` paths.
    #[serde(default)]
    pub all_pairs: bool,
}

impl SamplingConfig {
    pub fn new(strategy: Strategy, samples: usize, seed: u64) -> Self {
        Self {
            strategy,
            samples,
            seed,
            grid: None,
            replacement: None,
            all_pairs: false,
        }
    }

    pub fn with_grid(mut self, grid: GridParams) -> Self {
        self.grid = Some(grid);
        self
    }

    pub fn with_replacement(mut self, replacement: bool) -> Self {
        self.replacement = Some(replacement);
        self
    }

    pub fn with_all_pairs(mut self, all_pairs: bool) -> Self {
        self.all_pairs = all_pairs;
        self
    }

    fn check(&self) -> Result<()> {
        if self.samples == 0 {
            return Err(Error::InvalidSpec("number of samples D must be at least 1".into()));
        }
        Ok(())
    }
}

/// `D` frequency vectors, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct FrequencySample {
    dims: usize,
    data: Vec<f64>,
}

impl FrequencySample {
    pub fn from_rows(dims: usize, rows: &[Vec<f64>]) -> Result<Self> {
        if dims == 0 {
            return Err(Error::Shape("frequency vectors need at least one component".into()));
        }
        if let Some(r) = rows.iter().find(|r| r.len() != dims) {
            return Err(Error::Shape(format!(
                "frequency row of length {} in a {dims}-dimensional sample",
                r.len()
            )));
        }
        if rows.iter().flatten().any(|w| !w.is_finite()) {
            return Err(Error::InvalidSpec("frequency components must be finite".into()));
        }
        Ok(Self {
            dims,
            data: rows.concat(),
        })
    }

    pub fn dims(&self) -> usize {
        self.dims
    }

    pub fn len(&self) -> usize {
        self.data.len() / self.dims
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn get(&self, i: usize) -> &[f64] {
        &self.data[i * self.dims..(i + 1) * self.dims]
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = &[f64]> {
        self.data.chunks_exact(self.dims)
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        self.iter().map(<[f64]>::to_vec).collect()
    }

    /// Writes one row per frequency, header `omega_0,…`.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record((0..self.dims).map(|k| format!("omega_{k}")))?;
        for row in self.iter() {
            w.write_record(row.iter().map(|v| format!("{v}")))?;
        }
        w.flush()?;
        Ok(())
    }

    /// Reads the format written by [`FrequencySample::write_csv`].
    pub fn read_csv<R: std::io::Read>(input: R) -> Result<Self> {
        let mut r = csv::Reader::from_reader(input);
        let dims = r.headers()?.len();
        let mut rows = Vec::new();
        for (i, rec) in r.records().enumerate() {
            let rec = rec?;
            let row = rec
                .iter()
                .enumerate()
                .map(|(j, v)| {
                    v.trim().parse::<f64>().map_err(|e| Error::Parse {
                        row: i + 1,
                        column: j,
                        message: e.to_string(),
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            rows.push(row);
        }
        Self::from_rows(dims, &rows)
    }
}

fn pick(rng: &mut Rng, n: usize) -> usize {
    rng.random_range(0..n as u64) as usize
}

/// Uniform over distinct frequencies. With replacement each component is drawn
/// independently from its dimension's distinct list (all of `Ω`); without
/// replacement `D` distinct members of `Ω₊` are chosen.
pub fn sample_distinct(spectrum: &Spectrum, cfg: &SamplingConfig) -> Result<FrequencySample> {
    cfg.check()?;
    let size = spectrum.size();
    let enumerable = size.omega_plus_usize().filter(|&n| n <= DEFAULT_ENUMERATION_CAP);
    let replacement = cfg.replacement.unwrap_or(enumerable.is_none());
    let mut rng = rng_from_seed(cfg.seed);
    let dims = spectrum.dims();
    let mut data = Vec::with_capacity(cfg.samples * dims);
    if replacement {
        for _ in 0..cfg.samples {
            for dim in spectrum.dimensions() {
                data.push(dim.frequencies()[pick(&mut rng, dim.distinct_count())]);
            }
        }
    } else {
        let population = enumerable.ok_or_else(|| Error::SpectrumTooLarge {
            count: size.omega_plus.to_string(),
            cap: DEFAULT_ENUMERATION_CAP,
        })?;
        if cfg.samples > population {
            return Err(Error::InsufficientPopulation {
                requested: cfg.samples,
                available: population,
            });
        }
        for i in index::sample(&mut rng, population, cfg.samples) {
            data.extend(spectrum.positive_vector(i as u128));
        }
    }
    Ok(FrequencySample { dims, data })
}

fn path_sum(rng: &mut Rng, gates: &[Vec<f64>]) -> f64 {
    gates.iter().map(|eig| eig[pick(rng, eig.len())]).sum()
}

/// Redundancy-weighted sampling through random root-to-leaf paths of the
/// eigenvalue tree. Default: `2D` paths per dimension, differenced in disjoint
/// pairs, giving `D` i.i.d. frequencies. With `all_pairs`, `D` paths yield all
/// `D(D-1)/2` differences.
pub fn sample_tree(tree: &EigenTree, cfg: &SamplingConfig) -> Result<FrequencySample> {
    cfg.check()?;
    if tree.dims.is_empty() || tree.dims.iter().flatten().any(Vec::is_empty) {
        return Err(Error::InvalidSpec("eigenvalue tree has an empty level".into()));
    }
    let mut rng = rng_from_seed(cfg.seed);
    let dims = tree.dims();
    let mut data;
    if cfg.all_pairs {
        let paths: Vec<Vec<f64>> = (0..cfg.samples)
            .map(|_| tree.dims.iter().map(|g| path_sum(&mut rng, g)).collect())
            .collect();
        data = Vec::with_capacity(cfg.samples * cfg.samples.saturating_sub(1) / 2 * dims);
        for i in 0..paths.len() {
            for j in i + 1..paths.len() {
                data.extend(paths[i].iter().zip(&paths[j]).map(|(a, b)| a - b));
            }
        }
        if data.is_empty() {
            return Err(Error::InsufficientPopulation {
                requested: 2,
                available: cfg.samples,
            });
        }
    } else {
        data = Vec::with_capacity(cfg.samples * dims);
        for _ in 0..cfg.samples {
            for gates in &tree.dims {
                let a = path_sum(&mut rng, gates);
                let b = path_sum(&mut rng, gates);
                data.push(a - b);
            }
        }
    }
    Ok(FrequencySample { dims, data })
}

/// Uniform over grid nodes `j·s`, `0 <= j < ⌈ω_max/s⌉` per dimension; with
/// replacement unless the config says otherwise.
pub fn sample_grid(cfg: &SamplingConfig, dims: usize) -> Result<FrequencySample> {
    cfg.check()?;
    let grid = cfg
        .grid
        .as_ref()
        .ok_or_else(|| Error::Config("grid sampling needs `grid: {omega_max, step}`".into()))?;
    let nodes = grid.nodes_per_dim(dims)?;
    let s = grid.step;
    let mut rng = rng_from_seed(cfg.seed);
    let mut data = Vec::with_capacity(cfg.samples * dims);
    if cfg.replacement.unwrap_or(true) {
        for _ in 0..cfg.samples {
            for &n in &nodes {
                data.push(pick(&mut rng, n) as f64 * s);
            }
        }
    } else {
        let total = nodes
            .iter()
            .try_fold(1usize, |acc, &n| acc.checked_mul(n))
            .filter(|&t| t <= DEFAULT_ENUMERATION_CAP)
            .ok_or_else(|| Error::SpectrumTooLarge {
                count: format!("{nodes:?} nodes per dimension"),
                cap: DEFAULT_ENUMERATION_CAP,
            })?;
        if cfg.samples > total {
            return Err(Error::InsufficientPopulation {
                requested: cfg.samples,
                available: total,
            });
        }
        for r in index::sample(&mut rng, total, cfg.samples) {
            let mut r = r;
            let mut row = vec![0.0; dims];
            for k in (0..dims).rev() {
                row[k] = (r % nodes[k]) as f64 * s;
                r /= nodes[k];
            }
            data.extend(row);
        }
    }
    Ok(FrequencySample { dims, data })
}

/// Sampling inputs that only some strategies need.
pub struct SamplingSource<'a> {
    pub spectrum: Option<&'a Spectrum>,
    pub tree: Option<&'a EigenTree>,
    pub dims: usize,
}

/// Dispatches on `cfg.strategy`.
pub fn sample(cfg: &SamplingConfig, source: &SamplingSource<'_>) -> Result<FrequencySample> {
    match cfg.strategy {
        Strategy::Distinct => sample_distinct(
            source
                .spectrum
                .ok_or_else(|| Error::Config("distinct sampling needs a spectrum".into()))?,
            cfg,
        ),
        Strategy::Tree => sample_tree(
            source
                .tree
                .ok_or_else(|| Error::Config("tree sampling needs an encoding layout".into()))?,
            cfg,
        ),
        Strategy::Grid => sample_grid(cfg, source.dims),
    }
}

/// `ω_max = π M / x_range`: the highest frequency `M` evenly spaced points on
/// an interval of length `x_range` can resolve.
pub fn default_omega_max(points: usize, x_range: f64) -> Result<f64> {
    if points < 2 || !(x_range.is_finite() && x_range > 0.0) {
        return Err(Error::InvalidSpec(format!(
            "need at least 2 points on a positive range, got {points} on {x_range}"
        )));
    }
    Ok(std::f64::consts::PI * points as f64 / x_range)
}
