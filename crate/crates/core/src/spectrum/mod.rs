//! Frequency spectrum of a Hamiltonian-encoded model.
//!
//! For one input dimension with gates `H_1 … H_L`, every choice of one
//! eigenvalue per gate gives a sum `Λ_i`; the accessible frequencies are all
//! differences `Λ_i - Λ_j`. The number of `(i, j)` pairs that land on the same
//! frequency is its redundancy. Across dimensions the spectrum is the Cartesian
//! product of the per-dimension sets, which is never materialized here: the
//! product is ranked and unranked lazily instead.
//!
//! Sums are built by repeated convolution of per-gate eigenvalue multisets, so
//! the cost follows the number of *distinct* values rather than the `Π d_ℓ`
//! index combinations. Values closer than the tolerance are merged; the
//! smallest member of a merged group represents it.

mod layout;

pub use layout::{EigenTree, EncodingGate, EncodingLayout};

use std::io::Write;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub const DEFAULT_TOLERANCE: f64 = 1e-9;
pub const DEFAULT_ENUMERATION_CAP: usize = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumOptions {
    /// Absolute merging tolerance on frequencies.
    pub tolerance: f64,
    /// Largest multiset / product the routines agree to enumerate.
    pub cap: usize,
}

impl Default for SpectrumOptions {
    fn default() -> Self {
        Self {
            tolerance: DEFAULT_TOLERANCE,
            cap: DEFAULT_ENUMERATION_CAP,
        }
    }
}

/// Sorted `(value, multiplicity)` pairs.
pub type Multiset = Vec<(f64, BigUint)>;

fn merge_sorted(mut items: Vec<(f64, BigUint)>, tolerance: f64) -> Multiset {
    items.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut out: Multiset = Vec::with_capacity(items.len());
    let mut last = f64::NEG_INFINITY;
    for (v, m) in items {
        match out.last_mut() {
            Some(top) if v - last <= tolerance => top.1 += m,
            _ => out.push((v, m)),
        }
        last = v;
    }
    out
}

fn collapse(values: &[f64], tolerance: f64) -> Multiset {
    merge_sorted(values.iter().map(|&v| (v, BigUint::one())).collect(), tolerance)
}

/// All sums `Λ_i = λ_1^{i_1} + … + λ_L^{i_L}` with their multiplicities.
/// Eigenvalues are expected already multiplied by their gate scaling.
pub fn lambda_sums(gates: &[Vec<f64>], opts: SpectrumOptions) -> Result<Multiset> {
    let mut acc: Multiset = vec![(0.0, BigUint::one())];
    for (l, eig) in gates.iter().enumerate() {
        if eig.is_empty() {
            return Err(Error::InvalidSpec(format!("gate {l} has no eigenvalues")));
        }
        let gate = collapse(eig, opts.tolerance);
        let work = acc.len().saturating_mul(gate.len());
        if work > opts.cap {
            return Err(Error::SpectrumTooLarge {
                count: work.to_string(),
                cap: opts.cap,
            });
        }
        let mut next = Vec::with_capacity(work);
        for (s, ms) in &acc {
            for (v, mv) in &gate {
                next.push((s + v, ms * mv));
            }
        }
        acc = merge_sorted(next, opts.tolerance);
    }
    Ok(acc)
}

/// Number of ways each frequency arises as `ω_1 + … + ω_L` with `ω_ℓ` a
/// distinct eigenvalue difference of gate `ℓ`. Unlike the pair count this
/// ignores eigenvalue multiplicities; an encoding with scalings `3^(ℓ-1)`
/// maps every frequency to a single balanced-ternary path.
pub fn path_counts(gates: &[Vec<f64>], opts: SpectrumOptions) -> Result<Multiset> {
    let per_gate = gates
        .iter()
        .map(|eig| {
            let distinct = collapse(eig, opts.tolerance);
            let diffs = distinct
                .iter()
                .flat_map(|(a, _)| distinct.iter().map(move |(b, _)| a - b))
                .collect::<Vec<_>>();
            collapse(&diffs, opts.tolerance).into_iter().map(|(v, _)| v).collect()
        })
        .collect::<Vec<Vec<f64>>>();
    lambda_sums(&per_gate, opts)
}

/// Distinct frequencies of one input dimension, symmetric about zero.
#[derive(Debug, Clone, PartialEq)]
pub struct DimensionSpectrum {
    frequencies: Vec<f64>,
    redundancies: Vec<BigUint>,
}

impl DimensionSpectrum {
    /// All differences of the given sums, symmetric by construction.
    pub fn from_sums(sums: &Multiset, opts: SpectrumOptions) -> Result<Self> {
        let n = sums.len();
        let pairs = n.saturating_mul(n + 1) / 2;
        if pairs > opts.cap {
            return Err(Error::SpectrumTooLarge {
                count: pairs.to_string(),
                cap: opts.cap,
            });
        }
        // Non-negative differences only (i >= j on the sorted sums); the
        // negative half is the exact mirror.
        let mut diffs: Vec<(f64, BigUint, bool)> = Vec::with_capacity(pairs);
        for i in 0..n {
            for j in 0..=i {
                let w = &sums[i].1 * &sums[j].1;
                diffs.push((sums[i].0 - sums[j].0, w, i == j));
            }
        }
        diffs.sort_by(|a, b| a.0.total_cmp(&b.0));

        let mut clusters: Vec<(f64, BigUint, BigUint)> = Vec::new(); // (rep, diagonal, off-diagonal)
        let mut last = f64::NEG_INFINITY;
        for (v, w, diag) in diffs {
            let v = if clusters.is_empty() { v.max(0.0) } else { v };
            if clusters.is_empty() || v - last > opts.tolerance {
                clusters.push((if clusters.is_empty() { 0.0 } else { v }, BigUint::zero(), BigUint::zero()));
            }
            let top = clusters.last_mut().expect("pushed above");
            if diag {
                top.1 += w;
            } else {
                top.2 += w;
            }
            last = v;
        }

        let mut frequencies = Vec::with_capacity(2 * clusters.len() - 1);
        let mut redundancies = Vec::with_capacity(2 * clusters.len() - 1);
        for (rep, _, off) in clusters.iter().skip(1).rev() {
            frequencies.push(-rep);
            redundancies.push(off.clone());
        }
        let (_, diag0, off0) = &clusters[0];
        frequencies.push(0.0);
        redundancies.push(diag0 + off0 * 2u32);
        for (rep, _, off) in clusters.iter().skip(1) {
            frequencies.push(*rep);
            redundancies.push(off.clone());
        }
        Ok(Self {
            frequencies,
            redundancies,
        })
    }

    /// `L` gates with eigenvalues ±1/2: frequencies `-L..=L`, redundancy of
    /// `k` equal to `C(2L, L+k)` (Vandermonde convolution of two binomial rows).
    pub fn pauli(gates: usize) -> Self {
        let l = gates as i64;
        let row = binomial_row(2 * gates);
        Self {
            frequencies: (-l..=l).map(|k| k as f64).collect(),
            redundancies: (-l..=l).map(|k| row[(l + k) as usize].clone()).collect(),
        }
    }

    /// Builds a spectrum from explicit symmetric data (e.g. a planted lattice).
    pub fn from_parts(frequencies: Vec<f64>, redundancies: Vec<BigUint>) -> Result<Self> {
        let n = frequencies.len();
        if n == 0 || n != redundancies.len() || n % 2 == 0 {
            return Err(Error::InvalidSpec(
                "dimension spectrum needs an odd number of frequencies with matching redundancies"
                    .into(),
            ));
        }
        let symmetric = (0..n).all(|i| {
            frequencies[i] == -frequencies[n - 1 - i] && redundancies[i] == redundancies[n - 1 - i]
        });
        let sorted = frequencies.windows(2).all(|w| w[0] < w[1]);
        if !symmetric || !sorted || redundancies.iter().any(Zero::is_zero) {
            return Err(Error::InvalidSpec(
                "dimension spectrum must be strictly increasing, symmetric and positively weighted"
                    .into(),
            ));
        }
        Ok(Self {
            frequencies,
            redundancies,
        })
    }

    /// Integer frequencies `-max..=max`, unit redundancy.
    pub fn integer_lattice(max: usize) -> Self {
        let m = max as i64;
        Self {
            frequencies: (-m..=m).map(|k| k as f64).collect(),
            redundancies: vec![BigUint::one(); 2 * max + 1],
        }
    }

    pub fn frequencies(&self) -> &[f64] {
        &self.frequencies
    }

    pub fn redundancies(&self) -> &[BigUint] {
        &self.redundancies
    }

    pub fn distinct_count(&self) -> usize {
        self.frequencies.len()
    }

    pub fn zero_index(&self) -> usize {
        self.frequencies.len() / 2
    }

    /// Frequencies `>= 0`, ascending, with redundancies.
    pub fn positive(&self) -> impl Iterator<Item = (f64, &BigUint)> {
        let z = self.zero_index();
        self.frequencies[z..]
            .iter()
            .copied()
            .zip(&self.redundancies[z..])
    }

    pub fn max_frequency(&self) -> f64 {
        *self.frequencies.last().expect("non-empty")
    }

    pub fn total_redundancy(&self) -> BigUint {
        self.redundancies.iter().sum()
    }

    /// Index of `omega` in the distinct list, within `tolerance`.
    pub fn find(&self, omega: f64, tolerance: f64) -> Option<usize> {
        let i = self.frequencies.partition_point(|&f| f < omega - tolerance);
        (i < self.frequencies.len() && (self.frequencies[i] - omega).abs() <= tolerance).then_some(i)
    }

    /// Mean of `ω²` over the distinct frequencies.
    pub fn mean_square(&self) -> f64 {
        self.frequencies.iter().map(|f| f * f).sum::<f64>() / self.frequencies.len() as f64
    }
}

fn binomial_row(n: usize) -> Vec<BigUint> {
    let mut row = vec![BigUint::one()];
    for k in 0..n {
        let next = &row[k] * BigUint::from(n - k) / BigUint::from(k + 1);
        row.push(next);
    }
    row
}

/// Spectrum over all input dimensions (a lazy Cartesian product).
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    dims: Vec<DimensionSpectrum>,
    tolerance: f64,
}

impl Spectrum {
    pub fn build(layout: &EncodingLayout, opts: SpectrumOptions) -> Result<Self> {
        let tree = layout.eigen_tree()?;
        Self::from_tree(&tree, opts)
    }

    pub fn from_tree(tree: &EigenTree, opts: SpectrumOptions) -> Result<Self> {
        let dims = tree
            .dims
            .iter()
            .map(|gates| DimensionSpectrum::from_sums(&lambda_sums(gates, opts)?, opts))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            dims,
            tolerance: opts.tolerance,
        })
    }

    pub fn from_dimensions(dims: Vec<DimensionSpectrum>, tolerance: f64) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::InvalidSpec("spectrum needs at least one dimension".into()));
        }
        Ok(Self { dims, tolerance })
    }

    /// `L` Pauli gates on each of `d` dimensions, in closed form.
    pub fn pauli(gates_per_dim: usize, dims: usize) -> Self {
        Self {
            dims: vec![DimensionSpectrum::pauli(gates_per_dim); dims],
            tolerance: DEFAULT_TOLERANCE,
        }
    }

    pub fn dims(&self) -> usize {
        self.dims.len()
    }

    pub fn dimension(&self, k: usize) -> &DimensionSpectrum {
        &self.dims[k]
    }

    pub fn dimensions(&self) -> &[DimensionSpectrum] {
        &self.dims
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    pub fn size(&self) -> SpectrumSize {
        let distinct_per_dim: Vec<usize> = self.dims.iter().map(|d| d.distinct_count()).collect();
        let omega: BigUint = distinct_per_dim.iter().map(|&n| BigUint::from(n)).product();
        let omega_plus = (&omega - 1u32) / 2u32 + 1u32;
        SpectrumSize {
            distinct_per_dim,
            omega,
            omega_plus,
        }
    }

    /// `|Ω|` as a `usize` when it is at most `cap`.
    fn enumerable_size(&self, cap: usize) -> Result<usize> {
        let omega = self.size().omega;
        match omega.to_usize() {
            Some(n) if n <= cap => Ok(n),
            _ => Err(Error::SpectrumTooLarge {
                count: omega.to_string(),
                cap,
            }),
        }
    }

    /// Vector at `rank` in the lexicographic order of `Ω` (dimension 0 most
    /// significant, each dimension ascending).
    pub fn vector_at(&self, mut rank: u128) -> Vec<f64> {
        let mut digits = vec![0usize; self.dims.len()];
        for (k, dim) in self.dims.iter().enumerate().rev() {
            let n = dim.distinct_count() as u128;
            digits[k] = (rank % n) as usize;
            rank /= n;
        }
        digits
            .iter()
            .zip(&self.dims)
            .map(|(&i, d)| d.frequencies[i])
            .collect()
    }

    /// Redundancy of the vector at `rank`: product of per-dimension redundancies.
    pub fn redundancy_at(&self, mut rank: u128) -> BigUint {
        let mut r = BigUint::one();
        for dim in self.dims.iter().rev() {
            let n = dim.distinct_count() as u128;
            r *= &dim.redundancies[(rank % n) as usize];
            rank /= n;
        }
        r
    }

    /// `index`-th element of `Ω₊`, `0 <= index < |Ω₊|`.
    ///
    /// Negation reverses the lexicographic rank, so the vectors whose first
    /// nonzero component is positive, plus zero, are exactly the upper half of
    /// the ranks starting at the zero vector.
    pub fn positive_vector(&self, index: u128) -> Vec<f64> {
        self.vector_at(self.zero_rank() + index)
    }

    pub fn positive_redundancy(&self, index: u128) -> BigUint {
        self.redundancy_at(self.zero_rank() + index)
    }

    fn zero_rank(&self) -> u128 {
        self.dims
            .iter()
            .fold(0u128, |acc, d| acc * d.distinct_count() as u128 + d.zero_index() as u128)
    }

    /// Materializes `Ω₊` with redundancies (canonical sign: first nonzero
    /// component positive), refusing more than `cap` vectors.
    pub fn positive_half(&self, cap: usize) -> Result<Vec<(Vec<f64>, BigUint)>> {
        let n = self.enumerable_size(cap.saturating_mul(2))?;
        let half = (n - 1) / 2 + 1;
        if half > cap {
            return Err(Error::SpectrumTooLarge {
                count: half.to_string(),
                cap,
            });
        }
        Ok((0..half as u128)
            .map(|i| (self.positive_vector(i), self.positive_redundancy(i)))
            .collect())
    }

    /// Every vector of `Ω`, refusing more than `cap`.
    pub fn full(&self, cap: usize) -> Result<Vec<Vec<f64>>> {
        let n = self.enumerable_size(cap)?;
        Ok((0..n as u128).map(|r| self.vector_at(r)).collect())
    }

    /// `Σ_ω p(ω) ωᵀω` for the uniform law over distinct frequencies. The
    /// product structure reduces it to a sum of per-dimension mean squares.
    pub fn sigma_p(&self) -> f64 {
        self.dims.iter().map(DimensionSpectrum::mean_square).sum()
    }

    /// Whether `omega` belongs to the spectrum within its tolerance.
    pub fn contains(&self, omega: &[f64]) -> bool {
        omega.len() == self.dims.len()
            && omega
                .iter()
                .zip(&self.dims)
                .all(|(&w, d)| d.find(w, self.tolerance).is_some())
    }

    /// Writes `dim,frequency,redundancy` rows.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["dim", "frequency", "redundancy"])?;
        for (k, dim) in self.dims.iter().enumerate() {
            for (f, r) in dim.frequencies.iter().zip(&dim.redundancies) {
                w.write_record([k.to_string(), format!("{f}"), r.to_string()])?;
            }
        }
        w.flush()?;
        Ok(())
    }
}

/// Counts derived from the per-dimension spectra.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumSize {
    pub distinct_per_dim: Vec<usize>,
    pub omega: BigUint,
    pub omega_plus: BigUint,
}

impl SpectrumSize {
    pub fn omega_plus_usize(&self) -> Option<usize> {
        self.omega_plus.to_usize()
    }
}

/// Per-dimension distinct counts, `|Ω|` and `|Ω₊|` for a layout.
pub fn spectrum_size(layout: &EncodingLayout, opts: SpectrumOptions) -> Result<SpectrumSize> {
    Ok(Spectrum::build(layout, opts)?.size())
}

/// `σ_p = d L (L+1) / 3` for `L` Pauli gates on each of `d` dimensions.
pub fn pauli_sigma_p(gates_per_dim: usize, dims: usize) -> f64 {
    let l = gates_per_dim as f64;
    dims as f64 * l * (l + 1.0) / 3.0
}

#[cfg(test)]
mod tests {
    use super::*;

    fn opts() -> SpectrumOptions {
        SpectrumOptions::default()
    }

    fn ints(m: &Multiset) -> Vec<(f64, u64)> {
        m.iter().map(|(v, c)| (*v, c.to_u64().unwrap())).collect()
    }

    #[test]
    fn single_gate_sums() {
        let s = lambda_sums(&[vec![-0.5, 0.5]], opts()).unwrap();
        assert_eq!(ints(&s), vec![(-0.5, 1), (0.5, 1)]);
    }

    #[test]
    fn three_pauli_sums_are_binomial() {
        let g = vec![vec![-0.5, 0.5]; 3];
        let s = lambda_sums(&g, opts()).unwrap();
        assert_eq!(ints(&s), vec![(-1.5, 1), (-0.5, 3), (0.5, 3), (1.5, 1)]);
    }

    #[test]
    fn scaled_pauli_sums_are_distinct() {
        let g = vec![vec![-0.5, 0.5], vec![-1.5, 1.5]];
        let s = lambda_sums(&g, opts()).unwrap();
        assert_eq!(ints(&s), vec![(-2.0, 1), (-1.0, 1), (1.0, 1), (2.0, 1)]);
    }

    #[test]
    fn sums_respect_cap() {
        let g = vec![vec![0.0, 1.0, 2.5]; 4];
        let tight = SpectrumOptions { cap: 10, ..opts() };
        assert!(matches!(
            lambda_sums(&g, tight),
            Err(Error::SpectrumTooLarge { .. })
        ));
        assert!(lambda_sums(&[vec![]], opts()).is_err());
    }

    #[test]
    fn pauli_dimension_is_integer_range() {
        for l in 1..=6 {
            let layout = EncodingLayout::pauli(l, 1).unwrap();
            let s = Spectrum::build(&layout, opts()).unwrap();
            let d = s.dimension(0);
            assert_eq!(d.distinct_count(), 2 * l + 1);
            let want: Vec<f64> = (-(l as i64)..=l as i64).map(|k| k as f64).collect();
            assert_eq!(d.frequencies(), want.as_slice());
            assert_eq!(d, &DimensionSpectrum::pauli(l));
        }
    }

    #[test]
    fn two_hundred_pauli_gates() {
        let s = Spectrum::build(&EncodingLayout::pauli(200, 1).unwrap(), opts()).unwrap();
        let d = s.dimension(0);
        assert_eq!(d.distinct_count(), 401);
        assert_eq!(d.total_redundancy(), BigUint::one() << 400u32);
        assert_eq!(d, &DimensionSpectrum::pauli(200));
    }

    #[test]
    fn exponential_encoding_has_no_redundancy() {
        for l in 1..=4 {
            let s = Spectrum::build(&EncodingLayout::exponential_pauli(l, 1).unwrap(), opts()).unwrap();
            let d = s.dimension(0);
            assert_eq!(d.distinct_count(), 3usize.pow(l as u32));
            let half = (3i64.pow(l as u32) - 1) / 2;
            let want: Vec<f64> = (-half..=half).map(|k| k as f64).collect();
            assert_eq!(d.frequencies(), want.as_slice());
            assert_eq!(d.total_redundancy(), BigUint::one() << (2 * l as u32));
            let tree = EncodingLayout::exponential_pauli(l, 1).unwrap().eigen_tree().unwrap();
            let paths = path_counts(&tree.dims[0], opts()).unwrap();
            assert_eq!(paths.len(), d.distinct_count());
            assert!(paths.iter().all(|(_, c)| c.is_one()));
        }
    }

    #[test]
    fn exponential_pair_counts_by_hand() {
        // sums {-2,-1,1,2}: ω=1 from (-1,-2) and (2,1), ω=3 from (1,-2) and (2,-1)
        let s = Spectrum::build(&EncodingLayout::exponential_pauli(2, 1).unwrap(), opts()).unwrap();
        let r: Vec<u64> = s.dimension(0).redundancies().iter().map(|r| r.to_u64().unwrap()).collect();
        assert_eq!(r, vec![1, 2, 1, 2, 4, 2, 1, 2, 1]);
    }

    #[test]
    fn pauli_path_counts_are_trinomial() {
        let tree = EncodingLayout::pauli(2, 1).unwrap().eigen_tree().unwrap();
        assert_eq!(ints(&path_counts(&tree.dims[0], opts()).unwrap()), vec![(-2.0, 1), (-1.0, 2), (0.0, 3), (1.0, 2), (2.0, 1)]);
    }

    #[test]
    fn positive_half_counts() {
        let s = Spectrum::pauli(5, 1);
        let half = s.positive_half(1000).unwrap();
        let fs: Vec<f64> = half.iter().map(|(v, _)| v[0]).collect();
        assert_eq!(fs, vec![0.0, 1.0, 2.0, 3.0, 4.0, 5.0]);

        let s = Spectrum::pauli(5, 4);
        assert_eq!(s.size().omega_plus, BigUint::from(7321u32));
        assert_eq!(s.positive_half(10_000).unwrap().len(), 7321);

        let s = Spectrum::pauli(1, 2);
        let half = s.positive_half(100).unwrap();
        let vs: Vec<Vec<f64>> = half.into_iter().map(|(v, _)| v).collect();
        assert_eq!(
            vs,
            vec![vec![0.0, 0.0], vec![0.0, 1.0], vec![1.0, -1.0], vec![1.0, 0.0], vec![1.0, 1.0]]
        );
    }

    #[test]
    fn positive_half_is_canonical_involution_class() {
        let s = Spectrum::pauli(2, 3);
        let half = s.positive_half(1000).unwrap();
        for (v, _) in &half {
            let first = v.iter().find(|c| **c != 0.0);
            assert!(first.is_none_or(|c| *c > 0.0));
        }
        let full = s.full(1000).unwrap();
        for v in full {
            let neg: Vec<f64> = v.iter().map(|c| -c + 0.0).collect();
            let hits = half.iter().filter(|(h, _)| *h == v || *h == neg).count();
            assert_eq!(hits, 1, "{v:?}");
        }
    }

    #[test]
    fn huge_spectrum_size_without_materializing() {
        let size = Spectrum::pauli(20, 16).size();
        assert_eq!(size.omega, BigUint::from(41u32).pow(16));
        let approx = size.omega.to_f64().unwrap();
        assert!((approx / 6.3e25 - 1.0).abs() < 0.02);
        let small = Spectrum::pauli(1, 1).size();
        assert_eq!(small.omega, BigUint::from(3u32));
        assert_eq!(small.omega_plus, BigUint::from(2u32));
        assert!(Spectrum::pauli(20, 16).positive_half(1000).is_err());
    }

    #[test]
    fn sigma_p_values() {
        assert!((Spectrum::pauli(2, 1).sigma_p() - 2.0).abs() < 1e-12);
        assert!((Spectrum::pauli(1, 3).sigma_p() - 2.0).abs() < 1e-12);
        assert!((pauli_sigma_p(1, 3) - 2.0).abs() < 1e-12);
        let zero = DimensionSpectrum::from_parts(vec![0.0], vec![BigUint::one()]).unwrap();
        assert_eq!(Spectrum::from_dimensions(vec![zero], 1e-9).unwrap().sigma_p(), 0.0);
    }

    #[test]
    fn membership() {
        let s = Spectrum::pauli(3, 2);
        assert!(s.contains(&[3.0, -2.0]));
        assert!(s.contains(&[1.0 + 1e-12, 0.0]));
        assert!(!s.contains(&[0.5, 0.0]));
        assert!(!s.contains(&[4.0, 0.0]));
    }

    #[test]
    fn csv_rows() {
        let mut buf = Vec::new();
        Spectrum::pauli(1, 1).write_csv(&mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "dim,frequency,redundancy\n0,-1,1\n0,0,2\n0,1,1\n"
        );
    }

    #[test]
    fn from_parts_validates() {
        assert!(DimensionSpectrum::from_parts(vec![-1.0, 0.0, 2.0], vec![BigUint::one(); 3]).is_err());
        assert!(DimensionSpectrum::from_parts(vec![-1.0, 1.0], vec![BigUint::one(); 2]).is_err());
    }
}
