//! Invariants checked against brute-force oracles on random small instances.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use proptest::prelude::*;
use vqc_rff::analysis::{grid_shift_construction, FourierSeries};
use vqc_rff::operators::{presets, HamiltonianSpec, Pauli};
use vqc_rff::rff::FeatureMap;
use vqc_rff::sampling::{sample_distinct, sample_tree, SamplingConfig, Strategy as Sampler};
use vqc_rff::sim::{random_instance, GeneratorConfig, PoolEntry};
use vqc_rff::spectrum::{
    lambda_sums, DimensionSpectrum, EncodingGate, EncodingLayout, Spectrum, SpectrumOptions,
};

/// Every index path of every gate, all ordered pairs of paths, differences
/// keyed by twice their value (inputs are half-integers).
fn brute_differences(gates: &[Vec<f64>]) -> BTreeMap<i64, u64> {
    let mut sums = vec![0.0];
    for g in gates {
        sums = sums.iter().flat_map(|s| g.iter().map(move |l| s + l)).collect();
    }
    let mut out = BTreeMap::new();
    for a in &sums {
        for b in &sums {
            *out.entry(((a - b) * 2.0).round() as i64).or_insert(0) += 1;
        }
    }
    out
}

fn binomial(n: u64, k: u64) -> BigUint {
    (0..k).fold(BigUint::from(1u32), |acc, i| acc * (n - i) / (i + 1))
}

fn half_integer_gates() -> impl Strategy<Value = Vec<Vec<f64>>> {
    prop::collection::vec(prop::collection::vec((-6i32..=6).prop_map(|v| v as f64 / 2.0), 1..4), 1..4)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn spectrum_matches_brute_force(mut gates in half_integer_gates()) {
        for g in &mut gates {
            g.sort_by(f64::total_cmp);
        }
        let opts = SpectrumOptions::default();
        let dim = DimensionSpectrum::from_sums(&lambda_sums(&gates, opts).unwrap(), opts).unwrap();
        let brute = brute_differences(&gates);
        prop_assert_eq!(dim.distinct_count(), brute.len());
        for (w, r) in dim.frequencies().iter().zip(dim.redundancies()) {
            let key = (w * 2.0).round() as i64;
            prop_assert_eq!(r, &BigUint::from(brute[&key]));
        }
    }

    #[test]
    fn spectrum_symmetry_and_total(mut gates in half_integer_gates()) {
        for g in &mut gates {
            g.sort_by(f64::total_cmp);
        }
        let opts = SpectrumOptions::default();
        let dim = DimensionSpectrum::from_sums(&lambda_sums(&gates, opts).unwrap(), opts).unwrap();
        let f = dim.frequencies();
        let r = dim.redundancies();
        let n = f.len();
        for i in 0..n {
            prop_assert_eq!(f[i], -f[n - 1 - i]);
            prop_assert_eq!(&r[i], &r[n - 1 - i]);
        }
        let paths: u64 = gates.iter().map(|g| g.len() as u64).product();
        prop_assert_eq!(dim.total_redundancy(), BigUint::from(paths * paths));
    }

    #[test]
    fn scaling_gates_scales_frequencies(beta in 0.1f64..5.0, l in 1usize..5) {
        let plain = EncodingLayout::pauli(l, 1).unwrap();
        let scaled = EncodingLayout::uniform(EncodingGate::new(presets::pauli_z_half(), beta), l, 1).unwrap();
        let a = Spectrum::build(&plain, SpectrumOptions::default()).unwrap();
        let b = Spectrum::build(&scaled, SpectrumOptions::default()).unwrap();
        let (da, db) = (a.dimension(0), b.dimension(0));
        prop_assert_eq!(da.redundancies(), db.redundancies());
        for (x, y) in da.frequencies().iter().zip(db.frequencies()) {
            prop_assert!((x * beta - y).abs() <= 1e-9 * (1.0 + y.abs()));
        }
    }

    #[test]
    fn samples_lie_in_spectrum(l in 1usize..5, d in 1usize..3, seed in any::<u64>(), n in 1usize..40) {
        let layout = EncodingLayout::pauli(l, d).unwrap();
        let spectrum = Spectrum::build(&layout, SpectrumOptions::default()).unwrap();
        let tree = layout.eigen_tree().unwrap();
        let cfg = SamplingConfig::new(Sampler::Tree, n, seed);
        for w in sample_tree(&tree, &cfg).unwrap().iter() {
            prop_assert!(spectrum.contains(w));
        }
        let cfg = SamplingConfig::new(Sampler::Distinct, n, seed).with_replacement(true);
        for w in sample_distinct(&spectrum, &cfg).unwrap().iter() {
            prop_assert!(spectrum.contains(w));
        }
    }

    #[test]
    fn approximate_kernel_is_a_kernel(seed in any::<u64>(), x in prop::collection::vec(-5.0f64..5.0, 2), y in prop::collection::vec(-5.0f64..5.0, 2)) {
        let cfg = SamplingConfig::new(Sampler::Distinct, 12, seed).with_replacement(true);
        let map = FeatureMap::new(sample_distinct(&Spectrum::pauli(3, 2), &cfg).unwrap()).unwrap();
        prop_assert!((map.approx_kernel(&x, &x).unwrap() - 1.0).abs() < 1e-12);
        let (kxy, kyx) = (map.approx_kernel(&x, &y).unwrap(), map.approx_kernel(&y, &x).unwrap());
        prop_assert!((kxy - kyx).abs() < 1e-12);
        prop_assert!(kxy.abs() <= 1.0 + 1e-12);
        let phi = map.features(&x).unwrap();
        prop_assert!((phi.iter().map(|v| v * v).sum::<f64>() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn circuits_preserve_norm(seed in any::<u64>(), l in 1usize..4, qubits in 1usize..5, x in -4.0f64..4.0) {
        let pool = vec![
            PoolEntry::new(presets::pauli_z_half(), 1.0),
            PoolEntry::new(HamiltonianSpec::single_pauli(Pauli::X, 0.7), 1.3),
        ];
        let mut cfg = GeneratorConfig::new(pool, l, 1, seed);
        cfg.qubits = qubits;
        let (desc, theta) = random_instance(&cfg).unwrap();
        let state = desc.compile().unwrap().final_state(&theta, &[x]).unwrap();
        let norm: f64 = state.iter().map(|c| c.norm_sqr()).sum();
        prop_assert!((norm - 1.0).abs() < 1e-12);
    }

    #[test]
    fn grid_shift_respects_bound(
        terms in prop::collection::vec((prop::collection::vec(-4.0f64..4.0, 2), -1.0f64..1.0, -1.0f64..1.0), 1..5),
        step in 0.05f64..1.0,
        probe in prop::collection::vec(0.0f64..1.5, 2),
    ) {
        let f = FourierSeries::new(
            terms.iter().map(|t| t.0.clone()).collect(),
            terms.iter().map(|t| t.1).collect(),
            terms.iter().map(|t| t.2).collect(),
        ).unwrap();
        let g = grid_shift_construction(&f, step, &[1.5, 1.5]).unwrap();
        prop_assert!((f.eval(&probe) - g.shifted.eval(&probe)).abs() <= g.bound);
    }
}

#[test]
fn pauli_redundancies_are_binomial() {
    for l in 1..=12u64 {
        let gates = vec![vec![-0.5, 0.5]; l as usize];
        let opts = SpectrumOptions::default();
        let dim = DimensionSpectrum::from_sums(&lambda_sums(&gates, opts).unwrap(), opts).unwrap();
        assert_eq!(dim.distinct_count() as u64, 2 * l + 1);
        for (w, r) in dim.frequencies().iter().zip(dim.redundancies()) {
            let k = (*w as i64 + l as i64) as u64;
            assert_eq!(r, &binomial(2 * l, k), "L={l} ω={w}");
        }
        assert_eq!(&dim, Spectrum::pauli(l as usize, 1).dimension(0));
    }
}
