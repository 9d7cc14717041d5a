//! Random Fourier features: the feature map, ridge fits in closed form and by
//! Adam, and kernel ridge regression for the exact spectrum kernel.

mod dataset;
mod features;
mod kernel;
mod ridge;
mod sgd;
mod solve;

pub use dataset::Dataset;
pub use features::FeatureMap;
pub use kernel::{fit_krr_dual, fit_krr_dual_capped, gram, ExactKernel, Kernel, KrrModel, Weighting};
pub use ridge::{
    fit_closed_form, objective, write_predictions, FitMetadata, FitOptions, RffModel, Solver,
    DEFAULT_DENSE_CAP,
};
pub use sgd::{fit_sgd, Adam, AdamConfig, SgdFit, SgdOptions};
pub use solve::JITTER_SCALE;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::rng::rng_from_seed;
    use crate::sampling::{sample_distinct, FrequencySample, SamplingConfig, Strategy};
    use crate::spectrum::Spectrum;
    use nalgebra::{DMatrix, DVector};
    use rand::Rng;

    fn map_1d(freqs: &[f64]) -> FeatureMap {
        let rows: Vec<Vec<f64>> = freqs.iter().map(|&w| vec![w]).collect();
        FeatureMap::new(FrequencySample::from_rows(1, &rows).unwrap()).unwrap()
    }

    fn planted(map: &FeatureMap, m: usize, seed: u64, noise: f64) -> (Dataset, DVector<f64>) {
        let mut rng = rng_from_seed(seed);
        let d = map.dims();
        let x = DMatrix::from_fn(m, d, |_, _| rng.random_range(0.0..2.0 * std::f64::consts::PI));
        let w = DVector::from_fn(map.feature_dim(), |_, _| rng.random_range(-1.0..1.0));
        let mut y = map.feature_matrix(&x).unwrap() * &w;
        for v in y.iter_mut() {
            *v += noise * rng.random_range(-1.0..1.0);
        }
        (Dataset::new(x, y).unwrap(), w)
    }

    #[test]
    fn planted_weights_recovered() {
        let map = map_1d(&[1.0, 2.0, 3.0, 4.0, 5.0]);
        let (data, w) = planted(&map, 40, 1, 0.0);
        for solver in [Solver::Auto, Solver::Primal] {
            let opts = FitOptions { solver, ..Default::default() };
            let model = fit_closed_form(&map, &data, 1e-12, opts).unwrap();
            assert!((&model.weights - &w).amax() < 1e-6);
            assert_eq!(model.meta.solver, "closed-form-primal");
        }
    }

    #[test]
    fn shrinkage_is_monotone() {
        let map = map_1d(&[0.0, 1.0, 2.5]);
        let (data, _) = planted(&map, 30, 2, 0.1);
        let mut last = f64::INFINITY;
        for lambda0 in [1e-6, 1e-3, 1e-1, 1.0, 10.0, 1e3, 1e6] {
            let n = fit_closed_form(&map, &data, lambda0, FitOptions::default())
                .unwrap()
                .weights
                .norm();
            assert!(n <= last);
            last = n;
        }
        assert!(last < 1e-5);
    }

    #[test]
    fn single_point_normal_equations() {
        // φ has unit norm, so (φφᵀ + λI) φ = (1 + λ) φ and w = y φ / (1 + λ)
        let map = map_1d(&[1.0]);
        let x = 0.7f64;
        let data = Dataset::from_rows(&[vec![x]], vec![2.0]).unwrap();
        for solver in [Solver::Primal, Solver::Dual] {
            let opts = FitOptions { solver, ..Default::default() };
            let w = fit_closed_form(&map, &data, 0.5, opts).unwrap().weights;
            assert!((w[0] - 2.0 * x.cos() / 1.5).abs() < 1e-14);
            assert!((w[1] - 2.0 * x.sin() / 1.5).abs() < 1e-14);
        }
    }

    #[test]
    fn unregularized_singular_system() {
        // two identical frequencies make ΦᵀΦ rank deficient
        let map = map_1d(&[1.0, 1.0]);
        let (data, _) = planted(&map, 10, 3, 0.0);
        let opts = FitOptions { solver: Solver::Primal, ..Default::default() };
        assert!(matches!(
            fit_closed_form(&map, &data, 0.0, opts),
            Err(Error::SingularSystem)
        ));
        assert!(fit_closed_form(&map, &data, 1e-8, opts).is_ok());
    }

    #[test]
    fn dense_cap() {
        let map = map_1d(&[1.0, 2.0]);
        let (data, _) = planted(&map, 10, 4, 0.0);
        let opts = FitOptions { solver: Solver::Primal, dense_cap: 3 };
        assert!(matches!(
            fit_closed_form(&map, &data, 1e-3, opts),
            Err(Error::ProblemTooLarge { size: 4, cap: 3 })
        ));
        assert!(fit_closed_form(&map, &data, -1.0, FitOptions::default()).is_err());
    }

    #[test]
    fn primal_matches_dual() {
        let mut rng = rng_from_seed(5);
        let rows: Vec<Vec<f64>> = (0..10)
            .map(|_| vec![rng.random_range(-4.0..4.0), rng.random_range(-4.0..4.0)])
            .collect();
        let map = FeatureMap::new(FrequencySample::from_rows(2, &rows).unwrap()).unwrap();
        let (data, _) = planted(&map, 50, 6, 0.3);
        let lambda0 = 1e-3;
        let primal = fit_closed_form(
            &map,
            &data,
            lambda0,
            FitOptions { solver: Solver::Primal, ..Default::default() },
        )
        .unwrap();
        let dual = fit_krr_dual(map.clone(), &data, lambda0).unwrap();
        let probes = DMatrix::from_fn(20, 2, |_, _| rng.random_range(0.0..6.0));
        let a = primal.predict(&probes).unwrap();
        let b = dual.predict(&probes).unwrap();
        assert!((a - b).amax() < 1e-8);
    }

    #[test]
    fn krr_single_point_and_huge_ridge() {
        let map = map_1d(&[1.0, 3.0]);
        let data = Dataset::from_rows(&[vec![0.4]], vec![3.0]).unwrap();
        let k = fit_krr_dual(map.clone(), &data, 0.25).unwrap();
        assert!((k.alpha[0] - 3.0 / 1.25).abs() < 1e-14);

        let (data, _) = planted(&map, 8, 7, 0.0);
        let lambda0 = 1e9;
        let k = fit_krr_dual(map, &data, lambda0).unwrap();
        let approx = &data.targets / (8.0 * lambda0);
        assert!((&k.alpha - approx).amax() < 1e-6 * data.targets.amax() / (8.0 * lambda0));
    }

    #[test]
    fn exhaustive_sample_equals_exact_kernel() {
        let s = Spectrum::pauli(3, 2);
        let n = s.size().omega_plus_usize().unwrap();
        let cfg = SamplingConfig::new(Strategy::Distinct, n, 0);
        let map = FeatureMap::new(sample_distinct(&s, &cfg).unwrap()).unwrap();
        let exact = ExactKernel::from_spectrum(&s, Weighting::Uniform, 1000).unwrap();
        let mut rng = rng_from_seed(8);
        for _ in 0..50 {
            let x = [rng.random_range(-3.0..3.0), rng.random_range(-3.0..3.0)];
            let y = [rng.random_range(-3.0..3.0), rng.random_range(-3.0..3.0)];
            assert!((map.approx_kernel(&x, &y).unwrap() - exact.eval(&x, &y)).abs() < 1e-12);
        }
    }

    #[test]
    fn redundancy_weighted_kernel() {
        let k = ExactKernel::from_spectrum(&Spectrum::pauli(1, 1), Weighting::Redundancy, 10).unwrap();
        for d in [0.0, 0.3, 2.0] {
            assert!((k.eval(&[d], &[0.0]) - (0.5 + 0.5 * f64::cos(d))).abs() < 1e-15);
        }
        let k = ExactKernel::from_spectrum(&Spectrum::pauli(200, 1), Weighting::Redundancy, 1000).unwrap();
        assert!((k.eval(&[0.0], &[0.0]) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn sgd_tracks_closed_form() {
        let map = map_1d(&[1.0, 2.0, 3.0, 4.0]);
        let (data, _) = planted(&map, 200, 9, 0.2);
        let lambda0 = 1e-4;
        let closed = fit_closed_form(&map, &data, lambda0, FitOptions::default()).unwrap();
        let closed_mse = data.mse(&closed.predict(&data.inputs).unwrap());
        let fit = fit_sgd(&map, &data, lambda0, SgdOptions::default()).unwrap();
        let sgd_mse = data.mse(&fit.model.predict(&data.inputs).unwrap());
        assert!(closed_mse > 0.0);
        assert!(sgd_mse < 10.0 * closed_mse, "{sgd_mse} vs {closed_mse}");
        assert_eq!(fit.losses.len(), 500);
        let again = fit_sgd(&map, &data, lambda0, SgdOptions::default()).unwrap();
        assert_eq!(fit.model.weights, again.model.weights);
    }

    #[test]
    fn sgd_trivial_cases() {
        let map = map_1d(&[1.0, 2.0]);
        let (mut data, _) = planted(&map, 20, 10, 0.0);
        let frozen = SgdOptions {
            adam: AdamConfig { learning_rate: 0.0, ..Default::default() },
            epochs: 5,
            ..Default::default()
        };
        let fit = fit_sgd(&map, &data, 0.0, frozen).unwrap();
        assert!(fit.model.weights.iter().all(|&w| w == 0.0));
        assert!(fit.losses.windows(2).all(|w| w[0] == w[1]));

        data.targets.fill(0.0);
        let fit = fit_sgd(&map, &data, 0.0, SgdOptions { epochs: 20, ..Default::default() }).unwrap();
        assert!(fit.model.weights.iter().all(|&w| w == 0.0));
    }

    #[test]
    fn model_json_round_trip() {
        let map = map_1d(&[0.0, 1.5]);
        let (data, _) = planted(&map, 12, 11, 0.0);
        let model = fit_closed_form(&map, &data, 1e-3, FitOptions::default()).unwrap();
        let back = RffModel::from_json(&model.to_json().unwrap()).unwrap();
        assert_eq!(back, model);
    }

    #[test]
    fn predictions_csv() {
        let x = DMatrix::from_row_slice(2, 2, &[0.0, 1.0, 2.0, 3.5]);
        let y = DVector::from_vec(vec![0.25, -1.0]);
        let mut buf = Vec::new();
        write_predictions(&x, &y, &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "x1,x2,y_pred\n0,1,0.25\n2,3.5,-1\n");
    }
}
