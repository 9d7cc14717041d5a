//! Statevector simulation of encoding-plus-ansatz circuits, random instance
//! generation, finite-difference training and lattice datasets.

mod circuit;
mod grid;
mod random;
mod train;

pub use circuit::{default_observable, rotation, Block, Circuit, CircuitDescription, Rotation};
pub use grid::{lattice, minimum_points, minimum_points_for, sample_grid_dataset};
pub use random::{random_instance, GeneratorConfig, PoolEntry, Selection};
pub use train::{fd_gradient, mse, train, TrainOptions, TrainReport, DEFAULT_FD_STEP};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::operators::{presets, HamiltonianSpec, Pauli, PauliTerm};
    use crate::rff::Dataset;
    use crate::rng::rng_from_seed;
    use crate::spectrum::{Spectrum, SpectrumOptions};
    use rand::Rng;
    use std::f64::consts::{PI, TAU};

    fn one_qubit(encoding: HamiltonianSpec, ansatz: Vec<Rotation>, params: usize) -> Circuit {
        let mut blocks = vec![Block::Encoding {
            dim: 0,
            hamiltonian: encoding,
            targets: vec![0],
            scaling: 1.0,
        }];
        if !ansatz.is_empty() {
            blocks.push(Block::Ansatz {
                rotations: ansatz,
                cnot_ladder: false,
                repetitions: 1,
            });
        }
        CircuitDescription {
            qubits: 1,
            dims: 1,
            parameters: params,
            blocks,
            observable: None,
        }
        .compile()
        .unwrap()
    }

    #[test]
    fn empty_circuit_measures_one() {
        let c = CircuitDescription {
            qubits: 3,
            dims: 1,
            parameters: 0,
            blocks: vec![],
            observable: None,
        }
        .compile()
        .unwrap();
        assert_eq!(c.evaluate(&[], &[0.4]).unwrap(), 1.0);
        assert!(matches!(c.evaluate(&[], &[0.4, 1.0]), Err(Error::Shape(_))));
    }

    #[test]
    fn one_qubit_analytic() {
        let rz_then_ry = one_qubit(
            presets::pauli_z_half(),
            vec![Rotation { axis: Pauli::Y, qubit: 0, param: 0 }],
            1,
        );
        for (theta, x) in [(0.3, 0.0), (0.3, 2.0), (1.9, -1.0)] {
            let f = rz_then_ry.evaluate(&[theta], &[x]).unwrap();
            assert!((f - f64::cos(theta)).abs() < 1e-12);
        }
        let rx = one_qubit(HamiltonianSpec::single_pauli(Pauli::X, 0.5), vec![], 0);
        for x in [0.0, 0.7, 2.5, -4.0] {
            assert!((rx.evaluate(&[], &[x]).unwrap() - x.cos()).abs() < 1e-12);
        }
    }

    #[test]
    fn rotation_matches_exponential() {
        use crate::operators::{build_matrix, eigendecompose, evolution};
        for axis in Pauli::ALL {
            let eig = eigendecompose(&build_matrix(&HamiltonianSpec::single_pauli(axis, 0.5)).unwrap()).unwrap();
            let diff = rotation(axis, 1.3) - evolution(&eig, 1.3);
            assert!(diff.iter().all(|z| z.norm() < 1e-12));
        }
    }

    #[test]
    fn rejects_bad_descriptions() {
        let mut d = CircuitDescription {
            qubits: 2,
            dims: 1,
            parameters: 2,
            blocks: vec![Block::Ansatz {
                rotations: vec![Rotation { axis: Pauli::X, qubit: 0, param: 0 }],
                cnot_ladder: true,
                repetitions: 1,
            }],
            observable: None,
        };
        assert!(d.validate().is_err()); // parameter 1 unused
        d.parameters = 1;
        assert!(d.validate().is_ok());
        d.blocks.push(Block::Encoding {
            dim: 0,
            hamiltonian: presets::hxyz(),
            targets: vec![0, 1, 2],
            scaling: 1.0,
        });
        assert!(d.validate().is_err());
        let cfg = GeneratorConfig { qubits: 2, ..GeneratorConfig::mixed_hxyz(1, 0) };
        assert!(matches!(random_instance(&cfg), Err(Error::InvalidSpec(_))));
    }

    #[test]
    fn random_instances_are_deterministic_and_bounded() {
        let cfg = GeneratorConfig::mixed_hxyz(1, 42);
        let (a, ta) = random_instance(&cfg).unwrap();
        let (b, tb) = random_instance(&cfg).unwrap();
        assert_eq!((&a, &ta), (&b, &tb));
        assert!(ta.iter().all(|t| (0.0..TAU).contains(t)));
        let c = a.compile().unwrap();
        let mut rng = rng_from_seed(1);
        for _ in 0..20 {
            let f = c.evaluate(&ta, &[rng.random_range(-5.0..5.0)]).unwrap();
            assert!(f.abs() <= 1.0 + 1e-12);
        }
    }

    #[test]
    fn mixed_layout_gates() {
        let (desc, _) = random_instance(&GeneratorConfig::mixed_hxyz(1, 0)).unwrap();
        let layout = desc.encoding_layout().unwrap();
        let gates = layout.gates(0);
        assert_eq!(gates.len(), 5);
        assert_eq!(gates[0].hamiltonian, presets::hxyz());
        let scalings: Vec<f64> = gates[1..].iter().map(|g| g.scaling).collect();
        assert_eq!(scalings, presets::SCALED_PAULI_FACTORS.to_vec());
    }

    #[test]
    fn pauli_instance_spectrum() {
        let (desc, _) = random_instance(&GeneratorConfig::pauli(3, 1, 5)).unwrap();
        let s = Spectrum::build(&desc.encoding_layout().unwrap(), SpectrumOptions::default()).unwrap();
        let want: Vec<f64> = (-3..=3).map(f64::from).collect();
        assert_eq!(s.dimension(0).frequencies(), want.as_slice());
    }

    #[test]
    fn unitarity_after_every_block() {
        for seed in 0..100u64 {
            let mut cfg = GeneratorConfig::new(
                vec![
                    PoolEntry::new(presets::hxyz(), 0.3),
                    PoolEntry::new(presets::pauli_z_half(), 1.0),
                ],
                2,
                2,
                seed,
            );
            cfg.selection = Selection::Random;
            let (desc, theta) = random_instance(&cfg).unwrap();
            let c = desc.compile().unwrap();
            c.run_with(&theta, &[0.3 * seed as f64, -1.1], |s| {
                let norm: f64 = s.iter().map(|a| a.norm_sqr()).sum();
                assert!((norm - 1.0).abs() < 1e-10);
            })
            .unwrap();
        }
    }

    #[test]
    fn pauli_periodicity_and_linearity() {
        let (mut desc, theta) = random_instance(&GeneratorConfig::pauli(3, 2, 3)).unwrap();
        let c = desc.compile().unwrap();
        let x = [0.4, -1.3];
        let f = c.evaluate(&theta, &x).unwrap();
        assert!((c.evaluate(&theta, &[x[0] + TAU, x[1] - TAU]).unwrap() - f).abs() < 1e-10);

        desc.observable = Some(HamiltonianSpec::single_pauli(Pauli::Z, 2.0));
        let doubled = desc.compile().unwrap();
        assert!((doubled.evaluate(&theta, &x).unwrap() - 2.0 * f).abs() < 1e-12);

        let zz = PauliTerm::new(1.0, vec![(0, Pauli::Z), (1, Pauli::Z)]).unwrap();
        desc.observable = Some(HamiltonianSpec::pauli_sum(2, vec![zz]).unwrap());
        let sum_form = desc.compile().unwrap().evaluate(&theta, &x).unwrap();
        let m = crate::operators::build_matrix(desc.observable.as_ref().unwrap()).unwrap();
        desc.observable = Some(HamiltonianSpec::explicit(m).unwrap());
        let dense_form = desc.compile().unwrap().evaluate(&theta, &x).unwrap();
        assert!((sum_form - dense_form).abs() < 1e-12);
    }

    #[test]
    fn self_consistent_training() {
        let mut cfg = GeneratorConfig::pauli(2, 1, 8);
        cfg.qubits = 3;
        let (desc, star) = random_instance(&cfg).unwrap();
        let c = desc.compile().unwrap();
        let data = sample_grid_dataset(&c, &star, &[TAU], &[12], false).unwrap();
        let mut rng = rng_from_seed(9);
        let theta0: Vec<f64> = star.iter().map(|t| t + rng.random_range(-0.01..0.01)).collect();
        let opts = TrainOptions { epochs: 150, ..Default::default() };
        let report = train(&c, &theta0, &data, &opts).unwrap();
        assert!(report.best_loss < 1e-6, "{}", report.best_loss);
        assert!(report.best_loss <= report.losses[0]);
    }

    #[test]
    fn parameterless_training_is_constant() {
        let c = one_qubit(presets::pauli_z_half(), vec![], 0);
        let data = Dataset::from_rows(&[vec![0.1], vec![1.0]], vec![0.5, -0.5]).unwrap();
        let report = train(&c, &[], &data, &TrainOptions { epochs: 5, ..Default::default() }).unwrap();
        assert!(report.theta.is_empty());
        assert!(report.losses.windows(2).all(|w| w[0] == w[1]));
    }

    #[test]
    fn gradient_step_halving() {
        let (desc, theta) = random_instance(&GeneratorConfig::pauli(2, 1, 4)).unwrap();
        let c = desc.compile().unwrap();
        let data = Dataset::from_rows(&[vec![0.3], vec![1.7], vec![2.9]], vec![0.2, -0.4, 0.9]).unwrap();
        let h = DEFAULT_FD_STEP;
        let g1 = fd_gradient(&c, &theta, &data, None, h).unwrap();
        let g2 = fd_gradient(&c, &theta, &data, None, h / 2.0).unwrap();
        let scale = g1.iter().fold(0.0f64, |m, g| m.max(g.abs()));
        for (a, b) in g1.iter().zip(&g2) {
            // Richardson combination differs from either by O(h²)
            let rich = (4.0 * b - a) / 3.0;
            assert!((rich - a).abs() <= 1e-5 * scale, "{a} vs {b}");
        }
    }

    #[test]
    fn grid_datasets() {
        let (desc, theta) = random_instance(&GeneratorConfig::pauli(5, 1, 0)).unwrap();
        let c = desc.compile().unwrap();
        assert_eq!(minimum_points(&c, &[TAU]).unwrap(), vec![11]);
        assert!(matches!(
            sample_grid_dataset(&c, &theta, &[TAU], &[10], false),
            Err(Error::ShannonViolation { required: 11, got: 10 })
        ));
        assert_eq!(sample_grid_dataset(&c, &theta, &[TAU], &[10], true).unwrap().len(), 10);

        let constant = CircuitDescription {
            qubits: 2,
            dims: 1,
            parameters: 1,
            blocks: vec![Block::Ansatz {
                rotations: vec![Rotation { axis: Pauli::Y, qubit: 0, param: 0 }],
                cnot_ladder: false,
                repetitions: 2,
            }],
            observable: None,
        }
        .compile()
        .unwrap();
        let d = sample_grid_dataset(&constant, &[0.8], &[PI], &[7], false).unwrap();
        assert!(d.targets.iter().all(|&y| (y - d.targets[0]).abs() < 1e-15));
        assert!((d.targets[0] - f64::cos(1.6)).abs() < 1e-12);

        let x = lattice(&[1.0, 2.0], &[10, 10]).unwrap();
        assert_eq!(x.nrows(), 100);
        assert_eq!((x[(1, 0)], x[(1, 1)]), (0.0, 0.2));
        assert_eq!((x[(10, 0)], x[(10, 1)]), (0.1, 0.0));
    }

    #[test]
    fn description_json_round_trip() {
        let (desc, _) = random_instance(&GeneratorConfig::mixed_hxyz(2, 1)).unwrap();
        let json = serde_json::to_string(&desc).unwrap();
        let back: CircuitDescription = serde_json::from_str(&json).unwrap();
        assert_eq!(back, desc);
    }
}
