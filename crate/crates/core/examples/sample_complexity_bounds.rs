//! How the closed-form sample bounds scale with L, d, ε and λ₀.
//!
//! cargo run --example sample_complexity_bounds

use vqc_rff::analysis::{bound_rff_kernel_probability, bound_samples_grid, bound_samples_pauli, BoundInputs};
use vqc_rff::spectrum::pauli_sigma_p;

fn main() -> vqc_rff::Result<()> {
    let base = BoundInputs {
        d: 1,
        gates_per_dim: Some(1),
        lambda0: 1e-6,
        epsilon: 0.05,
        delta: 0.01,
        sigma_y: 1.0,
        diameter: 1.0,
        ..Default::default()
    };
    for (l, d) in [(1, 1), (5, 2), (10, 4), (200, 16)] {
        let inputs = BoundInputs {
            d,
            gates_per_dim: Some(l),
            diameter: (d as f64).sqrt(),
            ..base.clone()
        };
        println!("pauli L={l:<3} d={d:<2} D ≥ {:.3e}", bound_samples_pauli(&inputs)?);
    }
    for lambda0 in [1e-1, 1e-2, 1e-4, 1e-6] {
        let inputs = BoundInputs {
            d: 3,
            gates_per_dim: Some(9),
            lambda0,
            epsilon: 0.5,
            ..base.clone()
        };
        println!("λ₀={lambda0:<6} ε=0.5 D ≥ {:.3e}", bound_samples_pauli(&inputs)?);
    }
    let grid = BoundInputs {
        d: 2,
        omega_max: Some(10.0),
        step: Some(0.01),
        lambda0: 0.1,
        epsilon: 0.1,
        f_inf: Some(1.0),
        ..base.clone()
    };
    println!("grid s=0.01 D ≥ {:.3e}", bound_samples_grid(&grid)?);
    let sigma = pauli_sigma_p(5, 2);
    for samples in [1e2, 1e4, 1e6] {
        println!(
            "kernel failure probability at D={samples:e}: {:.3e}",
            bound_rff_kernel_probability(sigma, 2f64.sqrt(), 0.1, 2, samples)
        );
    }
    Ok(())
}
