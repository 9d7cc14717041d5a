//! Build a small circuit from JSON, evaluate it on a Shannon-sized lattice and
//! train its parameters towards a cosine.
//!
//! cargo run --release --example simulate_vqc

use vqc_rff::rff::Dataset;
use vqc_rff::sim::{lattice, minimum_points, train, CircuitDescription, TrainOptions};

const CIRCUIT: &str = r#"{
  "qubits": 2,
  "dims": 1,
  "parameters": 4,
  "blocks": [
    {"type": "ansatz", "rotations": [{"axis": "Y", "qubit": 0, "param": 0}, {"axis": "Y", "qubit": 1, "param": 1}], "cnot_ladder": true},
    {"type": "encoding", "dim": 0, "hamiltonian": {"qubits": 1, "pauli_terms": [{"coeff": 0.5, "ops": [[0, "Z"]]}]}, "targets": [0]},
    {"type": "encoding", "dim": 0, "hamiltonian": {"qubits": 1, "pauli_terms": [{"coeff": 0.5, "ops": [[0, "Z"]]}]}, "targets": [1]},
    {"type": "ansatz", "rotations": [{"axis": "Y", "qubit": 0, "param": 2}, {"axis": "X", "qubit": 1, "param": 3}], "cnot_ladder": true}
  ]
}"#;

fn main() -> vqc_rff::Result<()> {
    let desc: CircuitDescription = serde_json::from_str(CIRCUIT)?;
    let circuit = desc.compile()?;
    let x_max = [std::f64::consts::TAU];
    let points = minimum_points(&circuit, &x_max)?;
    println!("shannon minimum: {points:?} points");
    let inputs = lattice(&x_max, &[4 * points[0]])?;
    let targets: Vec<f64> = inputs.column(0).iter().map(|x| 0.5 * (2.0 * x).cos()).collect();
    let data = Dataset::new(inputs, targets.into())?;
    let opts = TrainOptions {
        epochs: 150,
        adam: vqc_rff::rff::AdamConfig {
            learning_rate: 0.05,
            ..Default::default()
        },
        ..Default::default()
    };
    let report = train(&circuit, &[0.1, 0.2, 0.3, 0.4], &data, &opts)?;
    println!("mse: start {:.4}, best {:.2e}", report.losses[0], report.best_loss);
    println!("theta: {:.3?}", report.theta);
    Ok(())
}
