//! Primal and dual ridge solutions agree; the RFF dual matches kernel ridge
//! with the feature-map kernel.
//!
//! cargo run --example ridge_primal_dual

use vqc_rff::rff::{fit_closed_form, fit_krr_dual, Dataset, FeatureMap, FitOptions, Solver};
use vqc_rff::sampling::{sample_distinct, SamplingConfig, Strategy};
use vqc_rff::spectrum::Spectrum;

fn main() -> vqc_rff::Result<()> {
    let rows: Vec<Vec<f64>> = (0..80).map(|i| vec![i as f64 * 0.079]).collect();
    let y: Vec<f64> = rows.iter().map(|x| (3.0 * x[0]).sin() + 0.2 * x[0]).collect();
    let data = Dataset::from_rows(&rows, y)?;
    let spectrum = Spectrum::pauli(10, 1);
    let map = FeatureMap::new(sample_distinct(&spectrum, &SamplingConfig::new(Strategy::Distinct, 6, 1))?)?;
    let lambda0 = 1e-3;
    let fit = |solver| {
        fit_closed_form(
            &map,
            &data,
            lambda0,
            FitOptions {
                solver,
                ..Default::default()
            },
        )
    };
    let primal = fit(Solver::Primal)?;
    let dual = fit(Solver::Dual)?;
    let krr = fit_krr_dual(map.clone(), &data, lambda0)?;
    let (a, b, c) = (
        primal.predict(&data.inputs)?,
        dual.predict(&data.inputs)?,
        krr.predict(&data.inputs)?,
    );
    println!("train mse (primal) = {:.6}", data.mse(&a));
    println!("max |primal - dual| = {:.2e}", (&a - &b).amax());
    println!("max |primal - krr|  = {:.2e}", (&a - &c).amax());
    Ok(())
}
