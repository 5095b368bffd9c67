//! Draws EMS and EVS datasets and compares their radial statistics.

use ecfim::linalg::HermitianFactor;
use ecfim::stats::McEstimate;
use ecfim::{builtin, sample_dataset, DensityGenerator, EcKind, QuadratureConfig, RngStream};
use nalgebra::DMatrix;

fn main() -> ecfim::error::Result<()> {
    let cfg = QuadratureConfig::default();
    let (m, t) = (4, 6);
    let model = builtin("ar1-scatter", m, t)?;
    let theta = model.params(&[0.7, 2.0])?;
    let eval = model.evaluate(&theta)?;
    let factor = HermitianFactor::new(&eval.scatter)?;
    let g = DensityGenerator::student(3.0)?;

    let first = sample_dataset(&model, &theta, &g, EcKind::EMS, RngStream::new(7, 0), &cfg)?;
    println!(
        "one EMS draw (seed {}, stream {}):{}",
        first.seed, first.stream_index, first.snapshots
    );

    for kind in [EcKind::EMS, EcKind::EVS] {
        // per-dataset spread of the snapshot quadratic forms
        let mut spreads = Vec::new();
        let mut etas = Vec::new();
        for i in 0..20_000 {
            let x = sample_dataset(&model, &theta, &g, kind, RngStream::new(7, i), &cfg)?;
            let eta: Vec<f64> = (0..t)
                .map(|c| {
                    let r = DMatrix::from_column_slice(m, 1, x.snapshots.column(c).as_slice());
                    (r.adjoint() * factor.solve(&r))[(0, 0)].re
                })
                .collect();
            let max = eta.iter().cloned().fold(f64::MIN, f64::max);
            let min = eta.iter().cloned().fold(f64::MAX, f64::min);
            spreads.push(max / min);
            etas.extend(eta);
        }
        let eta = McEstimate::from_samples(&etas);
        let spread = McEstimate::from_samples(&spreads.iter().map(|s| s.ln()).collect::<Vec<_>>());
        println!(
            "{kind:?}: E[η_t] = {:.3} ± {:.3} (theory {}), mean log(max η / min η) = {:.3}",
            eta.mean,
            eta.stderr,
            m as f64 * 3.0 / 2.0,
            spread.mean
        );
    }
    Ok(())
}
