//! A density generator known only on a grid, e.g. fitted to measured clutter.
//!
//! Here `g(t) = exp(-sqrt(1 + t))`, a heavier-than-Gaussian K-like tail.

use ecfim::sampling::ModularSampler;
use ecfim::stats::McEstimate;
use ecfim::{builtin, fim_ems, fim_gaussian_sb, DensityGenerator, QuadratureConfig, RngStream};

fn main() -> ecfim::error::Result<()> {
    let cfg = QuadratureConfig::default();
    let grid: Vec<f64> = (0..=8000).map(|i| (i as f64 * 0.05).powi(2)).collect();
    let g = DensityGenerator::tabulate(grid, |t| -(1.0 + t).sqrt())?
        .with_description("exp(-sqrt(1+t))");

    let dim = 4;
    let id = g.first_moment_identity(dim, &cfg)?;
    println!("E[Qφ(Q)] = {:.10} (expected -{dim})", id.value);
    let moments = g.moments(dim, &cfg)?;
    println!(
        "E[Qφ²] = {:.8}, E[Q²φ²] = {:.8}",
        moments.e_q_phi2, moments.e_q2_phi2
    );

    let sampler = ModularSampler::new(&g, dim, &cfg)?;
    let mut rng = RngStream::new(1, 0).rng();
    let draws: Vec<f64> = (0..200_000)
        .map(|_| {
            let q = sampler.sample(&mut rng);
            q * g.phi(q, dim).unwrap().powi(2)
        })
        .collect();
    let est = McEstimate::from_samples(&draws);
    println!("sampled E[Qφ²] = {:.5} ± {:.5}", est.mean, est.stderr);

    let model = builtin("ula-doa", dim, 10)?;
    let eval = model.evaluate(&model.params(&[1.0, 0.3, 0.4, 1.0])?)?;
    let ratio = fim_ems(&eval, &moments)?.entries[(2, 2)] / fim_gaussian_sb(&eval)?.entries[(2, 2)];
    println!("frequency information relative to Gaussian: {ratio:.4}");
    Ok(())
}
