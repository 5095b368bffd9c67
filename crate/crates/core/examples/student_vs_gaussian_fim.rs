//! How heavy tails change the Fisher information of a scatter-only model.

use ecfim::{builtin, fim_ems, fim_evs, fim_gaussian_sb, DensityGenerator, QuadratureConfig};

fn main() -> ecfim::error::Result<()> {
    let cfg = QuadratureConfig::default();
    let (m, t) = (3, 8);
    let model = builtin("ar1-scatter", m, t)?;
    let theta = model.params(&[0.6, 1.0])?;
    let eval = model.evaluate(&theta)?;

    let gauss = fim_gaussian_sb(&eval)?;
    println!("Gaussian FIM:{}", gauss.entries);

    for dof in [0.5, 1.0, 3.0, 10.0, 100.0] {
        let g = DensityGenerator::student(dof)?;
        let ems = fim_ems(&eval, &g.moments(m, &cfg)?)?;
        let evs = fim_evs(&eval, &g.moments(m * t, &cfg)?)?;
        let ratio =
            |f: &ecfim::FimMatrix, j: usize, k: usize| f.entries[(j, k)] / gauss.entries[(j, k)];
        println!(
            "d = {dof:>5}: EMS/Gauss ratios (rho,rho) {:.4} (rho,var) {:.4} (var,var) {:.4} | EVS (var,var) {:.4}",
            ratio(&ems, 0, 0),
            ratio(&ems, 0, 1),
            ratio(&ems, 1, 1),
            ratio(&evs, 1, 1),
        );
    }
    Ok(())
}
