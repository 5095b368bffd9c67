//! Cramér-Rao bound on the direction-of-arrival frequency of a uniform
//! linear array, as a function of snapshot count and tail heaviness.

use ecfim::{builtin, crb_from_fim, fim_ems, fim_gaussian_sb, DensityGenerator, QuadratureConfig};

fn main() -> ecfim::error::Result<()> {
    let cfg = QuadratureConfig::default();
    let m = 8;
    let theta = [1.0, 0.3, 0.4, 1.0];

    println!(
        "{:>4} {:>14} {:>14} {:>14}",
        "T", "Gaussian", "Student d=3", "Student d=1"
    );
    for t in [1, 2, 5, 10, 20, 50] {
        let model = builtin("ula-doa", m, t)?;
        let eval = model.evaluate(&model.params(&theta)?)?;
        let mut row = vec![crb_from_fim(&fim_gaussian_sb(&eval)?)?.diagonal()[2]];
        for dof in [3.0, 1.0] {
            let moments = DensityGenerator::student(dof)?.moments(m, &cfg)?;
            row.push(crb_from_fim(&fim_ems(&eval, &moments)?)?.diagonal()[2]);
        }
        println!(
            "{t:>4} {:>14.6e} {:>14.6e} {:>14.6e}",
            row[0], row[1], row[2]
        );
    }
    Ok(())
}
