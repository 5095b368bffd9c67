//! Modular-variate moments for the built-in generator families.
//!
//! Run with `cargo run --example moments`.

use ecfim::{DensityGenerator, MomentMethod, QuadratureConfig};

fn main() -> ecfim::error::Result<()> {
    let cfg = QuadratureConfig::default();
    let generators = [
        DensityGenerator::gaussian(),
        DensityGenerator::student(1.0)?,
        DensityGenerator::student(3.0)?,
        DensityGenerator::student(30.0)?,
    ];
    println!(
        "{:<16} {:>4} {:>14} {:>14} {:>12}",
        "generator", "dim", "E[Qφ²]", "E[Q²φ²]", "quad err"
    );
    for g in &generators {
        for dim in [1, 2, 4, 8] {
            let analytic = g.moments(dim, &cfg)?;
            let quad = g.modular_moments(dim, MomentMethod::Quadrature, &cfg)?;
            println!(
                "{:<16} {:>4} {:>14.8} {:>14.8} {:>12.2e}",
                g.description(),
                dim,
                analytic.e_q_phi2,
                analytic.e_q2_phi2,
                (quad.e_q_phi2 - analytic.e_q_phi2).abs()
            );
        }
    }

    println!();
    for g in &generators {
        let id = g.first_moment_identity(4, &cfg)?;
        println!(
            "{:<16} E[Qφ(Q)] at dim 4 = {:+.12}",
            g.description(),
            id.value
        );
    }
    Ok(())
}
