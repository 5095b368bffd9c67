//! Checks the closed-form FIM against the average outer product of simulated
//! scores, in parallel and reproducibly.

use std::time::Instant;

use ecfim::{builtin, empirical_fim, DensityGenerator, EcKind, QuadratureConfig};

fn main() -> ecfim::error::Result<()> {
    let cfg = QuadratureConfig::default();
    let model = builtin("ula-doa", 4, 8)?;
    let theta = model.params(&[1.0, 0.3, 0.4, 1.0])?;
    let g = DensityGenerator::student(3.0)?;

    for kind in [EcKind::EMS, EcKind::EVS] {
        let start = Instant::now();
        let report = empirical_fim(&model, &theta, &g, kind, 50_000, 42, &cfg)?;
        println!("{kind:?} ({:.1}s)", start.elapsed().as_secs_f64());
        println!("  analytic:{}", report.analytic.entries);
        println!("  empirical:{}", report.empirical.entries);
        println!(
            "  max rel err {:.3e}, max entry z {:.2}, max score z {:.2}, passed {}",
            report.max_rel_err,
            report.max_entry_z,
            report.max_score_z,
            report.passed()
        );
        if !report.inconclusive.is_empty() {
            println!("  inconclusive entries: {:?}", report.inconclusive);
        }
    }
    Ok(())
}
