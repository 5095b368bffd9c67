//! A user-defined model: a real-amplitude sinusoid in an isotropic scatter,
//! plugged into the library through `ModelFunction`.

use std::sync::Arc;

use ecfim::error::{Error, Result};
use ecfim::linalg::CMatrix;
use ecfim::models::{DerivativeMode, DEFAULT_FD_STEP};
use ecfim::{
    crb_from_fim, fim_ems, DensityGenerator, ModelFunction, ParametricModel, QuadratureConfig,
};
use num_complex::Complex64;

#[derive(Debug)]
struct Tone {
    m: usize,
    t: usize,
}

impl ModelFunction for Tone {
    fn name(&self) -> &str {
        "tone"
    }

    fn param_names(&self) -> Vec<String> {
        vec!["amplitude".into(), "frequency".into(), "noise".into()]
    }

    fn snapshot_dim(&self) -> usize {
        self.m
    }

    fn snapshot_count(&self) -> usize {
        self.t
    }

    fn check_domain(&self, theta: &[f64]) -> Result<()> {
        if theta[2] > 0.0 {
            Ok(())
        } else {
            Err(Error::ParameterDomain {
                name: "noise".into(),
                value: theta[2],
                reason: "must be positive".into(),
            })
        }
    }

    fn mean_and_scatter(&self, theta: &[f64]) -> (CMatrix, CMatrix) {
        let (a, f, s) = (theta[0], theta[1], theta[2]);
        let means = CMatrix::from_fn(self.m, self.t, |i, t| {
            Complex64::from_polar(a, f * (i + self.m * t) as f64)
        });
        (
            means,
            CMatrix::identity(self.m, self.m) * Complex64::new(s, 0.0),
        )
    }
}

fn main() -> Result<()> {
    let cfg = QuadratureConfig::default();
    // no analytic derivatives, so use central differences
    let model = ParametricModel::new(
        Arc::new(Tone { m: 3, t: 10 }),
        DerivativeMode::FiniteDifference {
            step: DEFAULT_FD_STEP,
        },
    );
    let theta = model.params(&[1.0, 0.2, 0.5])?;
    let eval = model.evaluate(&theta)?;

    for g in [
        DensityGenerator::gaussian(),
        DensityGenerator::student(2.0)?,
    ] {
        let fim = fim_ems(&eval, &g.moments(3, &cfg)?)?;
        let crb = crb_from_fim(&fim)?;
        println!("{}:", g.description());
        for (name, bound) in model.param_names().iter().zip(crb.diagonal()) {
            println!("  CRB[{name}] = {bound:.6e}");
        }
    }
    Ok(())
}
