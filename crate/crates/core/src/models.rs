//! Parametric models `θ ↦ ({μ_t(θ)}, Σ(θ))` and their first derivatives.
//!
//! A model is any [`ModelFunction`]; derivatives come either from the model's
//! own closed form or from central finite differences. Three models ship with
//! the crate and are reachable by name through [`builtin`].

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{hermitian_part, max_asymmetry, CMatrix, HermitianFactor};

/// Default relative step for central finite differences.
pub const DEFAULT_FD_STEP: f64 = 1e-6;
/// Largest tolerated asymmetry of a model's scatter matrix before symmetrization.
pub const HERMITIAN_TOL: f64 = 1e-12;

/// Real parameter vector with one label per entry.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParamVector {
    values: Vec<f64>,
    names: Vec<String>,
}

impl ParamVector {
    pub fn new(values: Vec<f64>, names: Vec<String>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Contract("parameter vector must not be empty".into()));
        }
        if values.len() != names.len() {
            return Err(Error::Contract(format!(
                "{} parameter values but {} names",
                values.len(),
                names.len()
            )));
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::ParameterDomain {
                name: names[i].clone(),
                value: values[i],
                reason: "must be finite".into(),
            });
        }
        Ok(Self { values, names })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// A model evaluated at one parameter point.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelEval {
    /// `M × T`, column `t` is `μ_t`.
    pub means: CMatrix,
    /// `M × M` Hermitian positive-definite scatter `Σ`.
    pub scatter: CMatrix,
    /// `∂μ_t/∂θ_j` stacked as `M × T`, one entry per parameter.
    pub mean_jacobians: Vec<CMatrix>,
    /// `Σ_j = ∂Σ/∂θ_j`, one entry per parameter.
    pub scatter_derivs: Vec<CMatrix>,
}

impl ModelEval {
    pub fn dim(&self) -> usize {
        self.scatter.nrows()
    }

    pub fn snapshots(&self) -> usize {
        self.means.ncols()
    }

    pub fn n_params(&self) -> usize {
        self.mean_jacobians.len()
    }

    /// Symmetrizes `Σ` and every `Σ_j`, then checks shapes and definiteness.
    pub fn finalize(mut self) -> Result<Self> {
        let (m, t) = (self.means.nrows(), self.means.ncols());
        if self.scatter.shape() != (m, m) {
            return Err(Error::Contract(format!(
                "scatter is {:?}, expected {m}x{m}",
                self.scatter.shape()
            )));
        }
        if self.mean_jacobians.len() != self.scatter_derivs.len() || self.mean_jacobians.is_empty()
        {
            return Err(Error::Contract(
                "derivative blocks must cover every parameter".into(),
            ));
        }
        if self.mean_jacobians.iter().any(|d| d.shape() != (m, t))
            || self.scatter_derivs.iter().any(|d| d.shape() != (m, m))
        {
            return Err(Error::Contract(
                "derivative block has the wrong shape".into(),
            ));
        }
        let asym = max_asymmetry(&self.scatter);
        let scale = self.scatter.iter().map(|z| z.norm()).fold(1.0, f64::max);
        if asym > HERMITIAN_TOL * scale {
            return Err(Error::NotHermitian {
                max_asymmetry: asym,
            });
        }
        self.scatter = hermitian_part(&self.scatter);
        for d in &mut self.scatter_derivs {
            *d = hermitian_part(d);
        }
        HermitianFactor::new(&self.scatter)?;
        Ok(self)
    }
}

/// A parametric mean/scatter model.
pub trait ModelFunction: Send + Sync + fmt::Debug {
    fn name(&self) -> &str;
    fn param_names(&self) -> Vec<String>;
    /// Snapshot dimension `M`.
    fn snapshot_dim(&self) -> usize;
    /// Number of snapshots `T`.
    fn snapshot_count(&self) -> usize;
    /// Rejects parameter values outside the model's domain.
    fn check_domain(&self, theta: &[f64]) -> Result<()>;
    /// Means (`M × T`) and scatter (`M × M`) at `theta`.
    fn mean_and_scatter(&self, theta: &[f64]) -> (CMatrix, CMatrix);
    /// Closed-form `(∂μ/∂θ_j, ∂Σ/∂θ_j)` if the model provides them.
    fn analytic_derivatives(&self, _theta: &[f64]) -> Option<(Vec<CMatrix>, Vec<CMatrix>)> {
        None
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum DerivativeMode {
    Analytic,
    FiniteDifference { step: f64 },
}

#[derive(Debug, Clone)]
pub struct ParametricModel {
    function: Arc<dyn ModelFunction>,
    derivative_mode: DerivativeMode,
}

impl ParametricModel {
    pub fn new(function: Arc<dyn ModelFunction>, derivative_mode: DerivativeMode) -> Self {
        Self {
            function,
            derivative_mode,
        }
    }

    pub fn with_derivative_mode(mut self, mode: DerivativeMode) -> Self {
        self.derivative_mode = mode;
        self
    }

    pub fn name(&self) -> &str {
        self.function.name()
    }

    pub fn param_names(&self) -> Vec<String> {
        self.function.param_names()
    }

    pub fn n_params(&self) -> usize {
        self.function.param_names().len()
    }

    pub fn snapshot_dim(&self) -> usize {
        self.function.snapshot_dim()
    }

    pub fn snapshot_count(&self) -> usize {
        self.function.snapshot_count()
    }

    pub fn derivative_mode(&self) -> DerivativeMode {
        self.derivative_mode
    }

    /// Labels `values` with this model's parameter names.
    pub fn params(&self, values: &[f64]) -> Result<ParamVector> {
        let names = self.param_names();
        if values.len() != names.len() {
            return Err(Error::Contract(format!(
                "model `{}` takes {} parameters, got {}",
                self.name(),
                names.len(),
                values.len()
            )));
        }
        ParamVector::new(values.to_vec(), names)
    }

    fn check(&self, theta: &ParamVector) -> Result<()> {
        if theta.len() != self.n_params() {
            return Err(Error::Contract(format!(
                "model `{}` takes {} parameters, got {}",
                self.name(),
                self.n_params(),
                theta.len()
            )));
        }
        self.function.check_domain(theta.values())
    }

    /// Means, scatter and all derivative blocks at `theta`.
    pub fn evaluate(&self, theta: &ParamVector) -> Result<ModelEval> {
        match self.derivative_mode {
            DerivativeMode::FiniteDifference { step } => self.finite_diff_eval(theta, step),
            DerivativeMode::Analytic => {
                self.check(theta)?;
                let (means, scatter) = self.function.mean_and_scatter(theta.values());
                let (mean_jacobians, scatter_derivs) = self
                    .function
                    .analytic_derivatives(theta.values())
                    .ok_or_else(|| {
                        Error::Contract(format!(
                            "model `{}` has no analytic derivatives",
                            self.name()
                        ))
                    })?;
                ModelEval {
                    means,
                    scatter,
                    mean_jacobians,
                    scatter_derivs,
                }
                .finalize()
            }
        }
    }

    /// Central differences with `h_j = step · max(1, |θ_j|)`.
    pub fn finite_diff_eval(&self, theta: &ParamVector, step: f64) -> Result<ModelEval> {
        if !(step.is_finite() && step > 0.0) {
            return Err(Error::Domain(format!(
                "finite-difference step must be positive, got {step}"
            )));
        }
        self.check(theta)?;
        let base = theta.values();
        let (means, scatter) = self.function.mean_and_scatter(base);
        let mut mean_jacobians = Vec::with_capacity(base.len());
        let mut scatter_derivs = Vec::with_capacity(base.len());
        for j in 0..base.len() {
            let h = step * base[j].abs().max(1.0);
            let mut plus = base.to_vec();
            let mut minus = base.to_vec();
            plus[j] += h;
            minus[j] -= h;
            if self.function.check_domain(&plus).is_err()
                || self.function.check_domain(&minus).is_err()
            {
                return Err(Error::StepBoundary {
                    name: theta.names()[j].clone(),
                });
            }
            let (mu_p, s_p) = self.function.mean_and_scatter(&plus);
            let (mu_m, s_m) = self.function.mean_and_scatter(&minus);
            // Divide by the step actually taken.
            let width = Complex64::new(1.0 / (plus[j] - minus[j]), 0.0);
            mean_jacobians.push((mu_p - mu_m) * width);
            scatter_derivs.push((s_p - s_m) * width);
        }
        ModelEval {
            means,
            scatter,
            mean_jacobians,
            scatter_derivs,
        }
        .finalize()
    }
}

/// Names of the built-in models.
pub const BUILTIN_MODELS: [&str; 3] = ["ula-doa", "ar1-scatter", "scalar-mean"];

/// A built-in model with analytic derivatives.
pub fn builtin(name: &str, m: usize, t: usize) -> Result<ParametricModel> {
    if m == 0 || t == 0 {
        return Err(Error::Contract(format!(
            "M and T must be positive, got M={m}, T={t}"
        )));
    }
    let function: Arc<dyn ModelFunction> = match name {
        "ula-doa" => Arc::new(UlaDoa { m, t }),
        "ar1-scatter" => Arc::new(Ar1Scatter { m, t }),
        "scalar-mean" => {
            if m != 1 {
                return Err(Error::Contract(format!(
                    "scalar-mean requires M = 1, got {m}"
                )));
            }
            Arc::new(ScalarMean { t })
        }
        other => return Err(Error::UnknownModel(other.to_string())),
    };
    Ok(ParametricModel::new(function, DerivativeMode::Analytic))
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn positive(name: &str, value: f64) -> Result<()> {
    if value > 0.0 {
        Ok(())
    } else {
        Err(Error::ParameterDomain {
            name: name.into(),
            value,
            reason: "must be positive".into(),
        })
    }
}

/// Deterministic complex amplitude on a uniform linear array in white noise:
/// `μ_t = A e^{iψ} a(ω)`, `a(ω)_m = e^{iωm}`, `Σ = σ² I`, `θ = (A, ψ, ω, σ²)`.
#[derive(Debug, Clone, Copy)]
pub struct UlaDoa {
    pub m: usize,
    pub t: usize,
}

impl UlaDoa {
    fn steering(&self, omega: f64) -> Vec<Complex64> {
        (0..self.m)
            .map(|k| Complex64::from_polar(1.0, omega * k as f64))
            .collect()
    }

    fn broadcast(&self, column: &[Complex64]) -> CMatrix {
        CMatrix::from_fn(self.m, self.t, |r, _| column[r])
    }
}

impl ModelFunction for UlaDoa {
    fn name(&self) -> &str {
        "ula-doa"
    }

    fn param_names(&self) -> Vec<String> {
        ["amplitude", "phase", "omega", "noise_power"]
            .map(String::from)
            .to_vec()
    }

    fn snapshot_dim(&self) -> usize {
        self.m
    }

    fn snapshot_count(&self) -> usize {
        self.t
    }

    fn check_domain(&self, theta: &[f64]) -> Result<()> {
        if theta.len() != 4 {
            return Err(Error::Contract(format!(
                "ula-doa takes 4 parameters, got {}",
                theta.len()
            )));
        }
        positive("noise_power", theta[3])
    }

    fn mean_and_scatter(&self, theta: &[f64]) -> (CMatrix, CMatrix) {
        let gain = Complex64::from_polar(theta[0], theta[1]);
        let mu: Vec<Complex64> = self
            .steering(theta[2])
            .into_iter()
            .map(|a| gain * a)
            .collect();
        let scatter = CMatrix::identity(self.m, self.m) * c(theta[3], 0.0);
        (self.broadcast(&mu), scatter)
    }

    fn analytic_derivatives(&self, theta: &[f64]) -> Option<(Vec<CMatrix>, Vec<CMatrix>)> {
        let (amp, phase, omega) = (theta[0], theta[1], theta[2]);
        let unit = Complex64::from_polar(1.0, phase);
        let a = self.steering(omega);
        let d_amp: Vec<Complex64> = a.iter().map(|x| unit * x).collect();
        let d_phase: Vec<Complex64> = a.iter().map(|x| c(0.0, 1.0) * amp * unit * x).collect();
        let d_omega: Vec<Complex64> = a
            .iter()
            .enumerate()
            .map(|(k, x)| c(0.0, k as f64) * amp * unit * x)
            .collect();
        let zero_mean = CMatrix::zeros(self.m, self.t);
        let zero_scatter = CMatrix::zeros(self.m, self.m);
        Some((
            vec![
                self.broadcast(&d_amp),
                self.broadcast(&d_phase),
                self.broadcast(&d_omega),
                zero_mean,
            ],
            vec![
                zero_scatter.clone(),
                zero_scatter.clone(),
                zero_scatter,
                CMatrix::identity(self.m, self.m),
            ],
        ))
    }
}

/// Zero-mean data with AR(1) Toeplitz scatter `Σ_mn = σ² ρ^|m-n|`, `θ = (ρ, σ²)`.
#[derive(Debug, Clone, Copy)]
pub struct Ar1Scatter {
    pub m: usize,
    pub t: usize,
}

impl ModelFunction for Ar1Scatter {
    fn name(&self) -> &str {
        "ar1-scatter"
    }

    fn param_names(&self) -> Vec<String> {
        vec!["rho".into(), "variance".into()]
    }

    fn snapshot_dim(&self) -> usize {
        self.m
    }

    fn snapshot_count(&self) -> usize {
        self.t
    }

    fn check_domain(&self, theta: &[f64]) -> Result<()> {
        if theta.len() != 2 {
            return Err(Error::Contract(format!(
                "ar1-scatter takes 2 parameters, got {}",
                theta.len()
            )));
        }
        if !(theta[0].abs() < 1.0) {
            return Err(Error::ParameterDomain {
                name: "rho".into(),
                value: theta[0],
                reason: "must satisfy |rho| < 1".into(),
            });
        }
        positive("variance", theta[1])
    }

    fn mean_and_scatter(&self, theta: &[f64]) -> (CMatrix, CMatrix) {
        let (rho, var) = (theta[0], theta[1]);
        let scatter = CMatrix::from_fn(self.m, self.m, |r, s| {
            c(var * rho.powi(r.abs_diff(s) as i32), 0.0)
        });
        (CMatrix::zeros(self.m, self.t), scatter)
    }

    fn analytic_derivatives(&self, theta: &[f64]) -> Option<(Vec<CMatrix>, Vec<CMatrix>)> {
        let (rho, var) = (theta[0], theta[1]);
        let d_rho = CMatrix::from_fn(self.m, self.m, |r, s| {
            let lag = r.abs_diff(s) as i32;
            if lag == 0 {
                c(0.0, 0.0)
            } else {
                c(var * lag as f64 * rho.powi(lag - 1), 0.0)
            }
        });
        let d_var = CMatrix::from_fn(self.m, self.m, |r, s| {
            c(rho.powi(r.abs_diff(s) as i32), 0.0)
        });
        let zero = CMatrix::zeros(self.m, self.t);
        Some((vec![zero.clone(), zero], vec![d_rho, d_var]))
    }
}

/// Scalar real mean in unit-scatter noise: `M = 1`, `μ_t = θ`, `Σ = 1`.
#[derive(Debug, Clone, Copy)]
pub struct ScalarMean {
    pub t: usize,
}

impl ModelFunction for ScalarMean {
    fn name(&self) -> &str {
        "scalar-mean"
    }

    fn param_names(&self) -> Vec<String> {
        vec!["mean".into()]
    }

    fn snapshot_dim(&self) -> usize {
        1
    }

    fn snapshot_count(&self) -> usize {
        self.t
    }

    fn check_domain(&self, theta: &[f64]) -> Result<()> {
        if theta.len() != 1 {
            return Err(Error::Contract(format!(
                "scalar-mean takes 1 parameter, got {}",
                theta.len()
            )));
        }
        Ok(())
    }

    fn mean_and_scatter(&self, theta: &[f64]) -> (CMatrix, CMatrix) {
        (
            CMatrix::from_element(1, self.t, c(theta[0], 0.0)),
            CMatrix::identity(1, 1),
        )
    }

    fn analytic_derivatives(&self, _theta: &[f64]) -> Option<(Vec<CMatrix>, Vec<CMatrix>)> {
        Some((
            vec![CMatrix::from_element(1, self.t, c(1.0, 0.0))],
            vec![CMatrix::zeros(1, 1)],
        ))
    }
}

/// Parameter point used by examples and the CLI when none is given.
pub fn default_theta(name: &str) -> Option<Vec<f64>> {
    match name {
        "ula-doa" => Some(vec![1.0, 0.3, 0.25 * PI, 1.0]),
        "ar1-scatter" => Some(vec![0.5, 1.0]),
        "scalar-mean" => Some(vec![0.0]),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel_frob(a: &CMatrix, b: &CMatrix) -> f64 {
        let scale = b.norm().max(1e-300);
        (a - b).norm() / scale
    }

    #[test]
    fn ula_at_zero_frequency() {
        let model = builtin("ula-doa", 4, 2).unwrap();
        let e = model
            .evaluate(&model.params(&[1.0, 0.0, 0.0, 1.0]).unwrap())
            .unwrap();
        assert!(e.means.iter().all(|z| (*z - c(1.0, 0.0)).norm() < 1e-15));
        assert_eq!(e.scatter, CMatrix::identity(4, 4));
        assert_eq!(e.scatter_derivs[3], CMatrix::identity(4, 4));
    }

    #[test]
    fn ula_quarter_turn() {
        let model = builtin("ula-doa", 2, 1).unwrap();
        let e = model
            .evaluate(&model.params(&[1.0, 0.0, PI / 2.0, 1.0]).unwrap())
            .unwrap();
        assert!((e.means[(0, 0)] - c(1.0, 0.0)).norm() < 1e-15);
        assert!((e.means[(1, 0)] - c(0.0, 1.0)).norm() < 1e-15);
        let d = &e.mean_jacobians[2];
        assert!(d[(0, 0)].norm() < 1e-15);
        assert!((d[(1, 0)] - c(-1.0, 0.0)).norm() < 1e-15);
        let fd = model
            .finite_diff_eval(&model.params(&[1.0, 0.0, PI / 2.0, 1.0]).unwrap(), 1e-6)
            .unwrap();
        assert!(rel_frob(&fd.mean_jacobians[2], d) < 1e-8);
    }

    #[test]
    fn ar1_at_zero_correlation() {
        let model = builtin("ar1-scatter", 3, 2).unwrap();
        let e = model.evaluate(&model.params(&[0.0, 2.0]).unwrap()).unwrap();
        assert_eq!(e.scatter, CMatrix::identity(3, 3) * c(2.0, 0.0));
        let expected = CMatrix::from_fn(3, 3, |r, s| {
            if r.abs_diff(s) == 1 {
                c(2.0, 0.0)
            } else {
                c(0.0, 0.0)
            }
        });
        assert_eq!(e.scatter_derivs[0], expected);
    }

    #[test]
    fn ar1_finite_difference_matches_closed_form() {
        let model = builtin("ar1-scatter", 4, 1).unwrap();
        let theta = model.params(&[0.5, 1.0]).unwrap();
        let a = model.evaluate(&theta).unwrap();
        let fd = model.finite_diff_eval(&theta, 1e-6).unwrap();
        for r in 0..4usize {
            for s in 0..4 {
                let lag = r.abs_diff(s) as i32;
                let exact = if lag == 0 {
                    0.0
                } else {
                    lag as f64 * 0.5f64.powi(lag - 1)
                };
                assert!((a.scatter_derivs[0][(r, s)].re - exact).abs() < 1e-15);
                let got = fd.scatter_derivs[0][(r, s)].re;
                assert!(
                    (got - exact).abs() <= 1e-6 * exact.abs().max(1e-3),
                    "{r},{s}: {got} vs {exact}"
                );
            }
        }
    }

    #[test]
    fn constant_mean_has_zero_jacobian() {
        let model = builtin("ar1-scatter", 3, 2).unwrap();
        let fd = model
            .finite_diff_eval(&model.params(&[0.2, 1.5]).unwrap(), 1e-6)
            .unwrap();
        assert!(fd.mean_jacobians.iter().all(|j| j.norm() == 0.0));
    }

    #[test]
    fn ula_finite_difference_all_parameters() {
        let model = builtin("ula-doa", 4, 3).unwrap();
        let theta = model.params(&[1.0, 0.3, 1.1, 2.0]).unwrap();
        let a = model.evaluate(&theta).unwrap();
        let fd = model.finite_diff_eval(&theta, DEFAULT_FD_STEP).unwrap();
        for j in 0..4 {
            if a.mean_jacobians[j].norm() > 0.0 {
                assert!(rel_frob(&fd.mean_jacobians[j], &a.mean_jacobians[j]) < 1e-6);
            }
            if a.scatter_derivs[j].norm() > 0.0 {
                assert!(rel_frob(&fd.scatter_derivs[j], &a.scatter_derivs[j]) < 1e-6);
            }
        }
    }

    #[test]
    fn ula_separates_mean_and_scatter_parameters() {
        let model = builtin("ula-doa", 3, 2).unwrap();
        let e = model
            .evaluate(&model.params(&[0.7, -0.4, 0.9, 1.3]).unwrap())
            .unwrap();
        assert!(e.mean_jacobians[3].iter().all(|z| *z == c(0.0, 0.0)));
        for j in 0..3 {
            assert!(e.scatter_derivs[j].iter().all(|z| *z == c(0.0, 0.0)));
        }
    }

    #[test]
    fn domain_errors_name_the_parameter() {
        let model = builtin("ar1-scatter", 3, 1).unwrap();
        match model.evaluate(&model.params(&[1.2, 1.0]).unwrap()) {
            Err(Error::ParameterDomain { name, .. }) => assert_eq!(name, "rho"),
            other => panic!("{other:?}"),
        }
        match model.evaluate(&model.params(&[0.1, -1.0]).unwrap()) {
            Err(Error::ParameterDomain { name, .. }) => assert_eq!(name, "variance"),
            other => panic!("{other:?}"),
        }
        let ula = builtin("ula-doa", 2, 1).unwrap();
        assert!(ula.params(&[1.0, 2.0]).is_err());
    }

    #[test]
    fn step_collides_with_boundary() {
        let model = builtin("ar1-scatter", 3, 1).unwrap();
        let theta = model.params(&[0.9999999, 1.0]).unwrap();
        assert!(matches!(
            model.finite_diff_eval(&theta, 1e-6),
            Err(Error::StepBoundary { name }) if name == "rho"
        ));
    }

    #[test]
    fn unknown_and_misdimensioned_models() {
        assert!(matches!(builtin("nope", 2, 2), Err(Error::UnknownModel(_))));
        assert!(builtin("scalar-mean", 2, 2).is_err());
    }

    #[derive(Debug)]
    struct Indefinite;

    impl ModelFunction for Indefinite {
        fn name(&self) -> &str {
            "indefinite"
        }
        fn param_names(&self) -> Vec<String> {
            vec!["x".into()]
        }
        fn snapshot_dim(&self) -> usize {
            2
        }
        fn snapshot_count(&self) -> usize {
            1
        }
        fn check_domain(&self, _theta: &[f64]) -> Result<()> {
            Ok(())
        }
        fn mean_and_scatter(&self, theta: &[f64]) -> (CMatrix, CMatrix) {
            let s = CMatrix::from_row_slice(
                2,
                2,
                &[c(1.0, 0.0), c(theta[0], 0.0), c(theta[0], 0.0), c(1.0, 0.0)],
            );
            (CMatrix::zeros(2, 1), s)
        }
    }

    #[test]
    fn non_positive_definite_scatter_is_an_error() {
        let model = ParametricModel::new(
            Arc::new(Indefinite),
            DerivativeMode::FiniteDifference { step: 1e-6 },
        );
        let theta = model.params(&[3.0]).unwrap();
        match model.evaluate(&theta) {
            Err(Error::NotPositiveDefinite { min_eigenvalue }) => {
                assert!((min_eigenvalue + 2.0).abs() < 1e-12)
            }
            other => panic!("{other:?}"),
        }
        assert!(model.evaluate(&model.params(&[0.5]).unwrap()).is_ok());
        let analytic = model.with_derivative_mode(DerivativeMode::Analytic);
        assert!(matches!(
            analytic.evaluate(&analytic.params(&[0.5]).unwrap()),
            Err(Error::Contract(_))
        ));
    }
}
