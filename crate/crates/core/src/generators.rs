//! Density generators of complex elliptically contoured distributions.
//!
//! A generator `g` defines the density `C det(Σ)^-1 g((x-μ)ᴴ Σ⁻¹ (x-μ))`. Its
//! log-derivative `φ = g'/g` drives scores, and the two expectations
//! `E[Q φ²(Q)]`, `E[Q² φ²(Q)]` of the modular variate `Q` are the only
//! generator-dependent quantities in the Fisher information.
//!
//! The Student generator `(1 + t/d)^-(d+dim)` depends on the ambient dimension,
//! so every evaluation takes `dim` explicitly: `M` for i.i.d. snapshots, `M T`
//! for the vector-elliptical model.

use serde::{Deserialize, Serialize};
use statrs::function::gamma::ln_gamma;

use crate::error::{Error, Result};
use crate::interp::MonotoneCubic;
use crate::quadrature::{integrate, integrate_semi_infinite, QuadResult, QuadratureConfig};

/// Smallest number of knots accepted for a tabulated generator.
pub const MIN_TABLE_POINTS: usize = 16;
/// A tabulated grid must start within this distance of the origin.
pub const TABLE_ORIGIN_SLACK: f64 = 1e-6;

/// `log g` tabulated on a grid and interpolated by a monotone cubic.
#[derive(Debug, Clone, PartialEq)]
pub struct TabulatedLogG {
    spline: MonotoneCubic,
}

impl TabulatedLogG {
    pub fn new(grid: Vec<f64>, log_g: Vec<f64>) -> Result<Self> {
        if grid.len() != log_g.len() {
            return Err(Error::InvalidGenerator(format!(
                "grid has {} points but log_g has {}",
                grid.len(),
                log_g.len()
            )));
        }
        if grid.len() < MIN_TABLE_POINTS {
            return Err(Error::InvalidGenerator(format!(
                "tabulated generator needs at least {MIN_TABLE_POINTS} points, got {}",
                grid.len()
            )));
        }
        if !(grid[0] >= 0.0 && grid[0] <= TABLE_ORIGIN_SLACK) {
            return Err(Error::InvalidGenerator(format!(
                "grid must start at 0 (within {TABLE_ORIGIN_SLACK}), starts at {}",
                grid[0]
            )));
        }
        if let Some(i) = grid
            .windows(2)
            .position(|w| !(w[1] > w[0]) || !w[1].is_finite())
        {
            return Err(Error::InvalidGenerator(format!(
                "grid is not strictly increasing at index {}",
                i + 1
            )));
        }
        if let Some(i) = log_g.iter().position(|v| !v.is_finite()) {
            return Err(Error::InvalidGenerator(format!(
                "log g is not finite at index {i}"
            )));
        }
        Ok(Self {
            spline: MonotoneCubic::new(grid, log_g),
        })
    }

    pub fn grid(&self) -> &[f64] {
        self.spline.knots()
    }

    pub fn log_g_values(&self) -> &[f64] {
        self.spline.values()
    }

    fn check_range(&self, t: f64) -> Result<()> {
        let (lo, hi) = (self.spline.lo(), self.spline.hi());
        if t < lo || t > hi {
            return Err(Error::Extrapolation { t, lo, hi });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum GeneratorFamily {
    /// `g(t) = exp(-t)`: the complex normal distribution.
    Gaussian,
    /// `g(t) = (1 + t/d)^-(d + dim)`: multivariate Student with `dof` degrees of freedom.
    Student {
        dof: f64,
    },
    CustomTabulated(TabulatedLogG),
}

/// A density generator with a human-readable label.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityGenerator {
    family: GeneratorFamily,
    description: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MomentMethod {
    Analytic,
    Quadrature,
}

/// `E[Q φ²(Q)]` and `E[Q² φ²(Q)]` for the modular variate at dimension `dim`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModularMoments {
    pub dim: usize,
    pub e_q_phi2: f64,
    pub e_q2_phi2: f64,
    pub method: MomentMethod,
    pub est_abs_error: f64,
}

impl ModularMoments {
    /// The Gaussian values `(dim, dim (dim + 1))`.
    pub fn gaussian(dim: usize) -> Self {
        let m = dim as f64;
        Self {
            dim,
            e_q_phi2: m,
            e_q2_phi2: m * (m + 1.0),
            method: MomentMethod::Analytic,
            est_abs_error: 0.0,
        }
    }

    /// Student values `((d+dim) dim / (d+dim+1), (d+dim) dim (dim+1) / (d+dim+1))`.
    pub fn student(dof: f64, dim: usize) -> Self {
        let m = dim as f64;
        let ratio = (dof + m) / (dof + m + 1.0);
        Self {
            dim,
            e_q_phi2: ratio * m,
            e_q2_phi2: ratio * m * (m + 1.0),
            method: MomentMethod::Analytic,
            est_abs_error: 0.0,
        }
    }
}

fn check_dim(dim: usize) -> Result<()> {
    if dim == 0 {
        return Err(Error::Domain("dimension must be at least 1".into()));
    }
    Ok(())
}

fn with_dim(err: Error, dim: usize) -> Error {
    match err {
        Error::Divergence { reason, .. } => Error::Divergence { dim, reason },
        other => other,
    }
}

impl DensityGenerator {
    pub fn gaussian() -> Self {
        Self {
            family: GeneratorFamily::Gaussian,
            description: "gaussian".into(),
        }
    }

    pub fn student(dof: f64) -> Result<Self> {
        if !(dof.is_finite() && dof > 0.0) {
            return Err(Error::InvalidGenerator(format!(
                "Student degrees of freedom must be positive and finite, got {dof}"
            )));
        }
        Ok(Self {
            family: GeneratorFamily::Student { dof },
            description: format!("student(d={dof})"),
        })
    }

    pub fn tabulated(grid: Vec<f64>, log_g: Vec<f64>) -> Result<Self> {
        let table = TabulatedLogG::new(grid, log_g)?;
        let n = table.grid().len();
        Ok(Self {
            family: GeneratorFamily::CustomTabulated(table),
            description: format!("tabulated({n} points)"),
        })
    }

    /// Tabulates `log_g` on `grid`; mostly useful for tests and examples.
    pub fn tabulate<F: Fn(f64) -> f64>(grid: Vec<f64>, log_g: F) -> Result<Self> {
        let values = grid.iter().map(|&t| log_g(t)).collect();
        Self::tabulated(grid, values)
    }

    pub fn with_description(mut self, description: impl Into<String>) -> Self {
        self.description = description.into();
        self
    }

    pub fn family(&self) -> &GeneratorFamily {
        &self.family
    }

    pub fn description(&self) -> &str {
        &self.description
    }

    /// `log g(t)` for the generator at ambient dimension `dim`.
    pub fn log_g(&self, t: f64, dim: usize) -> Result<f64> {
        if !(t >= 0.0) {
            return Err(Error::Domain(format!(
                "generator argument must be non-negative, got {t}"
            )));
        }
        match &self.family {
            GeneratorFamily::Gaussian => Ok(-t),
            GeneratorFamily::Student { dof } => Ok(-(dof + dim as f64) * (t / dof).ln_1p()),
            GeneratorFamily::CustomTabulated(table) => {
                table.check_range(t)?;
                Ok(table.spline.eval(t))
            }
        }
    }

    /// `φ(t) = g'(t) / g(t)` at ambient dimension `dim`.
    pub fn phi(&self, t: f64, dim: usize) -> Result<f64> {
        if !(t >= 0.0) {
            return Err(Error::Domain(format!(
                "φ argument must be non-negative, got {t}"
            )));
        }
        match &self.family {
            GeneratorFamily::Gaussian => Ok(-1.0),
            GeneratorFamily::Student { dof } => Ok(-(dof + dim as f64) / (dof + t)),
            GeneratorFamily::CustomTabulated(table) => {
                table.check_range(t)?;
                Ok(table.spline.derivative(t))
            }
        }
    }

    /// Upper end of the support on which `g` is known (infinite for closed forms).
    pub fn support_end(&self) -> f64 {
        match &self.family {
            GeneratorFamily::CustomTabulated(table) => table.spline.hi(),
            _ => f64::INFINITY,
        }
    }

    /// Integrates `f` against the Lebesgue measure over the generator's support.
    fn integrate_support<F: Fn(f64) -> f64>(
        &self,
        f: F,
        dim: usize,
        cfg: &QuadratureConfig,
    ) -> Result<QuadResult> {
        match &self.family {
            GeneratorFamily::CustomTabulated(table) => {
                let grid = table.grid();
                integrate(
                    f,
                    grid[0],
                    grid[grid.len() - 1],
                    &grid[1..grid.len() - 1],
                    cfg,
                )
            }
            _ => integrate_semi_infinite(f, dim as f64, cfg),
        }
        .map_err(|e| with_dim(e, dim))
    }

    /// `log δ_{dim,g}` with `δ = ∫₀^∞ t^{dim-1} g(t) dt`.
    pub fn log_delta(&self, dim: usize, cfg: &QuadratureConfig) -> Result<f64> {
        check_dim(dim)?;
        let m = dim as f64;
        match &self.family {
            GeneratorFamily::Gaussian => Ok(ln_gamma(m)),
            GeneratorFamily::Student { dof } => {
                Ok(m * dof.ln() + ln_gamma(*dof) + ln_gamma(m) - ln_gamma(dof + m))
            }
            GeneratorFamily::CustomTabulated(table) => {
                // Factor out the largest log-integrand to keep the quadrature well scaled.
                let shift = table
                    .grid()
                    .iter()
                    .zip(table.log_g_values())
                    .map(|(&t, &lg)| if t > 0.0 { (m - 1.0) * t.ln() + lg } else { lg })
                    .fold(f64::NEG_INFINITY, f64::max);
                let r = self.integrate_support(
                    |t| {
                        let lg = table.spline.eval(t);
                        if t == 0.0 {
                            if dim == 1 {
                                (lg - shift).exp()
                            } else {
                                0.0
                            }
                        } else {
                            ((m - 1.0) * t.ln() + lg - shift).exp()
                        }
                    },
                    dim,
                    cfg,
                )?;
                if !(r.value > 0.0) {
                    return Err(Error::Divergence {
                        dim,
                        reason: "normalizing integral is not positive".into(),
                    });
                }
                Ok(r.value.ln() + shift)
            }
        }
    }

    /// `log C_{dim,g}` such that the vector density is `C det(Σ)^-1 g(η)`.
    pub fn log_normalization(&self, dim: usize, cfg: &QuadratureConfig) -> Result<f64> {
        let m = dim as f64;
        Ok(ln_gamma(m) - m * std::f64::consts::PI.ln() - self.log_delta(dim, cfg)?)
    }

    /// Density of the modular variate at dimension `dim`, with `δ` precomputed.
    pub fn modular_density(
        &self,
        dim: usize,
        cfg: &QuadratureConfig,
    ) -> Result<ModularDensity<'_>> {
        let log_delta = self.log_delta(dim, cfg)?;
        Ok(ModularDensity {
            generator: self,
            dim,
            log_delta,
        })
    }

    /// `δ⁻¹ q^{dim-1} g(q)`.
    pub fn modular_pdf(&self, dim: usize, q: f64, cfg: &QuadratureConfig) -> Result<f64> {
        self.modular_density(dim, cfg)?.pdf(q)
    }

    /// `(E[Q φ²(Q)], E[Q² φ²(Q)])` at dimension `dim`.
    pub fn modular_moments(
        &self,
        dim: usize,
        method: MomentMethod,
        cfg: &QuadratureConfig,
    ) -> Result<ModularMoments> {
        check_dim(dim)?;
        match (method, &self.family) {
            (MomentMethod::Analytic, GeneratorFamily::Gaussian) => {
                Ok(ModularMoments::gaussian(dim))
            }
            (MomentMethod::Analytic, GeneratorFamily::Student { dof }) => {
                Ok(ModularMoments::student(*dof, dim))
            }
            (MomentMethod::Analytic, GeneratorFamily::CustomTabulated(_)) => Err(Error::Contract(
                "analytic moments are only available for the Gaussian and Student families".into(),
            )),
            (MomentMethod::Quadrature, _) => {
                let density = self.modular_density(dim, cfg)?;
                let moment = |power: i32| {
                    self.integrate_support(
                        |q| {
                            let p = density.pdf_unchecked(q);
                            if p == 0.0 {
                                return 0.0;
                            }
                            let phi = self.phi(q, dim).unwrap_or(f64::NAN);
                            q.powi(power) * phi * phi * p
                        },
                        dim,
                        cfg,
                    )
                };
                let first = moment(1)?;
                let second = moment(2)?;
                if !(first.value > 0.0 && second.value > 0.0) {
                    return Err(Error::InvalidGenerator(format!(
                        "moments must be positive, got ({}, {})",
                        first.value, second.value
                    )));
                }
                Ok(ModularMoments {
                    dim,
                    e_q_phi2: first.value,
                    e_q2_phi2: second.value,
                    method: MomentMethod::Quadrature,
                    est_abs_error: first.abs_error.max(second.abs_error),
                })
            }
        }
    }

    /// Closed-form moments when the family has them, quadrature otherwise.
    pub fn moments(&self, dim: usize, cfg: &QuadratureConfig) -> Result<ModularMoments> {
        let method = match self.family {
            GeneratorFamily::CustomTabulated(_) => MomentMethod::Quadrature,
            _ => MomentMethod::Analytic,
        };
        self.modular_moments(dim, method, cfg)
    }

    /// `E[Q φ(Q)]` by quadrature. Integration by parts gives `-dim` for every
    /// admissible generator, so this doubles as a generator self-test.
    pub fn first_moment_identity(&self, dim: usize, cfg: &QuadratureConfig) -> Result<QuadResult> {
        let density = self.modular_density(dim, cfg)?;
        let m = dim as f64;
        // The boundary term q^dim g(q) / δ must vanish at the top of the support.
        let top = match &self.family {
            GeneratorFamily::CustomTabulated(table) => table.spline.hi(),
            _ => 1e100,
        };
        let log_boundary = m * top.ln() + self.log_g(top, dim)? - density.log_delta;
        if log_boundary > cfg.tail_cutoff_mass.ln() {
            return Err(Error::InvalidGenerator(format!(
                "boundary term q^dim g(q)/δ = {:e} at q = {top} does not vanish",
                log_boundary.exp()
            )));
        }
        self.integrate_support(
            |q| {
                let p = density.pdf_unchecked(q);
                if p == 0.0 {
                    return 0.0;
                }
                q * self.phi(q, dim).unwrap_or(f64::NAN) * p
            },
            dim,
            cfg,
        )
    }
}

/// The modular-variate density at one dimension.
#[derive(Debug, Clone, Copy)]
pub struct ModularDensity<'a> {
    generator: &'a DensityGenerator,
    dim: usize,
    log_delta: f64,
}

impl ModularDensity<'_> {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn log_delta(&self) -> f64 {
        self.log_delta
    }

    pub fn log_pdf(&self, q: f64) -> Result<f64> {
        if !(q >= 0.0) {
            return Err(Error::Domain(format!(
                "modular variate must be non-negative, got {q}"
            )));
        }
        let lg = self.generator.log_g(q, self.dim)?;
        if q == 0.0 {
            return Ok(if self.dim == 1 {
                lg - self.log_delta
            } else {
                f64::NEG_INFINITY
            });
        }
        Ok((self.dim as f64 - 1.0) * q.ln() + lg - self.log_delta)
    }

    pub fn pdf(&self, q: f64) -> Result<f64> {
        Ok(self.log_pdf(q)?.exp())
    }

    fn pdf_unchecked(&self, q: f64) -> f64 {
        self.pdf(q).unwrap_or(f64::NAN)
    }
}
