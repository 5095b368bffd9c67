//! Elliptical data generation, exact scores and Monte Carlo oracles.
//!
//! Data follow the stochastic representation `x = μ + √Q Σ^{1/2} u` with `u`
//! uniform on the complex unit sphere and `Q` the modular variate. For EMS data
//! every snapshot draws its own `(Q_t, u_t)` at dim `M`; for EVS data a single
//! `(Q, u)` at dim `M·T` covers the whole matrix.
//!
//! Every Monte Carlo trial owns a ChaCha20 stream keyed by `(master_seed, trial)`,
//! so results do not depend on how trials are scheduled across threads.

use nalgebra::DVector;
use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use rand_distr::{Distribution, Gamma, StandardNormal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fim::{FimMatrix, FimTerms};
use crate::generators::{DensityGenerator, GeneratorFamily};
use crate::interp::MonotoneCubic;
use crate::linalg::{hermitian_sqrt, re_trace, CMatrix, HermitianFactor, RMatrix};
use crate::models::{ModelEval, ParamVector, ParametricModel};
use crate::quadrature::{integrate, QuadratureConfig};
use crate::stats::McEstimate;
use crate::tolerances::{MC_INCONCLUSIVE_FRACTION, MC_MIN_TRIALS, MC_STDERR_GATE};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EcKind {
    EMS,
    EVS,
}

/// Address of an independent random stream.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RngStream {
    pub master_seed: u64,
    pub stream_index: u64,
}

impl RngStream {
    pub fn new(master_seed: u64, stream_index: u64) -> Self {
        Self {
            master_seed,
            stream_index,
        }
    }

    pub fn rng(&self) -> ChaCha20Rng {
        let mut rng = ChaCha20Rng::seed_from_u64(self.master_seed);
        rng.set_stream(self.stream_index);
        rng
    }
}

/// One `M × T` draw with its provenance.
#[derive(Debug, Clone, PartialEq)]
pub struct EcDataset {
    pub snapshots: CMatrix,
    pub kind: EcKind,
    pub seed: u64,
    pub stream_index: u64,
    pub generator_tag: String,
}

/// `CN(0, I)` vector: real and imaginary parts have variance 1/2.
pub fn complex_normal<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> DVector<Complex64> {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    DVector::from_fn(dim, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        Complex64::new(s * re, s * im)
    })
}

/// Uniform draw on the complex unit sphere of `ℂ^dim`.
pub fn sample_sphere<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> DVector<Complex64> {
    assert!(dim >= 1);
    loop {
        let z = complex_normal(dim, rng);
        let norm = z.norm();
        if norm > 1e-150 {
            return z.unscale(norm);
        }
    }
}

/// Sampler for the modular variate `Q` at a fixed dimension.
#[derive(Debug, Clone)]
pub enum ModularSampler {
    /// `Gamma(dim, 1)`
    Gaussian(Gamma<f64>),
    /// `d · Gamma(dim, 1) / Gamma(d, 1)`
    Student {
        numerator: Gamma<f64>,
        denominator: Gamma<f64>,
        dof: f64,
    },
    /// Inverse CDF on a monotone spline of the tabulated CDF.
    Tabulated(InverseCdf),
}

impl ModularSampler {
    pub fn new(generator: &DensityGenerator, dim: usize, cfg: &QuadratureConfig) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Domain("dimension must be at least 1".into()));
        }
        let gamma = |shape: f64| {
            Gamma::new(shape, 1.0).map_err(|e| Error::Sampler(format!("gamma({shape}): {e}")))
        };
        match generator.family() {
            GeneratorFamily::Gaussian => Ok(Self::Gaussian(gamma(dim as f64)?)),
            GeneratorFamily::Student { dof } => Ok(Self::Student {
                numerator: gamma(dim as f64)?,
                denominator: gamma(*dof)?,
                dof: *dof,
            }),
            GeneratorFamily::CustomTabulated(_) => {
                Ok(Self::Tabulated(InverseCdf::new(generator, dim, cfg)?))
            }
        }
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        match self {
            Self::Gaussian(g) => g.sample(rng),
            Self::Student {
                numerator,
                denominator,
                dof,
            } => dof * numerator.sample(rng) / denominator.sample(rng),
            Self::Tabulated(inv) => inv.sample(rng),
        }
    }
}

/// Draws one modular variate; builds a fresh sampler each call.
pub fn sample_modular<R: Rng + ?Sized>(
    generator: &DensityGenerator,
    dim: usize,
    rng: &mut R,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    Ok(ModularSampler::new(generator, dim, cfg)?.sample(rng))
}

/// Inverse-CDF sampler for a tabulated generator.
#[derive(Debug, Clone)]
pub struct InverseCdf {
    cdf: MonotoneCubic,
}

impl InverseCdf {
    /// Largest tolerated deviation of the cumulative segment masses from 1.
    const MASS_TOL: f64 = 1e-6;

    fn new(generator: &DensityGenerator, dim: usize, cfg: &QuadratureConfig) -> Result<Self> {
        let GeneratorFamily::CustomTabulated(table) = generator.family() else {
            return Err(Error::Sampler(
                "inverse-CDF sampling needs a tabulated generator".into(),
            ));
        };
        let density = generator.modular_density(dim, cfg)?;
        let grid = table.grid().to_vec();
        let mut cdf = Vec::with_capacity(grid.len());
        cdf.push(0.0);
        for w in grid.windows(2) {
            let mass = integrate(|q| density.pdf(q).unwrap_or(f64::NAN), w[0], w[1], &[], cfg)
                .map_err(|e| Error::Sampler(format!("CDF segment [{}, {}]: {e}", w[0], w[1])))?;
            let last = *cdf.last().expect("non-empty");
            cdf.push(last + mass.value);
        }
        let total = *cdf.last().expect("non-empty");
        if !((total - 1.0).abs() <= Self::MASS_TOL) {
            return Err(Error::Sampler(format!(
                "tabulated CDF reaches {total}, expected 1"
            )));
        }
        for v in &mut cdf {
            *v /= total;
        }
        Ok(Self {
            cdf: MonotoneCubic::new(grid, cdf),
        })
    }

    pub fn quantile(&self, u: f64) -> f64 {
        let values = self.cdf.values();
        let knots = self.cdf.knots();
        let i = values
            .partition_point(|&v| v < u)
            .clamp(1, values.len() - 1);
        let (mut lo, mut hi) = (knots[i - 1], knots[i]);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if self.cdf.eval(mid) < u {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        self.quantile(rng.random::<f64>())
    }
}

/// Draws datasets for one model point and generator.
#[derive(Debug, Clone)]
pub struct DatasetSampler {
    means: CMatrix,
    scatter_sqrt: CMatrix,
    modular: ModularSampler,
    kind: EcKind,
    generator_tag: String,
}

impl DatasetSampler {
    pub fn new(
        eval: &ModelEval,
        generator: &DensityGenerator,
        kind: EcKind,
        cfg: &QuadratureConfig,
    ) -> Result<Self> {
        let dim = match kind {
            EcKind::EMS => eval.dim(),
            EcKind::EVS => eval.dim() * eval.snapshots(),
        };
        Ok(Self {
            means: eval.means.clone(),
            scatter_sqrt: hermitian_sqrt(&eval.scatter),
            modular: ModularSampler::new(generator, dim, cfg)?,
            kind,
            generator_tag: generator.description().to_string(),
        })
    }

    /// Standardized draw `√Q u` (EMS: per column; EVS: one vector reshaped to `M × T`).
    fn whitened<R: Rng + ?Sized>(&self, rng: &mut R) -> CMatrix {
        let (m, t) = self.means.shape();
        match self.kind {
            EcKind::EMS => {
                let mut z = CMatrix::zeros(m, t);
                for col in 0..t {
                    let q = self.modular.sample(rng);
                    let u = sample_sphere(m, rng) * Complex64::new(q.sqrt(), 0.0);
                    z.set_column(col, &u);
                }
                z
            }
            EcKind::EVS => {
                let q = self.modular.sample(rng);
                let u = sample_sphere(m * t, rng) * Complex64::new(q.sqrt(), 0.0);
                CMatrix::from_column_slice(m, t, u.as_slice())
            }
        }
    }

    pub fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> CMatrix {
        &self.means + &self.scatter_sqrt * self.whitened(rng)
    }

    pub fn dataset(&self, stream: RngStream) -> EcDataset {
        let mut rng = stream.rng();
        EcDataset {
            snapshots: self.draw(&mut rng),
            kind: self.kind,
            seed: stream.master_seed,
            stream_index: stream.stream_index,
            generator_tag: self.generator_tag.clone(),
        }
    }
}

pub fn sample_dataset(
    model: &ParametricModel,
    theta: &ParamVector,
    generator: &DensityGenerator,
    kind: EcKind,
    stream: RngStream,
    cfg: &QuadratureConfig,
) -> Result<EcDataset> {
    let eval = model.evaluate(theta)?;
    Ok(DatasetSampler::new(&eval, generator, kind, cfg)?.dataset(stream))
}

/// Precomputed pieces for evaluating scores and log-likelihoods at one model point.
#[derive(Debug, Clone)]
pub struct ScoreContext {
    eval: ModelEval,
    factor: HermitianFactor,
    trace: Vec<f64>,
}

/// Per-snapshot quadratic forms `η_t` and their derivatives `∂η_t/∂θ_j`.
struct QuadForms {
    eta: Vec<f64>,
    /// `d_eta[j][t]`
    d_eta: Vec<Vec<f64>>,
}

impl ScoreContext {
    pub fn new(eval: &ModelEval) -> Result<Self> {
        let factor = HermitianFactor::new(&eval.scatter)?;
        let trace = eval
            .scatter_derivs
            .iter()
            .map(|d| re_trace(&factor.solve(d)))
            .collect();
        Ok(Self {
            eval: eval.clone(),
            factor,
            trace,
        })
    }

    pub fn eval(&self) -> &ModelEval {
        &self.eval
    }

    fn check(&self, x: &CMatrix) -> Result<()> {
        if x.shape() != self.eval.means.shape() {
            return Err(Error::Contract(format!(
                "data is {:?}, model expects {:?}",
                x.shape(),
                self.eval.means.shape()
            )));
        }
        Ok(())
    }

    fn quad_forms(&self, x: &CMatrix) -> QuadForms {
        let residual = x - &self.eval.means;
        let w = self.factor.solve(&residual);
        let (m, t) = residual.shape();
        let eta = (0..t)
            .map(|c| {
                (0..m)
                    .map(|r| (residual[(r, c)].conj() * w[(r, c)]).re)
                    .sum()
            })
            .collect();
        let d_eta = self
            .eval
            .mean_jacobians
            .iter()
            .zip(&self.eval.scatter_derivs)
            .map(|(dmu, dsig)| {
                let sw = dsig * &w;
                (0..t)
                    .map(|c| {
                        let mut mean_part = 0.0;
                        let mut scatter_part = 0.0;
                        for r in 0..m {
                            mean_part += (dmu[(r, c)].conj() * w[(r, c)]).re;
                            scatter_part += (w[(r, c)].conj() * sw[(r, c)]).re;
                        }
                        -2.0 * mean_part - scatter_part
                    })
                    .collect()
            })
            .collect();
        QuadForms { eta, d_eta }
    }

    /// `∂L/∂θ_j = -T tr(Σ⁻¹Σ_j) + Σ_t φ(η_t) ∂η_t/∂θ_j`, φ at dim `M`.
    pub fn score_ems(&self, generator: &DensityGenerator, x: &CMatrix) -> Result<Vec<f64>> {
        self.check(x)?;
        let m = self.eval.dim();
        let t = self.eval.snapshots() as f64;
        let qf = self.quad_forms(x);
        let phis = qf
            .eta
            .iter()
            .map(|&e| generator.phi(e, m))
            .collect::<Result<Vec<_>>>()?;
        Ok(qf
            .d_eta
            .iter()
            .zip(&self.trace)
            .map(|(d, tr)| -t * tr + d.iter().zip(&phis).map(|(a, b)| a * b).sum::<f64>())
            .collect())
    }

    /// `∂L/∂θ_j = -T tr(Σ⁻¹Σ_j) + φ(Σ_t η_t) Σ_t ∂η_t/∂θ_j`, φ at dim `M·T`.
    pub fn score_evs(&self, generator: &DensityGenerator, x: &CMatrix) -> Result<Vec<f64>> {
        self.check(x)?;
        let total = self.eval.dim() * self.eval.snapshots();
        let t = self.eval.snapshots() as f64;
        let qf = self.quad_forms(x);
        let phi = generator.phi(qf.eta.iter().sum(), total)?;
        Ok(qf
            .d_eta
            .iter()
            .zip(&self.trace)
            .map(|(d, tr)| -t * tr + phi * d.iter().sum::<f64>())
            .collect())
    }

    pub fn score(
        &self,
        generator: &DensityGenerator,
        x: &CMatrix,
        kind: EcKind,
    ) -> Result<Vec<f64>> {
        match kind {
            EcKind::EMS => self.score_ems(generator, x),
            EcKind::EVS => self.score_evs(generator, x),
        }
    }

    /// Full log-likelihood, normalizing constants included.
    pub fn log_likelihood(
        &self,
        generator: &DensityGenerator,
        x: &CMatrix,
        kind: EcKind,
        cfg: &QuadratureConfig,
    ) -> Result<f64> {
        self.check(x)?;
        let m = self.eval.dim();
        let t = self.eval.snapshots();
        let ln_det = self.factor.ln_det();
        let qf = self.quad_forms(x);
        match kind {
            EcKind::EMS => {
                let c = generator.log_normalization(m, cfg)?;
                let mut acc = 0.0;
                for &e in &qf.eta {
                    acc += c - ln_det + generator.log_g(e, m)?;
                }
                Ok(acc)
            }
            EcKind::EVS => {
                let c = generator.log_normalization(m * t, cfg)?;
                Ok(c - t as f64 * ln_det + generator.log_g(qf.eta.iter().sum(), m * t)?)
            }
        }
    }
}

pub fn score_ems(
    eval: &ModelEval,
    generator: &DensityGenerator,
    x: &EcDataset,
) -> Result<Vec<f64>> {
    if x.kind != EcKind::EMS {
        return Err(Error::Contract("score_ems needs an EMS dataset".into()));
    }
    ScoreContext::new(eval)?.score_ems(generator, &x.snapshots)
}

pub fn score_evs(
    eval: &ModelEval,
    generator: &DensityGenerator,
    x: &EcDataset,
) -> Result<Vec<f64>> {
    if x.kind != EcKind::EVS {
        return Err(Error::Contract("score_evs needs an EVS dataset".into()));
    }
    ScoreContext::new(eval)?.score_evs(generator, &x.snapshots)
}

/// Empirical FIM against its closed form.
#[derive(Debug, Clone, PartialEq)]
pub struct McReport {
    pub empirical: FimMatrix,
    pub analytic: FimMatrix,
    pub n_trials: usize,
    pub master_seed: u64,
    /// `max |emp - analytic| / sqrt(F_jj F_kk)` over entries.
    pub max_rel_err: f64,
    pub per_entry_stderr: RMatrix,
    /// `max |emp - analytic| / stderr` over entries.
    pub max_entry_z: f64,
    pub score_mean: Vec<f64>,
    pub score_mean_stderr: Vec<f64>,
    pub max_score_z: f64,
    /// Entries whose standard error exceeds the inconclusive fraction of their magnitude.
    pub inconclusive: Vec<(usize, usize)>,
}

impl McReport {
    pub fn fim_consistent(&self) -> bool {
        self.max_entry_z <= MC_STDERR_GATE
    }

    pub fn score_zero_mean(&self) -> bool {
        self.max_score_z <= MC_STDERR_GATE
    }

    pub fn passed(&self) -> bool {
        self.fim_consistent() && self.score_zero_mean()
    }
}

/// Scores of `n_trials` independent datasets; trial `i` uses stream `i`.
pub fn mc_scores(
    eval: &ModelEval,
    generator: &DensityGenerator,
    kind: EcKind,
    n_trials: usize,
    master_seed: u64,
    cfg: &QuadratureConfig,
) -> Result<Vec<Vec<f64>>> {
    let sampler = DatasetSampler::new(eval, generator, kind, cfg)?;
    let ctx = ScoreContext::new(eval)?;
    (0..n_trials as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = RngStream::new(master_seed, i).rng();
            let x = sampler.draw(&mut rng);
            ctx.score(generator, &x, kind)
        })
        .collect()
}

/// Averages score outer products over independent datasets and compares the
/// result with the matching closed-form FIM.
pub fn empirical_fim(
    model: &ParametricModel,
    theta: &ParamVector,
    generator: &DensityGenerator,
    kind: EcKind,
    n_trials: usize,
    master_seed: u64,
    cfg: &QuadratureConfig,
) -> Result<McReport> {
    if n_trials < MC_MIN_TRIALS {
        return Err(Error::Contract(format!(
            "empirical FIM needs at least {MC_MIN_TRIALS} trials, got {n_trials}"
        )));
    }
    let eval = model.evaluate(theta)?;
    let terms = FimTerms::new(&eval)?;
    let analytic = match kind {
        EcKind::EMS => terms.ems(&generator.moments(eval.dim(), cfg)?)?,
        EcKind::EVS => terms.evs(&generator.moments(eval.dim() * eval.snapshots(), cfg)?)?,
    };
    let scores = mc_scores(&eval, generator, kind, n_trials, master_seed, cfg)?;
    Ok(summarize(scores, analytic, master_seed))
}

fn summarize(scores: Vec<Vec<f64>>, analytic: FimMatrix, master_seed: u64) -> McReport {
    let n = scores.len();
    let p = analytic.dim();
    let mut empirical = RMatrix::zeros(p, p);
    let mut stderr = RMatrix::zeros(p, p);
    let mut column = vec![0.0; n];
    for j in 0..p {
        for k in j..p {
            for (slot, s) in column.iter_mut().zip(&scores) {
                *slot = s[j] * s[k];
            }
            let est = McEstimate::from_samples(&column);
            empirical[(j, k)] = est.mean;
            empirical[(k, j)] = est.mean;
            stderr[(j, k)] = est.stderr;
            stderr[(k, j)] = est.stderr;
        }
    }

    let mut score_mean = Vec::with_capacity(p);
    let mut score_mean_stderr = Vec::with_capacity(p);
    let mut max_score_z = 0.0f64;
    for j in 0..p {
        for (slot, s) in column.iter_mut().zip(&scores) {
            *slot = s[j];
        }
        let est = McEstimate::from_samples(&column);
        max_score_z = max_score_z.max(est.z_score(0.0));
        score_mean.push(est.mean);
        score_mean_stderr.push(est.stderr);
    }

    let a = &analytic.entries;
    let fallback = a.amax().max(f64::MIN_POSITIVE);
    let mut max_rel_err = 0.0f64;
    let mut max_entry_z = 0.0f64;
    let mut inconclusive = Vec::new();
    for j in 0..p {
        for k in j..p {
            let diff = (empirical[(j, k)] - a[(j, k)]).abs();
            let scale = (a[(j, j)] * a[(k, k)]).sqrt();
            let scale = if scale > 0.0 { scale } else { fallback };
            max_rel_err = max_rel_err.max(diff / scale);
            let z = McEstimate {
                mean: empirical[(j, k)],
                stderr: stderr[(j, k)],
                n,
            }
            .z_score(a[(j, k)]);
            max_entry_z = max_entry_z.max(z);
            let magnitude = a[(j, k)].abs();
            if magnitude > 1e-12 * scale && stderr[(j, k)] > MC_INCONCLUSIVE_FRACTION * magnitude {
                inconclusive.push((j, k));
            }
        }
    }

    McReport {
        empirical: FimMatrix {
            entries: empirical,
            family_tag: analytic.family_tag,
            moments_used: None,
        },
        analytic,
        n_trials: n,
        master_seed,
        max_rel_err,
        per_entry_stderr: stderr,
        max_entry_z,
        score_mean,
        score_mean_stderr,
        max_score_z,
        inconclusive,
    }
}

/// Closed form of `E[(uᴴAu)(uᴴBu)]` for `u` uniform on the sphere of `ℂ^dim`.
pub fn quartic_sphere_closed_form(a: &CMatrix, b: &CMatrix) -> f64 {
    let dim = a.nrows() as f64;
    (re_trace(a) * re_trace(b) + crate::linalg::re_trace_product(a, b)) / (dim * (dim + 1.0))
}

fn quadratic_form(u: &DVector<Complex64>, m: &CMatrix) -> f64 {
    u.dotc(&(m * u)).re
}

/// Monte Carlo estimate of `E[(uᴴAu)(uᴴBu)]`.
pub fn quartic_sphere_oracle(
    a: &CMatrix,
    b: &CMatrix,
    n_trials: usize,
    master_seed: u64,
) -> McEstimate {
    let dim = a.nrows();
    let samples: Vec<f64> = (0..n_trials as u64)
        .into_par_iter()
        .map(|i| {
            let u = sample_sphere(dim, &mut RngStream::new(master_seed, i).rng());
            quadratic_form(&u, a) * quadratic_form(&u, b)
        })
        .collect();
    McEstimate::from_samples(&samples)
}

/// Monte Carlo estimate of the odd moment `E[Re(aᴴu) (uᴴBu)]`, which is zero.
pub fn odd_sphere_moment_oracle(
    a: &DVector<Complex64>,
    b: &CMatrix,
    n_trials: usize,
    master_seed: u64,
) -> McEstimate {
    let dim = b.nrows();
    let samples: Vec<f64> = (0..n_trials as u64)
        .into_par_iter()
        .map(|i| {
            let u = sample_sphere(dim, &mut RngStream::new(master_seed, i).rng());
            a.dotc(&u).re * quadratic_form(&u, b)
        })
        .collect();
    McEstimate::from_samples(&samples)
}

/// Sample first and second moments `(mean(u), mean(u uᴴ))` of sphere draws.
pub fn sphere_moments(
    dim: usize,
    n_trials: usize,
    master_seed: u64,
) -> (DVector<Complex64>, CMatrix) {
    let (first, second) = (0..n_trials as u64)
        .into_par_iter()
        .map(|i| {
            let u = sample_sphere(dim, &mut RngStream::new(master_seed, i).rng());
            let outer = &u * u.adjoint();
            (u, outer)
        })
        .collect::<Vec<_>>()
        .into_iter()
        .fold(
            (DVector::zeros(dim), CMatrix::zeros(dim, dim)),
            |(s1, s2), (u, o)| (s1 + u, s2 + o),
        );
    let scale = Complex64::new(1.0 / n_trials as f64, 0.0);
    (first * scale, second * scale)
}
