//! Closed-form Fisher information matrices and Cramér-Rao bounds.
//!
//! All three forms share the same ingredients, with `A_j = Σ⁻¹ Σ_j`:
//!
//! - `tr(A_j)`
//! - `tr(A_j A_k)`
//! - `Σ_t Re{(∂μ_t/∂θ_j)ᴴ Σ⁻¹ (∂μ_t/∂θ_k)}`
//!
//! The Gaussian form weights them as `2·mean + T·tr(A_j A_k)`. The elliptical
//! forms rescale the mean and trace terms by the modular moments and add the
//! `tr(A_j) tr(A_k)` coupling that makes them non-proportional to the Gaussian FIM.

use nalgebra::SymmetricEigen;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::generators::ModularMoments;
use crate::linalg::{re_inner, re_trace, re_trace_product, CMatrix, HermitianFactor, RMatrix};
use crate::models::ModelEval;
use crate::tolerances::{CRB_MAX_CONDITION, FIM_PSD_SLACK, FIM_SYMMETRY_REL};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FimFamily {
    GaussianSB,
    EMS,
    EVS,
}

/// A `p × p` Fisher information matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct FimMatrix {
    pub entries: RMatrix,
    pub family_tag: FimFamily,
    pub moments_used: Option<ModularMoments>,
}

impl FimMatrix {
    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn is_symmetric(&self) -> bool {
        let scale = self.entries.amax().max(f64::MIN_POSITIVE);
        (&self.entries - self.entries.transpose()).amax() <= FIM_SYMMETRY_REL * scale
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        let mut ev: Vec<f64> = SymmetricEigen::new(self.entries.clone())
            .eigenvalues
            .iter()
            .copied()
            .collect();
        ev.sort_by(f64::total_cmp);
        ev
    }

    pub fn is_psd(&self) -> bool {
        let ev = self.eigenvalues();
        let max = ev.last().copied().unwrap_or(0.0);
        ev[0] >= -FIM_PSD_SLACK * max.abs()
    }
}

/// Inverse of a nonsingular FIM.
#[derive(Debug, Clone, PartialEq)]
pub struct CrbMatrix {
    pub entries: RMatrix,
    pub condition_estimate: f64,
}

impl CrbMatrix {
    /// Per-parameter bounds.
    pub fn diagonal(&self) -> Vec<f64> {
        self.entries.diagonal().iter().copied().collect()
    }
}

/// Trace and mean-term ingredients shared by every FIM form.
#[derive(Debug, Clone)]
pub struct FimTerms {
    pub dim: usize,
    pub snapshots: usize,
    /// `tr(Σ⁻¹ Σ_j)`
    pub trace: Vec<f64>,
    /// `tr(Σ⁻¹ Σ_j Σ⁻¹ Σ_k)`
    pub trace_product: RMatrix,
    /// `Σ_t Re{(∂μ_t/∂θ_j)ᴴ Σ⁻¹ (∂μ_t/∂θ_k)}`
    pub mean_term: RMatrix,
}

impl FimTerms {
    pub fn new(eval: &ModelEval) -> Result<Self> {
        let factor = HermitianFactor::new(&eval.scatter)?;
        let p = eval.n_params();
        let whitened: Vec<CMatrix> = eval
            .scatter_derivs
            .iter()
            .map(|d| factor.solve(d))
            .collect();
        let weighted_means: Vec<CMatrix> = eval
            .mean_jacobians
            .iter()
            .map(|d| factor.solve(d))
            .collect();
        let trace = whitened.iter().map(re_trace).collect();
        let mut trace_product = RMatrix::zeros(p, p);
        let mut mean_term = RMatrix::zeros(p, p);
        for j in 0..p {
            for k in j..p {
                let tp = re_trace_product(&whitened[j], &whitened[k]);
                let mt = re_inner(&eval.mean_jacobians[j], &weighted_means[k]);
                trace_product[(j, k)] = tp;
                trace_product[(k, j)] = tp;
                mean_term[(j, k)] = mt;
                mean_term[(k, j)] = mt;
            }
        }
        Ok(Self {
            dim: eval.dim(),
            snapshots: eval.snapshots(),
            trace,
            trace_product,
            mean_term,
        })
    }

    fn assemble<F: Fn(usize, usize) -> f64>(&self, entry: F) -> RMatrix {
        let p = self.trace.len();
        let mut f = RMatrix::zeros(p, p);
        for j in 0..p {
            for k in j..p {
                let v = entry(j, k);
                f[(j, k)] = v;
                f[(k, j)] = v;
            }
        }
        f
    }

    pub fn gaussian(&self) -> FimMatrix {
        let t = self.snapshots as f64;
        let entries =
            self.assemble(|j, k| 2.0 * self.mean_term[(j, k)] + t * self.trace_product[(j, k)]);
        FimMatrix {
            entries,
            family_tag: FimFamily::GaussianSB,
            moments_used: None,
        }
    }

    pub fn ems(&self, moments: &ModularMoments) -> Result<FimMatrix> {
        if moments.dim != self.dim {
            return Err(Error::Contract(format!(
                "EMS moments must be computed at dim M = {}, got dim {}",
                self.dim, moments.dim
            )));
        }
        let m = self.dim as f64;
        let t = self.snapshots as f64;
        let mean_scale = 2.0 / m * moments.e_q_phi2;
        let trace_scale = moments.e_q2_phi2 * t / (m * (m + 1.0));
        let entries = self.assemble(|j, k| {
            let tt = self.trace[j] * self.trace[k];
            -t * tt
                + mean_scale * self.mean_term[(j, k)]
                + trace_scale * (tt + self.trace_product[(j, k)])
        });
        Ok(FimMatrix {
            entries,
            family_tag: FimFamily::EMS,
            moments_used: Some(*moments),
        })
    }

    pub fn evs(&self, moments: &ModularMoments) -> Result<FimMatrix> {
        let total = self.dim * self.snapshots;
        if moments.dim != total {
            return Err(Error::Contract(format!(
                "EVS moments must be computed at dim M·T = {total}, got dim {}",
                moments.dim
            )));
        }
        let m = self.dim as f64;
        let t = self.snapshots as f64;
        let mt = m * t;
        let mean_scale = 2.0 / mt * moments.e_q_phi2;
        let trace_scale = moments.e_q2_phi2 / (m * (mt + 1.0));
        let entries = self.assemble(|j, k| {
            let tt = self.trace[j] * self.trace[k];
            -t * t * tt
                + mean_scale * self.mean_term[(j, k)]
                + trace_scale * (t * tt + self.trace_product[(j, k)])
        });
        Ok(FimMatrix {
            entries,
            family_tag: FimFamily::EVS,
            moments_used: Some(*moments),
        })
    }
}

/// Slepian-Bangs FIM for i.i.d. complex Gaussian snapshots.
pub fn fim_gaussian_sb(eval: &ModelEval) -> Result<FimMatrix> {
    Ok(FimTerms::new(eval)?.gaussian())
}

/// FIM for i.i.d. elliptical snapshots; `moments` at dim `M`.
pub fn fim_ems(eval: &ModelEval, moments: &ModularMoments) -> Result<FimMatrix> {
    FimTerms::new(eval)?.ems(moments)
}

/// FIM for vector-elliptical data; `moments` at dim `M·T`.
pub fn fim_evs(eval: &ModelEval, moments: &ModularMoments) -> Result<FimMatrix> {
    FimTerms::new(eval)?.evs(moments)
}

/// Inverts a FIM, refusing near-singular ones.
pub fn crb_from_fim(fim: &FimMatrix) -> Result<CrbMatrix> {
    let eig = SymmetricEigen::new(fim.entries.clone());
    let max = eig
        .eigenvalues
        .iter()
        .copied()
        .fold(f64::NEG_INFINITY, f64::max);
    let min = eig
        .eigenvalues
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min);
    let condition = if min > 0.0 { max / min } else { f64::INFINITY };
    if !(condition <= CRB_MAX_CONDITION) {
        return Err(Error::SingularFim { condition });
    }
    let inv_diag = eig.eigenvalues.map(|l| 1.0 / l);
    let v = &eig.eigenvectors;
    let inv = v * RMatrix::from_diagonal(&inv_diag) * v.transpose();
    let entries = (&inv + inv.transpose()) * 0.5;
    Ok(CrbMatrix {
        entries,
        condition_estimate: condition,
    })
}
