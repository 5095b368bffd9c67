//! Fisher information matrices and Cramér-Rao bounds for complex elliptically
//! contoured data, with Monte Carlo oracles that check every closed form.
//!
//! The crate covers two matrix-variate families:
//!
//! - EMS: i.i.d. elliptical snapshots, one modular variate per snapshot.
//! - EVS: the vectorized data matrix is elliptical, one modular variate overall.
//!
//! See the `examples/` directory for one runnable program per capability.

// NaN must fail domain checks, hence `!(x > 0.0)` style comparisons.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod error;
pub mod fim;
pub mod generators;
pub mod interp;
pub mod linalg;
pub mod models;
pub mod quadrature;
pub mod sampling;
pub mod stats;
pub mod tolerances;

pub use error::{Error, Result};
pub use fim::{
    crb_from_fim, fim_ems, fim_evs, fim_gaussian_sb, CrbMatrix, FimFamily, FimMatrix, FimTerms,
};
pub use generators::{DensityGenerator, GeneratorFamily, ModularMoments, MomentMethod};
pub use models::{builtin, DerivativeMode, ModelEval, ModelFunction, ParamVector, ParametricModel};
pub use quadrature::QuadratureConfig;
pub use sampling::{
    empirical_fim, sample_dataset, sample_sphere, score_ems, score_evs, EcDataset, EcKind,
    McReport, RngStream, ScoreContext,
};
