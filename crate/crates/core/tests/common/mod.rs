#![allow(dead_code)]

use ecfim::linalg::RMatrix;
use ecfim::{builtin, ModelEval, ParamVector, ParametricModel};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// (name, M, T) for the configurations used across the test suites.
pub const MODEL_SETUPS: [(&str, usize, usize); 3] = [
    ("ula-doa", 4, 3),
    ("ar1-scatter", 3, 4),
    ("scalar-mean", 1, 5),
];

pub fn model(name: &str, m: usize, t: usize) -> ParametricModel {
    builtin(name, m, t).unwrap()
}

/// Interior parameter draw for a built-in model.
pub fn random_theta<R: Rng>(name: &str, rng: &mut R) -> Vec<f64> {
    use std::f64::consts::PI;
    match name {
        "ula-doa" => vec![
            rng.random_range(0.5..2.0),
            rng.random_range(-PI..PI),
            rng.random_range(-PI / 2.0..PI / 2.0),
            rng.random_range(0.5..2.0),
        ],
        "ar1-scatter" => vec![rng.random_range(-0.9..0.9), rng.random_range(0.5..2.0)],
        "scalar-mean" => vec![rng.random_range(-2.0..2.0)],
        other => panic!("unknown model {other}"),
    }
}

/// `n` seeded interior draws for `name`.
pub fn theta_draws(name: &str, n: usize, seed: u64) -> Vec<Vec<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| random_theta(name, &mut rng)).collect()
}

pub fn eval_at(model: &ParametricModel, theta: &[f64]) -> (ParamVector, ModelEval) {
    let p = model.params(theta).unwrap();
    let e = model.evaluate(&p).unwrap();
    (p, e)
}

pub fn rel_frob(a: &RMatrix, b: &RMatrix) -> f64 {
    (a - b).norm() / b.norm()
}
