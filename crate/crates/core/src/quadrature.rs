//! Adaptive Gauss-Legendre quadrature on finite and semi-infinite intervals.
//!
//! Each panel is integrated with a 20-point and a 10-point Gauss-Legendre rule;
//! their difference is the panel error estimate. Panels with the largest error
//! are bisected until the global error meets the requested tolerance.
//!
//! Semi-infinite integrals are mapped onto `[0, 1)` with `q = c s / (1 - s)`.
//! The last sliver `[1 - tau, 1)` is handled by a power-law tail fit, which also
//! detects integrands that do not decay fast enough to be integrable.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tolerances for every quadrature performed by the library.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct QuadratureConfig {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_subdivisions: usize,
    pub tail_cutoff_mass: f64,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            rel_tol: 1e-10,
            abs_tol: 1e-12,
            max_subdivisions: 200,
            tail_cutoff_mass: 1e-14,
        }
    }
}

impl QuadratureConfig {
    pub fn validate(&self) -> Result<()> {
        let positive = |v: f64| v.is_finite() && v > 0.0;
        if !positive(self.rel_tol) {
            return Err(Error::Domain(format!(
                "rel_tol must be positive, got {}",
                self.rel_tol
            )));
        }
        if !positive(self.abs_tol) {
            return Err(Error::Domain(format!(
                "abs_tol must be positive, got {}",
                self.abs_tol
            )));
        }
        if !positive(self.tail_cutoff_mass) {
            return Err(Error::Domain(format!(
                "tail_cutoff_mass must be positive, got {}",
                self.tail_cutoff_mass
            )));
        }
        if self.max_subdivisions < 10 {
            return Err(Error::Domain(format!(
                "max_subdivisions must be at least 10, got {}",
                self.max_subdivisions
            )));
        }
        Ok(())
    }
}

/// Value and error estimate of a quadrature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: f64,
    pub abs_error: f64,
    pub subdivisions: usize,
}

struct Rule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

/// Gauss-Legendre nodes and weights on [-1, 1] via Newton iteration on P_n.
fn gauss_legendre(n: usize) -> Rule {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            dp = nf * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    Rule { nodes, weights }
}

fn rules() -> &'static (Rule, Rule) {
    static RULES: OnceLock<(Rule, Rule)> = OnceLock::new();
    RULES.get_or_init(|| (gauss_legendre(20), gauss_legendre(10)))
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn panel<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Result<Panel> {
    let (fine, coarse) = rules();
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    let eval = |rule: &Rule| -> Result<f64> {
        let mut acc = 0.0;
        for (x, w) in rule.nodes.iter().zip(&rule.weights) {
            let y = f(mid + half * x);
            if !y.is_finite() {
                return Err(Error::Divergence {
                    dim: 0,
                    reason: format!("integrand is not finite at {}", mid + half * x),
                });
            }
            acc += w * y;
        }
        Ok(acc * half)
    };
    let value = eval(fine)?;
    let error = (value - eval(coarse)?).abs();
    Ok(Panel { a, b, value, error })
}

/// Adaptive integration of `f` over `[a, b]`, with optional interior breakpoints
/// that seed the initial panel set.
pub fn integrate<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    breakpoints: &[f64],
    cfg: &QuadratureConfig,
) -> Result<QuadResult> {
    let mut edges = vec![a];
    edges.extend(breakpoints.iter().copied().filter(|&x| x > a && x < b));
    edges.push(b);

    let mut heap = BinaryHeap::new();
    for w in edges.windows(2) {
        heap.push(panel(&f, w[0], w[1])?);
    }
    let initial = heap.len();
    let mut subdivisions = 0usize;
    loop {
        let value: f64 = heap.iter().map(|p| p.value).sum();
        let error: f64 = heap.iter().map(|p| p.error).sum();
        let target = cfg.abs_tol.max(cfg.rel_tol * value.abs());
        if error <= target {
            return Ok(QuadResult {
                value,
                abs_error: error,
                subdivisions,
            });
        }
        let worst = heap.pop().expect("at least one panel");
        let mid = 0.5 * (worst.a + worst.b);
        // Roundoff floor: the panel cannot be split any further.
        if subdivisions >= cfg.max_subdivisions.max(initial) || mid <= worst.a || mid >= worst.b {
            heap.push(worst);
            let value: f64 = heap.iter().map(|p| p.value).sum();
            let abs_error: f64 = heap.iter().map(|p| p.error).sum();
            return Err(Error::NonConvergent {
                estimate: value,
                abs_error,
                subdivisions,
            });
        }
        heap.push(panel(&f, worst.a, mid)?);
        heap.push(panel(&f, mid, worst.b)?);
        subdivisions += 1;
    }
}

/// Integrates `f` over `[0, inf)` after mapping `q = scale * s / (1 - s)`.
///
/// `scale` should be of the order of the bulk of the integrand's mass.
pub fn integrate_semi_infinite<F: Fn(f64) -> f64>(
    f: F,
    scale: f64,
    cfg: &QuadratureConfig,
) -> Result<QuadResult> {
    assert!(scale > 0.0);
    // h(tau) = (transformed integrand at s = 1 - tau) * tau, which behaves like
    // the tail mass beyond 1 - tau up to the power-law exponent.
    let h = |tau: f64| {
        let q = scale * (1.0 - tau) / tau;
        let jac = scale / (tau * tau);
        f(q) * jac * tau
    };

    let mut cut = None;
    for exp in 3..=10 {
        let tau = 10f64.powi(-exp);
        let (h0, h1, h2) = (h(tau), h(tau / 10.0), h(tau / 100.0));
        if !(h0.is_finite() && h1.is_finite() && h2.is_finite()) {
            return Err(Error::Divergence {
                dim: 0,
                reason: "integrand is not finite in the tail".into(),
            });
        }
        if h0 == 0.0 && h1 == 0.0 && h2 == 0.0 {
            cut = Some((tau, 0.0, 0.0));
            break;
        }
        // decay exponents of the tail mass over one decade
        let slope_a = (h0.abs() / h1.abs()).log10();
        let slope_b = (h1.abs() / h2.abs()).log10();
        if exp >= 5 && slope_b <= 1e-3 {
            return Err(Error::Divergence {
                dim: 0,
                reason: format!("integrand tail does not decay (exponent {slope_b:.3})"),
            });
        }
        if slope_a <= 0.0 || slope_b <= 0.0 {
            continue;
        }
        let tail = h0 / slope_b;
        let tail_err = (h0 / slope_a - tail).abs();
        if tail.abs() < cfg.tail_cutoff_mass {
            cut = Some((tau, 0.0, tail.abs()));
            break;
        }
        if tail_err < cfg.tail_cutoff_mass || exp == 10 {
            cut = Some((tau, tail, tail_err));
            if tail_err < cfg.tail_cutoff_mass {
                break;
            }
        }
    }
    let (tau, tail, tail_err) = cut.ok_or_else(|| Error::Divergence {
        dim: 0,
        reason: "could not bound the integrand tail".into(),
    })?;

    let g = |s: f64| {
        let one_minus = 1.0 - s;
        let q = scale * s / one_minus;
        f(q) * scale / (one_minus * one_minus)
    };
    let body = integrate(g, 0.0, 1.0 - tau, &[0.5, 0.9, 0.99], cfg)?;
    let value = body.value + tail;
    let abs_error = body.abs_error + tail_err;
    if abs_error > cfg.abs_tol.max(cfg.rel_tol * value.abs()) + cfg.tail_cutoff_mass {
        return Err(Error::NonConvergent {
            estimate: value,
            abs_error,
            subdivisions: body.subdivisions,
        });
    }
    Ok(QuadResult {
        value,
        abs_error,
        subdivisions: body.subdivisions,
    })
}
