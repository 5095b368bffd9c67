//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

mod common;

use std::process::ExitCode;
use std::time::Instant;

use common::{eval_at, model, rel_frob, theta_draws};
use ecfim::linalg::CMatrix;
use ecfim::models::default_theta;
use ecfim::sampling::{
    odd_sphere_moment_oracle, quartic_sphere_closed_form, quartic_sphere_oracle, sphere_moments,
    DatasetSampler,
};
use ecfim::tolerances::MC_STDERR_GATE;
use ecfim::{
    empirical_fim, fim_ems, fim_evs, fim_gaussian_sb, DensityGenerator, EcKind, ModularMoments,
    MomentMethod, QuadratureConfig, RngStream, ScoreContext,
};
use nalgebra::DVector;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Models exercised by the acceptance criteria, with their (M, T).
const MODELS: [(&str, usize, usize); 3] = [
    ("ula-doa", 4, 8),
    ("ar1-scatter", 3, 4),
    ("scalar-mean", 1, 5),
];

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        passed,
        detail: detail.into(),
    }
}

fn cfg() -> QuadratureConfig {
    QuadratureConfig::default()
}

fn gaussian_reduction(kind: EcKind) -> Outcome {
    let mut worst = 0.0f64;
    for (name, m, t) in MODELS {
        let model = model(name, m, t);
        for theta in theta_draws(name, 20, 101) {
            let (_, e) = eval_at(&model, &theta);
            let sb = fim_gaussian_sb(&e).unwrap();
            let f = match kind {
                EcKind::EMS => fim_ems(&e, &ModularMoments::gaussian(m)).unwrap(),
                EcKind::EVS => fim_evs(&e, &ModularMoments::gaussian(m * t)).unwrap(),
            };
            worst = worst.max(rel_frob(&f.entries, &sb.entries));
        }
    }
    outcome(
        worst < 1e-10,
        format!("max rel Frobenius {worst:.2e} (gate 1e-10)"),
    )
}

fn student_quadrature_moments() -> Outcome {
    let mut worst = 0.0f64;
    for d in [1.0, 3.0, 10.0] {
        let g = DensityGenerator::student(d).unwrap();
        for m in [1usize, 2, 4, 8] {
            let q = g
                .modular_moments(m, MomentMethod::Quadrature, &cfg())
                .unwrap();
            let mf = m as f64;
            let e1 = (d + mf) * mf / (d + mf + 1.0);
            let e2 = (d + mf) * mf * (mf + 1.0) / (d + mf + 1.0);
            worst = worst
                .max((q.e_q_phi2 - e1).abs() / e1)
                .max((q.e_q2_phi2 - e2).abs() / e2);
        }
    }
    outcome(
        worst < 1e-8,
        format!("max rel error {worst:.2e} (gate 1e-8)"),
    )
}

fn universal_identity() -> Outcome {
    let exp_grid: Vec<f64> = (0..=1200).map(|i| i as f64 * 0.1).collect();
    let root_grid: Vec<f64> = (0..=8000).map(|i| (i as f64 * 0.05).powi(2)).collect();
    let generators = [
        DensityGenerator::gaussian(),
        DensityGenerator::student(1.0).unwrap(),
        DensityGenerator::student(3.0).unwrap(),
        DensityGenerator::student(10.0).unwrap(),
        DensityGenerator::tabulate(exp_grid, |t| -t).unwrap(),
        DensityGenerator::tabulate(root_grid, |t| -(1.0 + t).sqrt()).unwrap(),
    ];
    let mut worst = 0.0f64;
    for g in &generators {
        for dim in 1..=8 {
            match g.first_moment_identity(dim, &cfg()) {
                Ok(r) => worst = worst.max((r.value + dim as f64).abs()),
                Err(e) => return outcome(false, format!("{} dim {dim}: {e}", g.description())),
            }
        }
    }
    outcome(
        worst < 1e-8,
        format!(
            "max |E[Qφ(Q)] + dim| {worst:.2e} over {} generators (gate 1e-8)",
            generators.len()
        ),
    )
}

fn student_limit() -> Outcome {
    let mut worst_ems = 0.0f64;
    let mut worst_evs = 0.0f64;
    for (name, m, t) in MODELS {
        let model = model(name, m, t);
        let (_, e) = eval_at(&model, &default_theta(name).unwrap());
        let gauss = fim_gaussian_sb(&e).unwrap();
        let ems = fim_ems(&e, &ModularMoments::student(1e6, m)).unwrap();
        let evs = fim_evs(&e, &ModularMoments::student(1e6, m * t)).unwrap();
        worst_ems = worst_ems.max(rel_frob(&ems.entries, &gauss.entries));
        worst_evs = worst_evs.max(rel_frob(&evs.entries, &gauss.entries));
    }
    outcome(
        worst_ems < 1e-5,
        format!("EMS max rel Frobenius {worst_ems:.2e} (gate 1e-5); EVS at dim MT {worst_evs:.2e} (informational)"),
    )
}

fn generators_under_test() -> [DensityGenerator; 2] {
    [
        DensityGenerator::gaussian(),
        DensityGenerator::student(3.0).unwrap(),
    ]
}

/// Runs the Monte Carlo matrix once per `(kind, n)` and applies `check` to every report.
fn mc_matrix(
    n_for: impl Fn(EcKind) -> usize,
    seed: u64,
    check: impl Fn(&ecfim::McReport) -> (bool, f64),
) -> Outcome {
    let mut worst = 0.0f64;
    let mut failures = Vec::new();
    let mut runs = 0;
    for (name, m, t) in MODELS {
        let model = model(name, m, t);
        let theta = model.params(&default_theta(name).unwrap()).unwrap();
        for g in generators_under_test() {
            for kind in [EcKind::EMS, EcKind::EVS] {
                let report =
                    empirical_fim(&model, &theta, &g, kind, n_for(kind), seed, &cfg()).unwrap();
                let (ok, z) = check(&report);
                worst = worst.max(z);
                runs += 1;
                if !ok {
                    failures.push(format!("{name}/{}/{kind:?} z={z:.2}", g.description()));
                }
            }
        }
    }
    let detail = if failures.is_empty() {
        format!("{runs} runs, max z {worst:.2} (gate {MC_STDERR_GATE})")
    } else {
        format!("{runs} runs, failing: {}", failures.join(", "))
    };
    outcome(failures.is_empty(), detail)
}

fn mc_score_validity() -> Outcome {
    mc_matrix(|_| 100_000, 2024, |r| (r.score_zero_mean(), r.max_score_z))
}

fn mc_fim_consistency() -> Outcome {
    mc_matrix(
        |kind| match kind {
            EcKind::EMS => 100_000,
            EcKind::EVS => 50_000,
        },
        2025,
        |r| (r.fim_consistent(), r.max_entry_z),
    )
}

fn random_hermitian(dim: usize, rng: &mut ChaCha8Rng) -> CMatrix {
    let a = CMatrix::from_fn(dim, dim, |_, _| {
        Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
    });
    (&a + a.adjoint()) * Complex64::new(0.5, 0.0)
}

fn sphere_oracles() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(303);
    let mut worst_cov = 0.0f64;
    let mut worst_z = 0.0f64;
    let mut ok = true;
    for dim in [1usize, 2, 3, 5] {
        let (_, second) = sphere_moments(dim, 100_000, 7);
        let target = CMatrix::identity(dim, dim) * Complex64::new(1.0 / dim as f64, 0.0);
        let cov_err = (second - target).norm();
        worst_cov = worst_cov.max(cov_err);
        ok &= cov_err < 0.02;

        let a = random_hermitian(dim, &mut rng);
        let b = random_hermitian(dim, &mut rng);
        let quartic = quartic_sphere_oracle(&a, &b, 1_000_000, 8);
        let exact = quartic_sphere_closed_form(&a, &b);
        // at dim 1 the quartic form is deterministic, so a roundoff floor joins the stderr
        let spread = quartic.stderr + 1e-9 / MC_STDERR_GATE * exact.abs();
        let z = (quartic.mean - exact).abs() / spread;
        ok &= z <= MC_STDERR_GATE;
        worst_z = worst_z.max(z);

        let v = DVector::from_fn(dim, |_, _| {
            Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
        });
        let odd = odd_sphere_moment_oracle(&v, &b, 1_000_000, 9);
        ok &= odd.within(0.0, MC_STDERR_GATE);
        worst_z = worst_z.max(odd.z_score(0.0));
    }
    outcome(ok, format!("max ‖E[uuᴴ] − I/dim‖_F {worst_cov:.4} (gate 0.02); max z {worst_z:.2} (gate {MC_STDERR_GATE})"))
}

fn structural_properties() -> Outcome {
    let ula = model("ula-doa", 4, 8);
    let mut cross_zero = true;
    let mut worst_prop = 0.0f64;
    for theta in theta_draws("ula-doa", 5, 404) {
        let (_, e) = eval_at(&ula, &theta);
        let gauss = fim_gaussian_sb(&e).unwrap();
        for d in [1.0, 3.0, 10.0] {
            let mom = ModularMoments::student(d, 4);
            let f = fim_ems(&e, &mom).unwrap();
            let g_evs = fim_evs(&e, &ModularMoments::student(d, 32)).unwrap();
            for j in 0..3 {
                cross_zero &= f.entries[(j, 3)] == 0.0 && f.entries[(3, j)] == 0.0;
                cross_zero &= g_evs.entries[(j, 3)] == 0.0 && g_evs.entries[(3, j)] == 0.0;
                for k in 0..3 {
                    let expected = mom.e_q_phi2 / 4.0 * gauss.entries[(j, k)];
                    let scale = expected.abs().max(f64::MIN_POSITIVE);
                    worst_prop = worst_prop.max((f.entries[(j, k)] - expected).abs() / scale);
                }
            }
        }
    }
    let ar1 = model("ar1-scatter", 3, 4);
    let (_, e) = eval_at(&ar1, &default_theta("ar1-scatter").unwrap());
    let gauss = fim_gaussian_sb(&e).unwrap();
    let student = fim_ems(&e, &ModularMoments::student(3.0, 3)).unwrap();
    let ratios: Vec<f64> = [(0, 0), (0, 1), (1, 1)]
        .iter()
        .map(|&(j, k)| student.entries[(j, k)] / gauss.entries[(j, k)])
        .collect();
    let spread = ratios.iter().cloned().fold(f64::MIN, f64::max)
        - ratios.iter().cloned().fold(f64::MAX, f64::min);
    outcome(
        cross_zero && worst_prop < 1e-10 && spread > 1e-3,
        format!(
            "cross block exactly zero: {cross_zero}; proportionality rel err {worst_prop:.2e} (gate 1e-10); ar1 ratio spread {spread:.3e} (gate > 1e-3)"
        ),
    )
}

fn single_snapshot_equivalence() -> Outcome {
    let mut worst = 0.0f64;
    let exp_grid: Vec<f64> = (0..=1200).map(|i| i as f64 * 0.1).collect();
    let generators = [
        DensityGenerator::gaussian(),
        DensityGenerator::student(3.0).unwrap(),
        DensityGenerator::tabulate(exp_grid, |t| -t).unwrap(),
    ];
    for (name, m, _) in MODELS {
        let model = model(name, m, 1);
        for theta in theta_draws(name, 5, 505) {
            let (_, e) = eval_at(&model, &theta);
            let ctx = ScoreContext::new(&e).unwrap();
            for g in &generators {
                let mom = g.moments(m, &cfg()).unwrap();
                let a = fim_ems(&e, &mom).unwrap();
                let b = fim_evs(&e, &mom).unwrap();
                worst = worst.max(rel_frob(&b.entries, &a.entries));
                let x = DatasetSampler::new(&e, g, EcKind::EMS, &cfg())
                    .unwrap()
                    .draw(&mut RngStream::new(6, 0).rng());
                let sa = ctx.score_ems(g, &x).unwrap();
                let sb = ctx.score_evs(g, &x).unwrap();
                for (u, v) in sa.iter().zip(&sb) {
                    worst = worst.max((u - v).abs() / u.abs().max(f64::MIN_POSITIVE));
                }
            }
        }
    }
    outcome(
        worst < 1e-12,
        format!("max rel difference {worst:.2e} (gate 1e-12)"),
    )
}

fn run_validate(dir: &std::path::Path) -> (i32, Vec<u8>) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let cfg = dir.join("validate.json");
    let code = ecfim::cli::run(
        [
            "ecfim",
            "validate",
            "--config",
            cfg.to_str().unwrap(),
            "--seed",
            "42",
            "--trials",
            "100000",
        ],
        &mut out,
        &mut err,
    );
    (code, out)
}

fn determinism() -> Outcome {
    let dir = tempfile::TempDir::new().unwrap();
    std::fs::write(
        dir.path().join("validate.json"),
        r#"{"model": {"name": "scalar-mean", "theta": [0.0], "M": 1, "T": 5},
            "generator": {"family": "student", "dof": 3}, "kind": "EMS"}"#,
    )
    .unwrap();
    let pool = |n| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .unwrap()
    };
    let (c1, a) = run_validate(dir.path());
    let (c2, b) = run_validate(dir.path());
    let (c3, c) = pool(1).install(|| run_validate(dir.path()));
    let (c4, d) = pool(4).install(|| run_validate(dir.path()));
    let identical = a == b && a == c && a == d && !a.is_empty();
    let codes = [c1, c2, c3, c4];
    outcome(
        identical && codes.iter().all(|&c| c == 0),
        format!(
            "{} bytes, identical across runs and 1/4 threads: {identical}; exit codes {codes:?}",
            a.len()
        ),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("Gaussian reduction (EMS)", || {
            gaussian_reduction(EcKind::EMS)
        }),
        ("Gaussian reduction (EVS)", || {
            gaussian_reduction(EcKind::EVS)
        }),
        ("Student analytic moments", student_quadrature_moments),
        ("Universal identity", universal_identity),
        ("Student to Gaussian limit", student_limit),
        ("MC score validity", mc_score_validity),
        ("MC FIM consistency", mc_fim_consistency),
        ("Sphere-moment oracles", sphere_oracles),
        ("Structural properties", structural_properties),
        ("T=1 equivalence", single_snapshot_equivalence),
        ("Determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let status = if result.passed { "PASS" } else { "FAIL" };
        if !result.passed {
            failed += 1;
        }
        println!(
            "[{status}] {:>2}. {name}: {} ({:.1}s)",
            i + 1,
            result.detail,
            start.elapsed().as_secs_f64()
        );
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
