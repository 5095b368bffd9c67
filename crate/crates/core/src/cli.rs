//! Command-line front end.
//!
//! Every subcommand reads a JSON run configuration (see
//! `schema/run_config.schema.json`) and emits JSON or CSV. Numbers are printed
//! with 17 significant digits so that doubles round-trip exactly.
//!
//! Exit codes: 0 success, 1 validation failure, 2 configuration error,
//! 3 numeric error.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize, Serializer};
use serde_json::value::RawValue;

use crate::error::Error;
use crate::fim::{crb_from_fim, FimMatrix, FimTerms};
use crate::generators::{DensityGenerator, ModularMoments, MomentMethod};
use crate::linalg::{CMatrix, RMatrix};
use crate::models::{builtin, default_theta, ParamVector, ParametricModel};
use crate::quadrature::QuadratureConfig;
use crate::sampling::{empirical_fim, sample_dataset, EcDataset, EcKind, McReport, RngStream};

/// Default number of Monte Carlo trials for `validate`.
pub const DEFAULT_TRIALS: usize = 100_000;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_NUMERIC: i32 = 3;

/// The JSON schema for run configurations.
pub const RUN_CONFIG_SCHEMA: &str = include_str!("../schema/run_config.schema.json");

#[derive(Debug, Parser)]
#[command(
    name = "ecfim",
    version,
    about = "Fisher information and CRBs for elliptically contoured data"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// JSON run configuration.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[arg(long, global = true)]
    pub trials: Option<usize>,
    /// Output file; stdout when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<OutputFormat>,
    #[arg(long = "quadrature-rel-tol", global = true)]
    pub quadrature_rel_tol: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Modular-variate moments E[Qφ²(Q)] and E[Q²φ²(Q)].
    Moments,
    /// Closed-form Fisher information matrix.
    Fim,
    /// Cramér-Rao bound (inverse FIM).
    Crb,
    /// Monte Carlo check of the closed-form FIM and the zero-mean score.
    Validate,
    /// Draw one dataset.
    Sample,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelConfig {
    pub name: String,
    #[serde(default)]
    pub theta: Option<Vec<f64>>,
    #[serde(rename = "M")]
    pub m: usize,
    #[serde(rename = "T")]
    pub t: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FamilyName {
    Gaussian,
    Student,
    Tabulated,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorConfig {
    pub family: FamilyName,
    #[serde(default)]
    pub dof: Option<f64>,
    #[serde(default)]
    pub table_path: Option<PathBuf>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputConfig {
    #[serde(default)]
    pub format: OutputFormat,
    #[serde(default)]
    pub path: Option<PathBuf>,
}

fn default_kind() -> EcKind {
    EcKind::EMS
}

/// A complete run configuration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub model: ModelConfig,
    pub generator: GeneratorConfig,
    #[serde(default = "default_kind")]
    pub kind: EcKind,
    #[serde(default)]
    pub quadrature: QuadratureConfig,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub trials: Option<usize>,
    #[serde(default)]
    pub output: OutputConfig,
}

/// Failure of a CLI run, classified by exit code.
#[derive(Debug, Clone, PartialEq)]
pub enum CliError {
    Config { path: String, message: String },
    Numeric { path: String, message: String },
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Config { .. } | Self::Io(_) => EXIT_CONFIG,
            Self::Numeric { .. } => EXIT_NUMERIC,
        }
    }

    fn config(path: impl Into<String>, message: impl ToString) -> Self {
        Self::Config {
            path: path.into(),
            message: message.to_string(),
        }
    }

    fn numeric(path: impl Into<String>, message: impl ToString) -> Self {
        Self::Numeric {
            path: path.into(),
            message: message.to_string(),
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::Config { path, message } => write!(f, "config error at `{path}`: {message}"),
            Self::Numeric { path, message } => write!(f, "numeric error at `{path}`: {message}"),
            Self::Io(message) => write!(f, "I/O error: {message}"),
        }
    }
}

impl std::error::Error for CliError {}

/// Parses a run configuration, reporting the JSON path of the first problem.
pub fn parse_config(text: &str) -> Result<RunConfig, CliError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let cfg: RunConfig = serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        CliError::config(
            if path == "." {
                "<root>".to_string()
            } else {
                path
            },
            e.inner(),
        )
    })?;
    cfg.quadrature
        .validate()
        .map_err(|e| CliError::config("quadrature", e))?;
    if cfg.model.m == 0 {
        return Err(CliError::config("model.M", "must be at least 1"));
    }
    if cfg.model.t == 0 {
        return Err(CliError::config("model.T", "must be at least 1"));
    }
    match cfg.generator.family {
        FamilyName::Student if cfg.generator.dof.is_none() => {
            return Err(CliError::config(
                "generator.dof",
                "required for the student family",
            ));
        }
        FamilyName::Tabulated if cfg.generator.table_path.is_none() => {
            return Err(CliError::config(
                "generator.table_path",
                "required for the tabulated family",
            ));
        }
        _ => {}
    }
    if cfg.generator.dof.is_some() && cfg.generator.family != FamilyName::Student {
        return Err(CliError::config(
            "generator.dof",
            "only valid for the student family",
        ));
    }
    if cfg.generator.table_path.is_some() && cfg.generator.family != FamilyName::Tabulated {
        return Err(CliError::config(
            "generator.table_path",
            "only valid for the tabulated family",
        ));
    }
    if let Some(0) = cfg.trials {
        return Err(CliError::config("trials", "must be positive"));
    }
    Ok(cfg)
}

/// Reads a two-column CSV table `t,log_g` (header row optional).
pub fn read_table(path: &Path) -> Result<(Vec<f64>, Vec<f64>), CliError> {
    let text = fs::read_to_string(path).map_err(|e| {
        CliError::config("generator.table_path", format!("{}: {e}", path.display()))
    })?;
    let mut grid = Vec::new();
    let mut log_g = Vec::new();
    for (line_no, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        let parsed: Option<Vec<f64>> = fields.iter().map(|f| f.parse().ok()).collect();
        match parsed {
            Some(v) if v.len() == 2 => {
                grid.push(v[0]);
                log_g.push(v[1]);
            }
            _ if line_no == 0 => continue,
            _ => {
                return Err(CliError::config(
                    "generator.table_path",
                    format!("{}: line {} is not `t,log_g`", path.display(), line_no + 1),
                ))
            }
        }
    }
    Ok((grid, log_g))
}

/// Everything a subcommand needs, resolved from the configuration.
pub struct Resolved {
    pub config: RunConfig,
    pub model: ParametricModel,
    pub theta: ParamVector,
    pub generator: DensityGenerator,
}

impl Resolved {
    pub fn new(config: RunConfig, base_dir: &Path) -> Result<Self, CliError> {
        let mc = &config.model;
        if mc.m == 0 {
            return Err(CliError::config("model.M", "must be at least 1"));
        }
        if mc.t == 0 {
            return Err(CliError::config("model.T", "must be at least 1"));
        }
        let model = builtin(&mc.name, mc.m, mc.t).map_err(|e| match e {
            Error::UnknownModel(_) => CliError::config("model.name", e),
            // the only remaining shape contract is on the snapshot dimension
            _ => CliError::config("model.M", e),
        })?;
        let values = match &mc.theta {
            Some(v) => v.clone(),
            None => default_theta(&mc.name)
                .ok_or_else(|| CliError::config("model.theta", "required"))?,
        };
        let theta = model
            .params(&values)
            .map_err(|e| CliError::config("model.theta", e))?;
        let generator = match config.generator.family {
            FamilyName::Gaussian => DensityGenerator::gaussian(),
            FamilyName::Student => {
                DensityGenerator::student(config.generator.dof.unwrap_or(f64::NAN))
                    .map_err(|e| CliError::config("generator.dof", e))?
            }
            FamilyName::Tabulated => {
                let rel = config.generator.table_path.clone().unwrap_or_default();
                let path = if rel.is_absolute() {
                    rel
                } else {
                    base_dir.join(rel)
                };
                let (grid, log_g) = read_table(&path)?;
                DensityGenerator::tabulated(grid, log_g)
                    .map_err(|e| CliError::config("generator.table_path", e))?
                    .with_description(format!("tabulated({})", path.display()))
            }
        };
        Ok(Self {
            config,
            model,
            theta,
            generator,
        })
    }

    fn moment_dim(&self) -> usize {
        match self.config.kind {
            EcKind::EMS => self.config.model.m,
            EcKind::EVS => self.config.model.m * self.config.model.t,
        }
    }

    pub fn moments(&self) -> Result<ModularMoments, CliError> {
        self.generator
            .moments(self.moment_dim(), &self.config.quadrature)
            .map_err(|e| CliError::numeric("generator", e))
    }

    fn model_error(&self, e: Error) -> CliError {
        match &e {
            Error::ParameterDomain { name, .. } => {
                let idx = self
                    .theta
                    .names()
                    .iter()
                    .position(|n| n == name)
                    .unwrap_or(0);
                CliError::config(format!("model.theta[{idx}]"), e)
            }
            _ => CliError::numeric("model", e),
        }
    }

    pub fn fim(&self) -> Result<FimMatrix, CliError> {
        let eval = self
            .model
            .evaluate(&self.theta)
            .map_err(|e| self.model_error(e))?;
        let terms = FimTerms::new(&eval).map_err(|e| CliError::numeric("model", e))?;
        let moments = self.moments()?;
        match self.config.kind {
            EcKind::EMS => terms.ems(&moments),
            EcKind::EVS => terms.evs(&moments),
        }
        .map_err(|e| CliError::numeric("kind", e))
    }

    fn check_model(&self) -> Result<(), CliError> {
        self.model
            .evaluate(&self.theta)
            .map(|_| ())
            .map_err(|e| self.model_error(e))
    }
}

/// Formats a double with 17 significant digits.
pub fn fmt17(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        x.to_string()
    }
}

/// A double serialized as a 17-significant-digit JSON number.
#[derive(Debug, Clone, Copy)]
struct Num(f64);

impl Serialize for Num {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if self.0.is_finite() {
            let raw = RawValue::from_string(fmt17(self.0)).map_err(serde::ser::Error::custom)?;
            raw.serialize(s)
        } else {
            s.serialize_none()
        }
    }
}

fn nums(v: &[f64]) -> Vec<Num> {
    v.iter().copied().map(Num).collect()
}

fn rows(m: &RMatrix) -> Vec<Vec<Num>> {
    m.row_iter()
        .map(|r| r.iter().copied().map(Num).collect())
        .collect()
}

#[derive(Serialize)]
struct MomentsOut<'a> {
    generator: &'a str,
    dim: usize,
    e_q_phi2: Num,
    e_q2_phi2: Num,
    method: MomentMethod,
    est_abs_error: Num,
}

impl<'a> MomentsOut<'a> {
    fn new(generator: &'a str, m: &ModularMoments) -> Self {
        Self {
            generator,
            dim: m.dim,
            e_q_phi2: Num(m.e_q_phi2),
            e_q2_phi2: Num(m.e_q2_phi2),
            method: m.method,
            est_abs_error: Num(m.est_abs_error),
        }
    }
}

#[derive(Serialize)]
struct FimOut<'a> {
    family: crate::fim::FimFamily,
    parameters: &'a [String],
    fim: Vec<Vec<Num>>,
    moments: Option<MomentsOut<'a>>,
}

#[derive(Serialize)]
struct CrbOut<'a> {
    parameters: &'a [String],
    crb: Vec<Vec<Num>>,
    diagonal: Vec<Num>,
    condition_estimate: Num,
}

#[derive(Serialize)]
struct ReportOut<'a> {
    model: &'a str,
    theta: Vec<Num>,
    parameters: &'a [String],
    generator: &'a str,
    kind: EcKind,
    seed: u64,
    n_trials: usize,
    passed: bool,
    fim_consistent: bool,
    score_zero_mean: bool,
    max_rel_err: Num,
    max_entry_z: Num,
    max_score_z: Num,
    empirical: Vec<Vec<Num>>,
    analytic: Vec<Vec<Num>>,
    per_entry_stderr: Vec<Vec<Num>>,
    score_mean: Vec<Num>,
    score_mean_stderr: Vec<Num>,
    inconclusive: &'a [(usize, usize)],
}

#[derive(Serialize)]
struct DatasetHeader<'a> {
    model: &'a str,
    theta: Vec<Num>,
    parameters: &'a [String],
    #[serde(rename = "M")]
    m: usize,
    #[serde(rename = "T")]
    t: usize,
    generator: &'a str,
    kind: EcKind,
    seed: u64,
    stream_index: u64,
}

#[derive(Serialize)]
struct DatasetOut<'a> {
    header: DatasetHeader<'a>,
    re: Vec<Vec<Num>>,
    im: Vec<Vec<Num>>,
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("output structs serialize");
    s.push('\n');
    s
}

fn matrix_csv(names: &[String], m: &RMatrix) -> String {
    let mut out = names.join(",");
    out.push('\n');
    for r in m.row_iter() {
        let line: Vec<String> = r.iter().map(|&x| fmt17(x)).collect();
        out.push_str(&line.join(","));
        out.push('\n');
    }
    out
}

/// CSV rows `t,m,re,im` (zero-based indices).
pub fn dataset_csv(x: &CMatrix) -> String {
    let mut out = String::from("t,m,re,im\n");
    for t in 0..x.ncols() {
        for m in 0..x.nrows() {
            let z = x[(m, t)];
            let _ = writeln!(out, "{t},{m},{},{}", fmt17(z.re), fmt17(z.im));
        }
    }
    out
}

/// Output of one subcommand: the main artifact plus optional sidecar files.
pub struct Artifact {
    pub body: String,
    pub sidecars: Vec<(PathBuf, String)>,
    pub exit_code: i32,
}

fn report_out<'a>(r: &'a McReport, res: &'a Resolved, names: &'a [String]) -> ReportOut<'a> {
    ReportOut {
        model: res.model.name(),
        theta: nums(res.theta.values()),
        parameters: names,
        generator: res.generator.description(),
        kind: res.config.kind,
        seed: r.master_seed,
        n_trials: r.n_trials,
        passed: r.passed(),
        fim_consistent: r.fim_consistent(),
        score_zero_mean: r.score_zero_mean(),
        max_rel_err: Num(r.max_rel_err),
        max_entry_z: Num(r.max_entry_z),
        max_score_z: Num(r.max_score_z),
        empirical: rows(&r.empirical.entries),
        analytic: rows(&r.analytic.entries),
        per_entry_stderr: rows(&r.per_entry_stderr),
        score_mean: nums(&r.score_mean),
        score_mean_stderr: nums(&r.score_mean_stderr),
        inconclusive: &r.inconclusive,
    }
}

/// Runs one subcommand on a resolved configuration.
pub fn execute(
    command: Command,
    res: &Resolved,
    out_path: Option<&Path>,
) -> Result<Artifact, CliError> {
    let format = res.config.output.format;
    let names = res.theta.names().to_vec();
    let ok = |body: String| Artifact {
        body,
        sidecars: Vec::new(),
        exit_code: EXIT_OK,
    };
    match command {
        Command::Moments => {
            let m = res.moments()?;
            Ok(ok(match format {
                OutputFormat::Json => to_json(&MomentsOut::new(res.generator.description(), &m)),
                OutputFormat::Csv => format!(
                    "quantity,value\ndim,{}\ne_q_phi2,{}\ne_q2_phi2,{}\nest_abs_error,{}\n",
                    m.dim,
                    fmt17(m.e_q_phi2),
                    fmt17(m.e_q2_phi2),
                    fmt17(m.est_abs_error)
                ),
            }))
        }
        Command::Fim => {
            let f = res.fim()?;
            Ok(ok(match format {
                OutputFormat::Json => to_json(&FimOut {
                    family: f.family_tag,
                    parameters: &names,
                    fim: rows(&f.entries),
                    moments: f
                        .moments_used
                        .as_ref()
                        .map(|m| MomentsOut::new(res.generator.description(), m)),
                }),
                OutputFormat::Csv => matrix_csv(&names, &f.entries),
            }))
        }
        Command::Crb => {
            let f = res.fim()?;
            let crb = crb_from_fim(&f).map_err(|e| CliError::numeric("model.theta", e))?;
            Ok(ok(match format {
                OutputFormat::Json => to_json(&CrbOut {
                    parameters: &names,
                    crb: rows(&crb.entries),
                    diagonal: nums(&crb.diagonal()),
                    condition_estimate: Num(crb.condition_estimate),
                }),
                OutputFormat::Csv => matrix_csv(&names, &crb.entries),
            }))
        }
        Command::Validate => {
            res.check_model()?;
            let trials = res.config.trials.unwrap_or(DEFAULT_TRIALS);
            let report = empirical_fim(
                &res.model,
                &res.theta,
                &res.generator,
                res.config.kind,
                trials,
                res.config.seed,
                &res.config.quadrature,
            )
            .map_err(|e| match e {
                Error::Contract(_) => CliError::config("trials", e),
                _ => CliError::numeric("generator", e),
            })?;
            let body = match format {
                OutputFormat::Json => to_json(&report_out(&report, res, &names)),
                OutputFormat::Csv => {
                    let mut s = String::from("j,k,empirical,analytic,stderr\n");
                    for j in 0..names.len() {
                        for k in j..names.len() {
                            let _ = writeln!(
                                s,
                                "{},{},{},{},{}",
                                names[j],
                                names[k],
                                fmt17(report.empirical.entries[(j, k)]),
                                fmt17(report.analytic.entries[(j, k)]),
                                fmt17(report.per_entry_stderr[(j, k)])
                            );
                        }
                    }
                    s
                }
            };
            Ok(Artifact {
                body,
                sidecars: Vec::new(),
                exit_code: if report.passed() {
                    EXIT_OK
                } else {
                    EXIT_VALIDATION
                },
            })
        }
        Command::Sample => {
            res.check_model()?;
            let data = sample_dataset(
                &res.model,
                &res.theta,
                &res.generator,
                res.config.kind,
                RngStream::new(res.config.seed, 0),
                &res.config.quadrature,
            )
            .map_err(|e| CliError::numeric("generator", e))?;
            let header = dataset_header(&data, res, &names);
            match format {
                OutputFormat::Json => Ok(ok(to_json(&DatasetOut {
                    header,
                    re: complex_rows(&data.snapshots, |z| z.re),
                    im: complex_rows(&data.snapshots, |z| z.im),
                }))),
                OutputFormat::Csv => {
                    let sidecars = out_path
                        .map(|p| vec![(sidecar_path(p), to_json(&header))])
                        .unwrap_or_default();
                    Ok(Artifact {
                        body: dataset_csv(&data.snapshots),
                        sidecars,
                        exit_code: EXIT_OK,
                    })
                }
            }
        }
    }
}

fn dataset_header<'a>(
    data: &EcDataset,
    res: &'a Resolved,
    names: &'a [String],
) -> DatasetHeader<'a> {
    DatasetHeader {
        model: res.model.name(),
        theta: nums(res.theta.values()),
        parameters: names,
        m: res.config.model.m,
        t: res.config.model.t,
        generator: res.generator.description(),
        kind: data.kind,
        seed: data.seed,
        stream_index: data.stream_index,
    }
}

fn complex_rows(x: &CMatrix, part: fn(&num_complex::Complex64) -> f64) -> Vec<Vec<Num>> {
    x.row_iter()
        .map(|r| r.iter().map(|z| Num(part(z))).collect())
        .collect()
}

/// `data.csv` → `data.csv.json`
pub fn sidecar_path(p: &Path) -> PathBuf {
    let mut s = p.as_os_str().to_owned();
    s.push(".json");
    PathBuf::from(s)
}

/// Loads the configuration named on the command line and applies flag overrides.
pub fn load(cli: &Cli) -> Result<Resolved, CliError> {
    let path = cli
        .config
        .as_ref()
        .ok_or_else(|| CliError::config("--config", "a configuration file is required"))?;
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::config("--config", format!("{}: {e}", path.display())))?;
    let mut config = parse_config(&text)?;
    if let Some(seed) = cli.seed {
        config.seed = seed;
    }
    if let Some(trials) = cli.trials {
        if trials == 0 {
            return Err(CliError::config("--trials", "must be positive"));
        }
        config.trials = Some(trials);
    }
    if let Some(format) = cli.format {
        config.output.format = format;
    }
    if let Some(out) = &cli.out {
        config.output.path = Some(out.clone());
    }
    if let Some(tol) = cli.quadrature_rel_tol {
        config.quadrature.rel_tol = tol;
        config
            .quadrature
            .validate()
            .map_err(|e| CliError::config("--quadrature-rel-tol", e))?;
    }
    let base = path.parent().unwrap_or_else(|| Path::new("."));
    Resolved::new(config, base)
}

/// Parses `args`, runs the subcommand and writes its artifact; returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
            let _ = write!(stderr, "{e}");
            return code;
        }
    };
    match run_cli(&cli, stdout) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

fn run_cli(cli: &Cli, stdout: &mut dyn Write) -> Result<i32, CliError> {
    let res = load(cli)?;
    let out_path = res.config.output.path.clone();
    let artifact = execute(cli.command, &res, out_path.as_deref())?;
    match &out_path {
        Some(p) => fs::write(p, &artifact.body)
            .map_err(|e| CliError::Io(format!("{}: {e}", p.display())))?,
        None => stdout
            .write_all(artifact.body.as_bytes())
            .map_err(|e| CliError::Io(e.to_string()))?,
    }
    for (p, body) in &artifact.sidecars {
        fs::write(p, body).map_err(|e| CliError::Io(format!("{}: {e}", p.display())))?;
    }
    Ok(artifact.exit_code)
}
