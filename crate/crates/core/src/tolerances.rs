//! Numerical and statistical thresholds shared by the library and its test suites.

/// Relative symmetry tolerance of an assembled Fisher information matrix.
pub const FIM_SYMMETRY_REL: f64 = 1e-10;
/// PSD slack: the smallest eigenvalue may be as low as `-FIM_PSD_SLACK · λ_max`.
pub const FIM_PSD_SLACK: f64 = 1e-8;
/// Condition number above which a FIM is treated as singular.
pub const CRB_MAX_CONDITION: f64 = 1e12;

/// Monte Carlo gate: estimates must lie within this many standard errors.
pub const MC_STDERR_GATE: f64 = 4.0;
/// Significance level of Kolmogorov-Smirnov checks.
pub const KS_ALPHA: f64 = 0.01;
/// A Monte Carlo entry is flagged inconclusive when its standard error exceeds
/// this fraction of the entry's magnitude.
pub const MC_INCONCLUSIVE_FRACTION: f64 = 0.2;
/// Smallest number of trials accepted by the empirical FIM.
pub const MC_MIN_TRIALS: usize = 1000;
