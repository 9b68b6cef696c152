//! Experiment configuration: the JSON documents driving every command.
//!
//! A configuration file is one JSON object with an optional block per
//! command plus the run-wide `seed` and `output_dir`. Parsing is strict
//! (unknown fields are rejected) and every numeric invariant is checked
//! before any computation starts, mirroring the published schema document
//! (`schema/experiment-config.schema.json` at the repository root). Every
//! tolerance used by a command lives here with a documented default; the
//! code has no hidden thresholds.

use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

/// Error raised while loading or validating a configuration.
#[derive(Debug)]
pub enum ConfigError {
    /// The file could not be read.
    Io(std::io::Error),
    /// The document is not valid JSON or does not match the schema shape.
    Parse(String),
    /// The document parses but violates a numeric invariant.
    Invalid(String),
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Io(e) => write!(f, "cannot read configuration: {e}"),
            Self::Parse(m) => write!(f, "configuration does not match the schema: {m}"),
            Self::Invalid(m) => write!(f, "invalid configuration: {m}"),
        }
    }
}

impl std::error::Error for ConfigError {}

fn invalid(m: impl Into<String>) -> ConfigError {
    ConfigError::Invalid(m.into())
}

/// Top-level configuration document.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    /// Seed for the sample-point jitter used by the verification suites.
    #[serde(default)]
    pub seed: u64,
    /// Output directory for reports and data files; falls back to the
    /// `FRACBLOW_OUTPUT_DIR` environment variable, then the working
    /// directory.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output_dir: Option<String>,
    /// Verification-suite block.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verify: Option<VerifyConfig>,
    /// Scalar blow-up run block.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fode: Option<FodeConfig>,
    /// Field simulation block.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub simulate: Option<SimulateConfig>,
    /// Regime classification block.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub classify: Option<ClassifyConfig>,
}

impl ExperimentConfig {
    /// Loads and validates a configuration file.
    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(ConfigError::Io)?;
        Self::from_json(&text)
    }

    /// Parses and validates a configuration document.
    pub fn from_json(text: &str) -> Result<Self, ConfigError> {
        let cfg: Self = serde_json::from_str(text).map_err(|e| ConfigError::Parse(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    /// Checks every numeric invariant of every present block.
    pub fn validate(&self) -> Result<(), ConfigError> {
        if let Some(v) = &self.verify {
            v.validate()?;
        }
        if let Some(f) = &self.fode {
            f.validate()?;
        }
        if let Some(s) = &self.simulate {
            s.validate()?;
        }
        if let Some(c) = &self.classify {
            c.validate()?;
        }
        Ok(())
    }
}

/// One verification suite.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    /// Grid right-sided Caputo derivative of the time weight against its
    /// closed form.
    TimeWeight,
    /// Quadrature of the time-weight integrals against the closed-form
    /// constants and their horizon powers.
    WindowConstants,
    /// Composition identity: fractional integral of the fractional
    /// derivative recovers the function.
    Composition,
    /// Singular-integral fractional Laplacian of the spatial weight against
    /// the closed form, plus the scale-covariance law.
    SpaceWeight,
    /// Conjugate-weight integral against its scaling bound and reference
    /// value.
    ConjugateWeight,
    /// Predictor-corrector solver against the Mittag-Leffler solution of
    /// the linear equation.
    FodeOracle,
    /// Numerical blow-up bracket inside the analytic window over a
    /// parameter grid.
    BlowupBracket,
    /// Trajectories started above the rest point never cross it.
    Barrier,
}

impl Suite {
    /// Kebab-case name used in check labels and on the command line.
    pub fn name(self) -> &'static str {
        match self {
            Self::TimeWeight => "time-weight",
            Self::WindowConstants => "window-constants",
            Self::Composition => "composition",
            Self::SpaceWeight => "space-weight",
            Self::ConjugateWeight => "conjugate-weight",
            Self::FodeOracle => "fode-oracle",
            Self::BlowupBracket => "blowup-bracket",
            Self::Barrier => "barrier",
        }
    }
}

fn positive(name: &str, v: f64) -> Result<(), ConfigError> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(invalid(format!("{name} must be finite and positive, got {v}")))
    }
}

fn each_positive(name: &str, vs: &[f64]) -> Result<(), ConfigError> {
    if vs.is_empty() {
        return Err(invalid(format!("{name} must not be empty")));
    }
    for &v in vs {
        positive(name, v)?;
    }
    Ok(())
}

fn each_order(name: &str, vs: &[f64]) -> Result<(), ConfigError> {
    each_positive(name, vs)?;
    for &v in vs {
        if v > 1.0 {
            return Err(invalid(format!("{name} entries must lie in (0, 1], got {v}")));
        }
    }
    Ok(())
}

fn each_power(name: &str, vs: &[f64]) -> Result<(), ConfigError> {
    if vs.is_empty() {
        return Err(invalid(format!("{name} must not be empty")));
    }
    for &v in vs {
        if !(v.is_finite() && v > 1.0) {
            return Err(invalid(format!("{name} entries must exceed 1, got {v}")));
        }
    }
    Ok(())
}

/// Configuration of the verification suites.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct VerifyConfig {
    /// Suites to run, in order; must not be empty.
    pub suites: Vec<Suite>,
    /// Time-weight suite parameters.
    pub time_weight: TimeWeightConfig,
    /// Window-constants suite parameters.
    pub window: WindowConfig,
    /// Composition suite parameters.
    pub composition: CompositionConfig,
    /// Space-weight suite parameters.
    pub space_weight: SpaceWeightConfig,
    /// Conjugate-weight suite parameters.
    pub conjugate: ConjugateConfig,
    /// Linear-oracle suite parameters.
    pub fode_oracle: FodeOracleConfig,
    /// Blow-up bracket suite parameters.
    pub bracket: BracketConfig,
    /// Barrier suite parameters.
    pub barrier: BarrierConfig,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            suites: Vec::new(),
            time_weight: TimeWeightConfig::default(),
            window: WindowConfig::default(),
            composition: CompositionConfig::default(),
            space_weight: SpaceWeightConfig::default(),
            conjugate: ConjugateConfig::default(),
            fode_oracle: FodeOracleConfig::default(),
            bracket: BracketConfig::default(),
            barrier: BarrierConfig::default(),
        }
    }
}

impl VerifyConfig {
    fn validate(&self) -> Result<(), ConfigError> {
        if self.suites.is_empty() {
            return Err(invalid("no suites selected"));
        }
        each_order("verify.time_weight.alpha", &self.time_weight.alpha)?;
        each_positive("verify.time_weight.eta", &self.time_weight.eta)?;
        if self.time_weight.sample_points < 3 {
            return Err(invalid("verify.time_weight.sample_points must be at least 3"));
        }
        positive("verify.time_weight.tolerance", self.time_weight.tolerance)?;
        each_order("verify.window.alpha", &self.window.alpha)?;
        each_power("verify.window.p", &self.window.p)?;
        each_positive("verify.window.eta", &self.window.eta)?;
        each_positive("verify.window.horizons", &self.window.horizons)?;
        positive("verify.window.tolerance", self.window.tolerance)?;
        each_order("verify.composition.delta", &self.composition.delta)?;
        if self.composition.sample_points < 3 {
            return Err(invalid("verify.composition.sample_points must be at least 3"));
        }
        positive("verify.composition.tolerance", self.composition.tolerance)?;
        positive("verify.composition.refinement_slack", self.composition.refinement_slack)?;
        if self.space_weight.sample_points < 2 {
            return Err(invalid("verify.space_weight.sample_points must be at least 2"));
        }
        positive("verify.space_weight.extent", self.space_weight.extent)?;
        each_positive("verify.space_weight.scales", &self.space_weight.scales)?;
        if !(self.space_weight.jitter.is_finite() && (0.0..=0.5).contains(&self.space_weight.jitter))
        {
            return Err(invalid("verify.space_weight.jitter must lie in [0, 0.5]"));
        }
        positive("verify.space_weight.tolerance", self.space_weight.tolerance)?;
        positive("verify.space_weight.scaling_tolerance", self.space_weight.scaling_tolerance)?;
        each_power("verify.conjugate.p", &self.conjugate.p)?;
        each_positive("verify.conjugate.scales", &self.conjugate.scales)?;
        positive("verify.conjugate.tolerance", self.conjugate.tolerance)?;
        positive("verify.conjugate.reference_tolerance", self.conjugate.reference_tolerance)?;
        each_order("verify.fode_oracle.alpha", &self.fode_oracle.alpha)?;
        if self.fode_oracle.lambda.is_empty() {
            return Err(invalid("verify.fode_oracle.lambda must not be empty"));
        }
        for &l in &self.fode_oracle.lambda {
            if !l.is_finite() {
                return Err(invalid("verify.fode_oracle.lambda entries must be finite"));
            }
        }
        positive("verify.fode_oracle.step", self.fode_oracle.step)?;
        positive("verify.fode_oracle.tolerance", self.fode_oracle.tolerance)?;
        positive("verify.fode_oracle.order_slack", self.fode_oracle.order_slack)?;
        each_order("verify.bracket.alpha", &self.bracket.alpha)?;
        each_power("verify.bracket.p", &self.bracket.p)?;
        each_positive("verify.bracket.b", &self.bracket.b)?;
        each_positive("verify.bracket.g0", &self.bracket.g0)?;
        positive("verify.bracket.classical_tolerance", self.bracket.classical_tolerance)?;
        each_positive("verify.barrier.offset", &self.barrier.offset)?;
        each_positive("verify.barrier.factor", &self.barrier.factor)?;
        for &f in &self.barrier.factor {
            if f <= 1.0 {
                return Err(invalid("verify.barrier.factor entries must exceed 1"));
            }
        }
        positive("verify.barrier.alpha", self.barrier.alpha)?;
        if self.barrier.alpha > 1.0 {
            return Err(invalid("verify.barrier.alpha must lie in (0, 1]"));
        }
        if !(self.barrier.p.is_finite() && self.barrier.p > 1.0) {
            return Err(invalid("verify.barrier.p must exceed 1"));
        }
        positive("verify.barrier.b", self.barrier.b)?;
        if !(self.barrier.forcing_slack.is_finite() && (0.0..1.0).contains(&self.barrier.forcing_slack))
        {
            return Err(invalid("verify.barrier.forcing_slack must lie in [0, 1)"));
        }
        positive("verify.barrier.t_end", self.barrier.t_end)?;
        Ok(())
    }
}

/// Time-weight suite: grid derivative against the closed form.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct TimeWeightConfig {
    /// Derivative orders.
    pub alpha: Vec<f64>,
    /// Contact orders of the weight.
    pub eta: Vec<f64>,
    /// Grid points per comparison.
    pub sample_points: usize,
    /// Bound on the normwise relative error.
    pub tolerance: f64,
}

impl Default for TimeWeightConfig {
    fn default() -> Self {
        Self {
            alpha: vec![0.3, 0.5, 0.7],
            eta: vec![3.0, 5.0],
            sample_points: 2001,
            tolerance: 1e-4,
        }
    }
}

/// Window-constants suite: quadrature against the closed forms.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct WindowConfig {
    /// Derivative orders.
    pub alpha: Vec<f64>,
    /// Nonlinearity powers.
    pub p: Vec<f64>,
    /// Contact orders.
    pub eta: Vec<f64>,
    /// Horizons over which the integrals are evaluated.
    pub horizons: Vec<f64>,
    /// Bound on the relative error of each constant.
    pub tolerance: f64,
}

impl Default for WindowConfig {
    fn default() -> Self {
        Self {
            alpha: vec![0.3, 0.5, 0.7],
            p: vec![1.5, 2.0, 3.0],
            eta: vec![3.0, 5.0],
            horizons: vec![0.5, 1.0, 4.0],
            tolerance: 1e-6,
        }
    }
}

/// Composition suite: integral of the derivative recovers the function.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct CompositionConfig {
    /// Derivative orders.
    pub delta: Vec<f64>,
    /// Grid points of the base comparison; the refinement check doubles
    /// this.
    pub sample_points: usize,
    /// Bound on the max-norm residual.
    pub tolerance: f64,
    /// Multiplicative slack on the halving of the residual under grid
    /// doubling.
    pub refinement_slack: f64,
}

impl Default for CompositionConfig {
    fn default() -> Self {
        Self {
            delta: vec![0.3, 0.5, 0.7],
            sample_points: 2001,
            tolerance: 1e-4,
            refinement_slack: 1.1,
        }
    }
}

/// Space-weight suite: singular integral against the closed form.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SpaceWeightConfig {
    /// Sample points across the comparison interval.
    pub sample_points: usize,
    /// Half-width of the comparison interval.
    pub extent: f64,
    /// Weight scales for the covariance law.
    pub scales: Vec<f64>,
    /// Jitter amplitude as a fraction of the sample spacing.
    pub jitter: f64,
    /// Bound on the absolute error against the closed form.
    pub tolerance: f64,
    /// Bound on the relative error of the covariance law.
    pub scaling_tolerance: f64,
}

impl Default for SpaceWeightConfig {
    fn default() -> Self {
        Self {
            sample_points: 401,
            extent: 5.0,
            scales: vec![0.5, 1.0, 2.0, 8.0],
            jitter: 0.25,
            tolerance: 1e-4,
            scaling_tolerance: 1e-10,
        }
    }
}

/// Conjugate-weight suite: integral against its scaling bound.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ConjugateConfig {
    /// Nonlinearity powers.
    pub p: Vec<f64>,
    /// Weight scales.
    pub scales: Vec<f64>,
    /// Multiplicative slack on the bound comparison.
    pub tolerance: f64,
    /// Absolute tolerance of the reference-value check.
    pub reference_tolerance: f64,
}

impl Default for ConjugateConfig {
    fn default() -> Self {
        Self {
            p: vec![1.5, 2.0, 3.0],
            scales: vec![0.5, 1.0, 2.0, 8.0],
            tolerance: 1e-6,
            reference_tolerance: 1e-3,
        }
    }
}

/// Linear-oracle suite: solver against the Mittag-Leffler solution.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct FodeOracleConfig {
    /// Derivative orders.
    pub alpha: Vec<f64>,
    /// Linear coefficients.
    pub lambda: Vec<f64>,
    /// Base step; the order check also runs at twice this step.
    pub step: f64,
    /// Bound on the relative error at the endpoint.
    pub tolerance: f64,
    /// Subtractive slack on the expected empirical order.
    pub order_slack: f64,
}

impl Default for FodeOracleConfig {
    fn default() -> Self {
        Self {
            alpha: vec![0.3, 0.5, 0.8],
            lambda: vec![-1.0, 1.0],
            step: 1e-3,
            tolerance: 1e-4,
            order_slack: 0.2,
        }
    }
}

/// Blow-up bracket suite: numerical bracket inside the analytic window.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct BracketConfig {
    /// Derivative orders.
    pub alpha: Vec<f64>,
    /// Nonlinearity powers.
    pub p: Vec<f64>,
    /// Coefficients.
    pub b: Vec<f64>,
    /// Initial values.
    pub g0: Vec<f64>,
    /// Absolute tolerance of the classical-endpoint reference check.
    pub classical_tolerance: f64,
}

impl Default for BracketConfig {
    fn default() -> Self {
        Self {
            alpha: vec![0.4, 0.6, 0.8],
            p: vec![1.5, 2.0, 3.0],
            b: vec![0.5, 1.0, 2.0],
            g0: vec![0.5, 1.0, 2.0],
            classical_tolerance: 1e-2,
        }
    }
}

/// Barrier suite: trajectories started above the rest point stay above it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct BarrierConfig {
    /// Rest-point offsets.
    pub offset: Vec<f64>,
    /// Initial values as multiples of the rest point (each must exceed 1).
    pub factor: Vec<f64>,
    /// Derivative order.
    pub alpha: f64,
    /// Nonlinearity power.
    pub p: f64,
    /// Coefficient.
    pub b: f64,
    /// Amplitude of the deterministic bounded forcing.
    pub forcing_slack: f64,
    /// Integration horizon.
    pub t_end: f64,
}

impl Default for BarrierConfig {
    fn default() -> Self {
        Self {
            offset: vec![0.5, 1.0, 2.0],
            factor: vec![1.01, 1.5, 3.0],
            alpha: 0.5,
            p: 2.0,
            b: 1.0,
            forcing_slack: 0.5,
            t_end: 2.0,
        }
    }
}

/// Scalar blow-up run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FodeConfig {
    /// Derivative order in (0, 1].
    pub alpha: f64,
    /// Coefficient of the power nonlinearity.
    #[serde(rename = "B")]
    pub b: f64,
    /// Nonlinearity power, above 1.
    pub p: f64,
    /// Initial value.
    pub g0: f64,
    /// Rest-point offset; 0 gives the pure power problem.
    #[serde(default)]
    pub offset: f64,
    /// Detection threshold of the blow-up bracket.
    #[serde(default = "d_threshold")]
    pub threshold: f64,
    /// Step-halving levels of the bracket refinement.
    #[serde(default = "d_refinements")]
    pub refinements: u32,
    /// Horizon of the optional trajectory export.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t_end: Option<f64>,
    /// Step of the optional trajectory export.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub step: Option<f64>,
    /// Absolute tolerance of the classical-endpoint reference check.
    #[serde(default = "d_tol_classical")]
    pub classical_tolerance: f64,
    /// Additional parameter combinations run alongside the primary one.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub sweep: Vec<FodeSweepEntry>,
}

fn d_threshold() -> f64 {
    1e8
}

fn d_refinements() -> u32 {
    8
}

fn d_tol_classical() -> f64 {
    1e-2
}

/// One sweep entry of the scalar blow-up run.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FodeSweepEntry {
    /// Derivative order in (0, 1].
    pub alpha: f64,
    /// Coefficient.
    #[serde(rename = "B")]
    pub b: f64,
    /// Power.
    pub p: f64,
    /// Initial value.
    pub g0: f64,
}

impl FodeConfig {
    fn validate(&self) -> Result<(), ConfigError> {
        validate_fode_entry("fode", self.alpha, self.b, self.p, self.g0)?;
        if !(self.offset.is_finite() && self.offset >= 0.0) {
            return Err(invalid("fode.offset must be finite and nonnegative"));
        }
        if !(self.threshold.is_finite() && self.threshold >= 1e6) {
            return Err(invalid("fode.threshold must be at least 1e6"));
        }
        match (self.t_end, self.step) {
            (None, None) => {}
            (Some(t), Some(h)) => {
                positive("fode.t_end", t)?;
                positive("fode.step", h)?;
                if h > t {
                    return Err(invalid("fode.step must not exceed fode.t_end"));
                }
            }
            _ => {
                return Err(invalid("fode.t_end and fode.step must be given together"));
            }
        }
        positive("fode.classical_tolerance", self.classical_tolerance)?;
        for (i, e) in self.sweep.iter().enumerate() {
            validate_fode_entry(&format!("fode.sweep[{i}]"), e.alpha, e.b, e.p, e.g0)?;
        }
        Ok(())
    }
}

fn validate_fode_entry(
    at: &str,
    alpha: f64,
    b: f64,
    p: f64,
    g0: f64,
) -> Result<(), ConfigError> {
    if !(alpha.is_finite() && alpha > 0.0 && alpha <= 1.0) {
        return Err(invalid(format!("{at}.alpha must lie in (0, 1]")));
    }
    if !(p.is_finite() && p > 1.0) {
        return Err(invalid(format!("{at}.p must exceed 1")));
    }
    positive(&format!("{at}.B"), b)?;
    positive(&format!("{at}.g0"), g0)?;
    Ok(())
}

/// Field simulation run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimulateConfig {
    /// Time-derivative order in (0, 1).
    pub alpha: f64,
    /// Diffusion order in (0, 2).
    pub beta: f64,
    /// Ambient dimension, 1 or 2.
    #[serde(default = "d_dim")]
    pub dim: u32,
    /// Nonlinearity power, above 1.
    pub p: f64,
    /// Nonlinearity coefficient as `[re, im]`; must be nonzero.
    #[serde(default = "d_one_c")]
    pub lambda: [f64; 2],
    /// Pairing multiplier as `[re, im]`; defaults to the canonical rotation
    /// `i^{-alpha}`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma: Option<[f64; 2]>,
    /// Data amplitude of the parameter pack (the datum below is used
    /// verbatim; this only enters the constant chains).
    #[serde(default = "d_one")]
    pub epsilon: f64,
    /// Data regularity of the parameter pack.
    #[serde(default)]
    pub sobolev: f64,
    /// Data decay rate of the parameter pack.
    #[serde(default = "d_half")]
    pub k: f64,
    /// Periodic box.
    pub grid: GridConfig,
    /// Initial datum.
    pub data: DatumConfig,
    /// Simulation horizon.
    pub t_end: f64,
    /// Time step.
    pub step: f64,
    /// Scale of the spatial weight used by the pairing series; at most a
    /// quarter of the box half-length. Defaults to exactly that quarter.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weight_scale: Option<f64>,
    /// Relative tolerance of the tracked-mode check for plane-wave data.
    #[serde(default = "d_tol_mode")]
    pub mode_tolerance: f64,
    /// Optional weak-identity residual evaluation.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weak_residual: Option<WeakResidualConfig>,
    /// Whether to run the differential-inequality diagnostic.
    #[serde(default)]
    pub inequality: bool,
    /// Comparability constant of the weight family at unit scale; measured
    /// when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c_nq: Option<f64>,
    /// Snapshot export stride in steps; 0 picks a stride that retains
    /// about eight snapshots.
    #[serde(default)]
    pub snapshot_stride: usize,
}

fn d_dim() -> u32 {
    1
}

fn d_one_c() -> [f64; 2] {
    [1.0, 0.0]
}

fn d_one() -> f64 {
    1.0
}

fn d_half() -> f64 {
    0.5
}

fn d_tol_mode() -> f64 {
    1e-3
}

/// Periodic box of the simulation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    /// Box half-length.
    pub half_length: f64,
    /// Points per axis; a power of two, at least 64.
    pub points_per_dim: usize,
}

/// Initial datum of the simulation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, tag = "kind", rename_all = "snake_case")]
pub enum DatumConfig {
    /// Spatially constant datum.
    Constant {
        /// Value as `[re, im]`.
        value: [f64; 2],
    },
    /// Radial Gaussian `amplitude exp(-(r/width)^2)`.
    Gaussian {
        /// Peak value as `[re, im]`.
        amplitude: [f64; 2],
        /// Radial width.
        #[serde(default = "d_one")]
        width: f64,
    },
    /// Plane wave `amplitude exp(i xi . x)` on integer modes.
    PlaneWave {
        /// Signed integer mode per axis.
        modes: Vec<i64>,
        /// Amplitude as `[re, im]`.
        amplitude: [f64; 2],
    },
}

/// Weak-identity residual evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeakResidualConfig {
    /// Horizon of the time weight; must land on the snapshot grid.
    pub horizon: f64,
    /// Contact order of the time weight.
    pub eta: f64,
    /// Bound on the residual.
    #[serde(default = "d_tol_residual")]
    pub tolerance: f64,
}

fn d_tol_residual() -> f64 {
    1e-2
}

impl SimulateConfig {
    fn validate(&self) -> Result<(), ConfigError> {
        if !(self.alpha.is_finite() && self.alpha > 0.0 && self.alpha < 1.0) {
            return Err(invalid("simulate.alpha must lie in (0, 1)"));
        }
        if !(self.beta.is_finite() && self.beta > 0.0 && self.beta < 2.0) {
            return Err(invalid("simulate.beta must lie in (0, 2)"));
        }
        if !(self.dim == 1 || self.dim == 2) {
            return Err(invalid("simulate.dim must be 1 or 2"));
        }
        if !(self.p.is_finite() && self.p > 1.0) {
            return Err(invalid("simulate.p must exceed 1"));
        }
        let [lr, li] = self.lambda;
        if !(lr.is_finite() && li.is_finite()) || (lr == 0.0 && li == 0.0) {
            return Err(invalid("simulate.lambda must be finite and nonzero"));
        }
        if let Some([gr, gi]) = self.gamma {
            if !(gr.is_finite() && gi.is_finite()) || (gr == 0.0 && gi == 0.0) {
                return Err(invalid("simulate.gamma must be finite and nonzero"));
            }
        }
        positive("simulate.epsilon", self.epsilon)?;
        if !(self.sobolev.is_finite() && self.sobolev >= 0.0) {
            return Err(invalid("simulate.sobolev must be finite and nonnegative"));
        }
        if !self.k.is_finite() {
            return Err(invalid("simulate.k must be finite"));
        }
        positive("simulate.grid.half_length", self.grid.half_length)?;
        let n = self.grid.points_per_dim;
        if n < 64 || n & (n - 1) != 0 {
            return Err(invalid(
                "simulate.grid.points_per_dim must be a power of two, at least 64",
            ));
        }
        match &self.data {
            DatumConfig::Constant { value } | DatumConfig::PlaneWave { amplitude: value, .. } => {
                if !(value[0].is_finite() && value[1].is_finite()) {
                    return Err(invalid("simulate.data values must be finite"));
                }
            }
            DatumConfig::Gaussian { amplitude, width } => {
                if !(amplitude[0].is_finite() && amplitude[1].is_finite()) {
                    return Err(invalid("simulate.data values must be finite"));
                }
                positive("simulate.data.width", *width)?;
            }
        }
        if let DatumConfig::PlaneWave { modes, .. } = &self.data {
            if modes.len() != self.dim as usize {
                return Err(invalid("simulate.data.modes must have one entry per dimension"));
            }
        }
        positive("simulate.t_end", self.t_end)?;
        positive("simulate.step", self.step)?;
        if self.step > self.t_end {
            return Err(invalid("simulate.step must not exceed simulate.t_end"));
        }
        if let Some(r) = self.weight_scale {
            positive("simulate.weight_scale", r)?;
            if !(r <= self.grid.half_length / 4.0) {
                return Err(invalid(
                    "simulate.weight_scale must not exceed a quarter of the box half-length",
                ));
            }
        }
        positive("simulate.mode_tolerance", self.mode_tolerance)?;
        if let Some(w) = &self.weak_residual {
            positive("simulate.weak_residual.horizon", w.horizon)?;
            positive("simulate.weak_residual.eta", w.eta)?;
            positive("simulate.weak_residual.tolerance", w.tolerance)?;
            if w.horizon > self.t_end {
                return Err(invalid(
                    "simulate.weak_residual.horizon must not exceed simulate.t_end",
                ));
            }
        }
        if let Some(c) = self.c_nq {
            positive("simulate.c_nq", c)?;
        }
        Ok(())
    }
}

/// Regime classification run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassifyConfig {
    /// Time-derivative order in (0, 1).
    pub alpha: f64,
    /// Diffusion order in (0, 2).
    pub beta: f64,
    /// Ambient dimension.
    #[serde(default = "d_dim")]
    pub dim: u32,
    /// Nonlinearity power, above 1.
    pub p: f64,
    /// Nonlinearity coefficient as `[re, im]`.
    #[serde(default = "d_one_c")]
    pub lambda: [f64; 2],
    /// Pairing multiplier as `[re, im]`; defaults to the canonical rotation
    /// `i^{-alpha}`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma: Option<[f64; 2]>,
    /// Data amplitude.
    #[serde(default = "d_one")]
    pub epsilon: f64,
    /// Data regularity.
    #[serde(default)]
    pub sobolev: f64,
    /// Data decay rate.
    #[serde(default = "d_half")]
    pub k: f64,
    /// Declared data shape.
    pub profile: ProfileConfig,
    /// Comparability constant at unit scale; measured when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c_nq: Option<f64>,
    /// Optional radial datum enabling quadrature-backed conditions.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub datum: Option<RadialDatumConfig>,
    /// Optional parameter sweep emitted as a verdict table.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sweep: Option<ClassifySweepConfig>,
}

/// Declared data shape of the classification.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProfileConfig {
    /// Qualitative shape.
    pub kind: ProfileKindConfig,
    /// Which data component carries the declaration.
    pub route: RouteConfig,
    /// Declared functional value or pointwise factor.
    #[serde(default = "d_one")]
    pub margin: f64,
}

/// Qualitative data shape.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProfileKindConfig {
    /// Integrable data with a declared sign functional.
    Integrable,
    /// Square-integrable data of declared regularity.
    Sobolev,
    /// Data dominating a power outside the unit ball.
    OuterSingular,
    /// Data dominating a power inside the unit ball.
    InnerSingular,
}

/// Data component carrying the declaration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RouteConfig {
    /// First rotated component.
    RealPart,
    /// Second rotated component.
    ImagPart,
    /// Rotated pairing against the multiplier.
    Pairing,
}

/// Radial datum supplied to the classifier.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, tag = "kind", rename_all = "snake_case")]
pub enum RadialDatumConfig {
    /// `amplitude exp(-(r/width)^2)`.
    Gaussian {
        /// Peak value as `[re, im]`.
        amplitude: [f64; 2],
        /// Radial width.
        #[serde(default = "d_one")]
        width: f64,
    },
}

/// Parameter sweep of the classification.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ClassifySweepConfig {
    /// Powers to sweep; the base power when empty.
    pub p: Vec<f64>,
    /// Amplitudes to sweep; the base amplitude when empty.
    pub epsilon: Vec<f64>,
}

impl Default for ClassifySweepConfig {
    fn default() -> Self {
        Self { p: Vec::new(), epsilon: Vec::new() }
    }
}

impl ClassifyConfig {
    fn validate(&self) -> Result<(), ConfigError> {
        if !(self.alpha.is_finite() && self.alpha > 0.0 && self.alpha < 1.0) {
            return Err(invalid("classify.alpha must lie in (0, 1)"));
        }
        if !(self.beta.is_finite() && self.beta > 0.0 && self.beta < 2.0) {
            return Err(invalid("classify.beta must lie in (0, 2)"));
        }
        if self.dim == 0 {
            return Err(invalid("classify.dim must be positive"));
        }
        if !(self.p.is_finite() && self.p > 1.0) {
            return Err(invalid("classify.p must exceed 1"));
        }
        let [lr, li] = self.lambda;
        if !(lr.is_finite() && li.is_finite()) || (lr == 0.0 && li == 0.0) {
            return Err(invalid("classify.lambda must be finite and nonzero"));
        }
        if let Some([gr, gi]) = self.gamma {
            if !(gr.is_finite() && gi.is_finite()) || (gr == 0.0 && gi == 0.0) {
                return Err(invalid("classify.gamma must be finite and nonzero"));
            }
        }
        positive("classify.epsilon", self.epsilon)?;
        if !(self.sobolev.is_finite() && self.sobolev >= 0.0) {
            return Err(invalid("classify.sobolev must be finite and nonnegative"));
        }
        if !self.k.is_finite() {
            return Err(invalid("classify.k must be finite"));
        }
        if !self.profile.margin.is_finite() {
            return Err(invalid("classify.profile.margin must be finite"));
        }
        if let Some(c) = self.c_nq {
            positive("classify.c_nq", c)?;
        }
        if let Some(RadialDatumConfig::Gaussian { amplitude, width }) = &self.datum {
            if !(amplitude[0].is_finite() && amplitude[1].is_finite()) {
                return Err(invalid("classify.datum.amplitude must be finite"));
            }
            positive("classify.datum.width", *width)?;
        }
        if let Some(sweep) = &self.sweep {
            for &p in &sweep.p {
                if !(p.is_finite() && p > 1.0) {
                    return Err(invalid("classify.sweep.p entries must exceed 1"));
                }
            }
            for &e in &sweep.epsilon {
                positive("classify.sweep.epsilon", e)?;
            }
        }
        Ok(())
    }
}
