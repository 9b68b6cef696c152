//! Command-line interface: four subcommands over one configuration format.
//!
//! Every run loads a configuration (file plus command-line overrides),
//! validates it before computing anything, executes, and leaves a report
//! behind. Exit codes are part of the contract: 0 when every check passed,
//! 1 when a check failed, 2 when the configuration or environment was
//! rejected before computation. Identical configuration and seed give a
//! byte-identical hashed report section; wall-clock timings stay outside
//! the hash.

use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand};
use fracblow_core::constants::i_power;
use fracblow_core::fode::{self, FodeProblem};
use fracblow_core::regime::{self, RadialData};
use fracblow_core::testfn::{LaplacianOrder, SpaceTestFn, TimeTestFn};
use fracblow_core::{DataProfile, FracOrder, ProblemParams, ProfileKind, Regime, SignRoute};
use num_complex::Complex64;

use crate::config::{
    ClassifyConfig, DatumConfig, ExperimentConfig, FodeConfig, ProfileKindConfig,
    RadialDatumConfig, RouteConfig, SimulateConfig, Suite, VerifyConfig,
};
use crate::export;
use crate::pde::{self, ComplexField, PdeError, SpatialGrid};
use crate::report::{CheckResult, ReportBody, RunReport};
use crate::suites;

/// Numerical toolkit for fractional-in-time dispersive blow-up bounds.
#[derive(Debug, Parser)]
#[command(name = "fracblow", version, about)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run verification suites against independent references.
    Verify(VerifyArgs),
    /// Bracket the blow-up time of the scalar comparison problem.
    Fode(FodeArgs),
    /// Run the periodic field simulation with its diagnostics.
    Simulate(SimulateArgs),
    /// Classify a parameter set against the nonexistence criteria.
    Classify(ClassifyArgs),
}

#[derive(Debug, clap::Args)]
struct VerifyArgs {
    /// Configuration file; defaults apply without one.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Suites to run, replacing the configured list.
    #[arg(long = "suite", value_enum)]
    suite: Vec<Suite>,
    /// Replacement derivative orders for every selected suite.
    #[arg(long)]
    alpha: Vec<f64>,
    /// Replacement nonlinearity powers for every selected suite.
    #[arg(long)]
    p: Vec<f64>,
    /// Replacement contact orders for every selected suite.
    #[arg(long)]
    eta: Vec<f64>,
    /// Replacement composition orders.
    #[arg(long)]
    delta: Vec<f64>,
    /// Seed of the sample-point jitter.
    #[arg(long)]
    seed: Option<u64>,
    /// Output directory for the report.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Debug, clap::Args)]
struct FodeArgs {
    /// Configuration file; the direct flags below replace its fields.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Derivative order in (0, 1].
    #[arg(long)]
    alpha: Option<f64>,
    /// Coefficient of the power nonlinearity.
    #[arg(long = "B")]
    b: Option<f64>,
    /// Nonlinearity power, above 1.
    #[arg(long)]
    p: Option<f64>,
    /// Initial value.
    #[arg(long)]
    g0: Option<f64>,
    /// Rest-point offset.
    #[arg(long)]
    offset: Option<f64>,
    /// Detection threshold.
    #[arg(long)]
    threshold: Option<f64>,
    /// Refinement levels of the bracket.
    #[arg(long)]
    refinements: Option<u32>,
    /// Horizon of the trajectory export.
    #[arg(long)]
    t_end: Option<f64>,
    /// Step of the trajectory export.
    #[arg(long)]
    step: Option<f64>,
    /// Output directory for the report.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Debug, clap::Args)]
struct SimulateArgs {
    /// Configuration file with a simulate block.
    #[arg(long)]
    config: PathBuf,
    /// Seed echoed into the report.
    #[arg(long)]
    seed: Option<u64>,
    /// Output directory for the report and data files.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Debug, clap::Args)]
struct ClassifyArgs {
    /// Configuration file with a classify block.
    #[arg(long)]
    config: PathBuf,
    /// Emit the parameter-sweep verdict table even without a sweep block.
    #[arg(long)]
    sweep: bool,
    /// Seed echoed into the report.
    #[arg(long)]
    seed: Option<u64>,
    /// Output directory for the report and data files.
    #[arg(long)]
    output: Option<PathBuf>,
}

/// Executes a parsed invocation and returns the process exit code.
pub fn run(cli: Cli) -> u8 {
    let outcome = match cli.command {
        Command::Verify(args) => cmd_verify(args),
        Command::Fode(args) => cmd_fode(args),
        Command::Simulate(args) => cmd_simulate(args),
        Command::Classify(args) => cmd_classify(args),
    };
    match outcome {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            2
        }
    }
}

fn load_config(path: Option<&Path>) -> Result<ExperimentConfig, String> {
    match path {
        Some(p) => ExperimentConfig::load(p).map_err(|e| e.to_string()),
        None => Ok(ExperimentConfig::default()),
    }
}

/// Output directory: flag, then configuration, then the environment
/// variable `FRACBLOW_OUTPUT_DIR` (its only use), then the working
/// directory.
fn output_dir(flag: Option<PathBuf>, cfg: &ExperimentConfig) -> PathBuf {
    flag.or_else(|| cfg.output_dir.as_ref().map(PathBuf::from))
        .or_else(|| std::env::var_os("FRACBLOW_OUTPUT_DIR").map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("."))
}

/// Seals, writes, and prints the report; returns the exit code from its
/// checks.
fn finish_report(body: ReportBody, started: Instant, dir: &Path) -> Result<u8, String> {
    let report = RunReport::new(body, started.elapsed().as_secs_f64());
    report.print_summary();
    let path = report.write(dir).map_err(|e| format!("cannot write report: {e}"))?;
    println!("report: {}", path.display());
    Ok(if report.all_pass() { 0 } else { 1 })
}

fn echo(cfg: &ExperimentConfig) -> serde_json::Value {
    serde_json::to_value(cfg).expect("configurations serialize without error")
}

fn order(alpha: f64) -> FracOrder {
    FracOrder::new(alpha).expect("validated order")
}

fn complex(v: [f64; 2]) -> Complex64 {
    Complex64::new(v[0], v[1])
}

fn cmd_verify(args: VerifyArgs) -> Result<u8, String> {
    let started = Instant::now();
    let mut cfg = load_config(args.config.as_deref())?;
    if args.config.is_some() && cfg.verify.is_none() {
        return Err("configuration has no verify block".into());
    }
    let mut vcfg = cfg.verify.take().unwrap_or_default();
    if !args.suite.is_empty() {
        vcfg.suites = args.suite.clone();
    }
    apply_overrides(&mut vcfg, &args);
    if let Some(seed) = args.seed {
        cfg.seed = seed;
    }
    cfg.verify = Some(vcfg.clone());
    cfg.validate().map_err(|e| e.to_string())?;

    let mut checks = Vec::new();
    for &suite in &vcfg.suites {
        checks.extend(suites::run_suite(suite, &vcfg, cfg.seed));
    }
    let body = ReportBody {
        command: "verify".into(),
        config: echo(&cfg),
        seed: cfg.seed,
        checks,
        artifacts: vec![],
        result: None,
    };
    finish_report(body, started, &output_dir(args.output, &cfg))
}

/// Replaces the same-named parameter lists of every selected suite; an
/// empty flag leaves the configured list alone.
fn apply_overrides(vcfg: &mut VerifyConfig, args: &VerifyArgs) {
    if !args.alpha.is_empty() {
        vcfg.time_weight.alpha = args.alpha.clone();
        vcfg.window.alpha = args.alpha.clone();
        vcfg.fode_oracle.alpha = args.alpha.clone();
        vcfg.bracket.alpha = args.alpha.clone();
    }
    if !args.p.is_empty() {
        vcfg.window.p = args.p.clone();
        vcfg.conjugate.p = args.p.clone();
        vcfg.bracket.p = args.p.clone();
    }
    if !args.eta.is_empty() {
        vcfg.time_weight.eta = args.eta.clone();
        vcfg.window.eta = args.eta.clone();
    }
    if !args.delta.is_empty() {
        vcfg.composition.delta = args.delta.clone();
    }
}

fn cmd_fode(args: FodeArgs) -> Result<u8, String> {
    let started = Instant::now();
    let mut cfg = load_config(args.config.as_deref())?;
    let mut fcfg = match (cfg.fode.take(), args.config.is_some()) {
        (Some(f), _) => f,
        (None, true) => return Err("configuration has no fode block".into()),
        (None, false) => {
            let (alpha, b, p, g0) = match (args.alpha, args.b, args.p, args.g0) {
                (Some(a), Some(b), Some(p), Some(g)) => (a, b, p, g),
                _ => {
                    return Err(
                        "pass --config or all of --alpha, --B, --p, --g0".into(),
                    )
                }
            };
            FodeConfig {
                alpha,
                b,
                p,
                g0,
                offset: 0.0,
                threshold: 1e8,
                refinements: 8,
                t_end: None,
                step: None,
                classical_tolerance: 1e-2,
                sweep: vec![],
            }
        }
    };
    if let Some(v) = args.alpha {
        fcfg.alpha = v;
    }
    if let Some(v) = args.b {
        fcfg.b = v;
    }
    if let Some(v) = args.p {
        fcfg.p = v;
    }
    if let Some(v) = args.g0 {
        fcfg.g0 = v;
    }
    if let Some(v) = args.offset {
        fcfg.offset = v;
    }
    if let Some(v) = args.threshold {
        fcfg.threshold = v;
    }
    if let Some(v) = args.refinements {
        fcfg.refinements = v;
    }
    if let Some(v) = args.t_end {
        fcfg.t_end = Some(v);
    }
    if let Some(v) = args.step {
        fcfg.step = Some(v);
    }
    cfg.fode = Some(fcfg.clone());
    cfg.validate().map_err(|e| e.to_string())?;
    let dir = output_dir(args.output, &cfg);

    let mut checks = Vec::new();
    let mut artifacts = Vec::new();
    let mut payload = serde_json::Map::new();

    let problem = FodeProblem::new(order(fcfg.alpha), fcfg.b, fcfg.p, fcfg.g0, fcfg.offset)
        .map_err(|e| e.to_string())?;
    match fode::detect_blowup(problem, fcfg.threshold, fcfg.refinements) {
        Ok(est) => {
            checks.push(bracket_check("bracket/lower-edge", est.t_last_finite, est.t_lower, true));
            checks.push(bracket_check("bracket/upper-edge", est.t_threshold, est.t_upper, false));
            payload.insert(
                "estimate".into(),
                serde_json::to_value(est).expect("estimates serialize without error"),
            );
        }
        Err(fode::FodeError::NoBlowupInHorizon { horizon }) => {
            checks.push(CheckResult::flag("bracket/crossing", false).with_note(format!(
                "no threshold crossing within the search horizon t = {horizon:.6e}"
            )));
        }
        Err(e) => return Err(e.to_string()),
    }

    if fcfg.alpha == 1.0 {
        // order one and the pure power problem have the exact blow-up time
        // g0^{1-p} / (B (p-1)); hold the refined bracket midpoint to it
        let reference = fcfg.g0.powf(1.0 - fcfg.p) / (fcfg.b * (fcfg.p - 1.0));
        let problem = FodeProblem::new(order(1.0), fcfg.b, fcfg.p, fcfg.g0, fcfg.offset)
            .map_err(|e| e.to_string())?;
        match fode::detect_blowup(problem, fcfg.threshold, fcfg.refinements.max(9)) {
            Ok(est) => {
                let midpoint = 0.5 * (est.t_last_finite + est.t_threshold);
                checks.push(CheckResult::matches(
                    "classical-reference",
                    midpoint,
                    reference,
                    fcfg.classical_tolerance,
                ));
            }
            Err(e) => {
                checks.push(
                    CheckResult::flag("classical-reference", false)
                        .with_note(format!("evaluation failed: {e}")),
                );
            }
        }
    }

    if let (Some(t_end), Some(step)) = (fcfg.t_end, fcfg.step) {
        let sol = fode::solve_fode(problem, t_end, step).map_err(|e| e.to_string())?;
        export::write_trajectory_csv(&dir.join("fode-trajectory.csv"), &sol.trajectory)
            .map_err(|e| format!("cannot write trajectory: {e}"))?;
        artifacts.push("fode-trajectory.csv".into());
        payload.insert("trajectory_blew_up".into(), sol.blew_up.into());
    }

    if !fcfg.sweep.is_empty() {
        let entries = fcfg.sweep.clone();
        let threshold = fcfg.threshold;
        let refinements = fcfg.refinements;
        let results: Vec<(String, Result<fracblow_core::BlowupEstimate, String>)> =
            suites::pool().install(|| {
                use rayon::prelude::*;
                entries
                    .par_iter()
                    .map(|e| {
                        let label =
                            format!("sweep,alpha={},B={},p={},g0={}", e.alpha, e.b, e.p, e.g0);
                        let est = FodeProblem::new(order(e.alpha), e.b, e.p, e.g0, 0.0)
                            .and_then(|pr| fode::detect_blowup(pr, threshold, refinements))
                            .map_err(|err| err.to_string());
                        (label, est)
                    })
                    .collect()
            });
        let mut rows = Vec::new();
        for ((label, result), entry) in results.into_iter().zip(&entries) {
            match result {
                Ok(est) => {
                    checks.push(bracket_check(
                        format!("{label}/lower-edge"),
                        est.t_last_finite,
                        est.t_lower,
                        true,
                    ));
                    checks.push(bracket_check(
                        format!("{label}/upper-edge"),
                        est.t_threshold,
                        est.t_upper,
                        false,
                    ));
                    rows.push((entry.alpha, entry.b, entry.p, entry.g0, est));
                }
                Err(e) => checks.push(
                    CheckResult::flag(label, false).with_note(format!("evaluation failed: {e}")),
                ),
            }
        }
        export::write_fode_sweep_csv(&dir.join("fode-sweep.csv"), &rows)
            .map_err(|e| format!("cannot write sweep table: {e}"))?;
        artifacts.push("fode-sweep.csv".into());
    }

    let body = ReportBody {
        command: "fode".into(),
        config: echo(&cfg),
        seed: cfg.seed,
        checks,
        artifacts,
        result: Some(serde_json::Value::Object(payload)),
    };
    finish_report(body, started, &dir)
}

/// Bracket-edge check: the numerical edge against the analytic window
/// endpoint, with five percent slack on the upper side only (the threshold
/// crossing detects truncation, not the true singular time).
fn bracket_check(name: impl Into<String>, measured: f64, bound: f64, lower: bool) -> CheckResult {
    if lower {
        CheckResult::at_least(name, measured, bound, 0.0)
    } else {
        CheckResult::at_most(name, measured, bound, 0.05 * bound)
    }
}

fn cmd_simulate(args: SimulateArgs) -> Result<u8, String> {
    let started = Instant::now();
    let mut cfg = load_config(Some(&args.config))?;
    let scfg = cfg.simulate.clone().ok_or("configuration has no simulate block")?;
    if let Some(seed) = args.seed {
        cfg.seed = seed;
    }
    let dir = output_dir(args.output, &cfg);

    let gamma = scfg.gamma.map(complex).unwrap_or_else(|| i_power(-scfg.alpha));
    let params = ProblemParams::new(
        order(scfg.alpha),
        scfg.beta,
        scfg.dim,
        scfg.p,
        complex(scfg.lambda),
        scfg.epsilon,
        gamma,
        scfg.sobolev,
        scfg.k,
    )
    .map_err(|e| e.to_string())?;
    let grid = SpatialGrid::new(scfg.dim, scfg.grid.half_length, scfg.grid.points_per_dim)
        .map_err(|e| e.to_string())?;
    let u0 = build_datum(&scfg, grid)?;
    let weight_scale = scfg.weight_scale.unwrap_or(scfg.grid.half_length / 4.0);

    let mut checks = Vec::new();
    let mut artifacts = Vec::new();
    let mut payload = serde_json::Map::new();

    let traj = match pde::simulate(&params, &u0, scfg.t_end, scfg.step) {
        Ok(t) => t,
        Err(PdeError::Instability) => {
            checks.push(CheckResult::flag("stability", false).with_note(
                "update unstable at this step size; reduce the step and rerun",
            ));
            let body = ReportBody {
                command: "simulate".into(),
                config: echo(&cfg),
                seed: cfg.seed,
                checks,
                artifacts,
                result: None,
            };
            return finish_report(body, started, &dir);
        }
        Err(e) => return Err(e.to_string()),
    };

    let last = traj.fields().last().expect("trajectories keep at least the datum");
    let trajectory_check = if traj.blew_up() {
        CheckResult::flag("trajectory", true).with_note(format!(
            "field maximum crossed the truncation threshold at t = {:.6e}",
            traj.last_time()
        ))
    } else {
        CheckResult::flag("trajectory", true)
    };
    checks.push(trajectory_check);
    payload.insert("last_time".into(), traj.last_time().into());
    payload.insert("blew_up".into(), traj.blew_up().into());
    payload.insert("max_abs_final".into(), last.max_abs().into());

    if let DatumConfig::PlaneWave { modes, amplitude } = &scfg.data {
        let check = mode_oracle_check(&scfg, modes, complex(*amplitude), last);
        checks.push(check);
    }

    if let Some(wcfg) = &scfg.weak_residual {
        let name = "weak-residual";
        let result = (|| -> Result<f64, String> {
            let tw = TimeTestFn::new(wcfg.horizon, wcfg.eta).map_err(|e| e.to_string())?;
            let sw = SpaceTestFn::new(
                scfg.dim as usize,
                scfg.dim as f64 + scfg.beta,
                weight_scale,
            )
            .map_err(|e| e.to_string())?;
            pde::weak_residual(&traj, &params, &tw, &sw).map_err(|e| e.to_string())
        })();
        checks.push(match result {
            Ok(res) => CheckResult::at_most(name, res, 0.0, wcfg.tolerance),
            Err(e) => {
                CheckResult::flag(name, false).with_note(format!("evaluation failed: {e}"))
            }
        });
    }

    let mut inequality_report = None;
    if scfg.inequality {
        let weight =
            SpaceTestFn::new(scfg.dim as usize, scfg.dim as f64 + scfg.beta, weight_scale)
                .map_err(|e| e.to_string())?;
        let c_nq = match scfg.c_nq {
            Some(c) => c,
            None => measured_comparability(scfg.dim as usize, scfg.dim as f64 + scfg.beta, scfg.beta)?,
        };
        let rep = pde::check_pairing_inequality(&traj, &params, &weight, c_nq)
            .map_err(|e| e.to_string())?;
        checks.push(CheckResult::at_least("inequality/entry", rep.entry_ratio, 1.0, 0.0));
        checks.push(CheckResult::flag("inequality/barrier", rep.barrier_ok));
        if rep.margins.is_empty() {
            checks.push(CheckResult::flag("inequality/margins", false).with_note(
                "entry condition failed; the derivative series was not evaluated",
            ));
        } else {
            let worst = rep.margins.iter().copied().fold(f64::INFINITY, f64::min);
            checks.push(CheckResult::at_least(
                "inequality/margins",
                worst,
                0.0,
                0.05 * rep.scale,
            ));
        }
        payload.insert("inequality_pass".into(), rep.pass.into());
        payload.insert("entry_ratio".into(), rep.entry_ratio.into());
        payload.insert("barrier_level".into(), rep.barrier_level.into());
        export::write_pairing_csv(&dir.join("pairing.csv"), &rep.times, &rep.series)
            .map_err(|e| format!("cannot write pairing series: {e}"))?;
        artifacts.push("pairing.csv".into());
        export::write_inequality_csv(&dir.join("inequality.csv"), &rep)
            .map_err(|e| format!("cannot write inequality table: {e}"))?;
        artifacts.push("inequality.csv".into());
        inequality_report = Some(rep);
    }
    let _ = &inequality_report;

    let stride = if scfg.snapshot_stride > 0 {
        scfg.snapshot_stride
    } else {
        ((traj.fields().len() - 1) / 8).max(1)
    };
    let mut entries = Vec::new();
    let mut index = 0;
    while index < traj.fields().len() {
        let file = format!("snapshot-{:03}.csv", entries.len());
        let field = &traj.fields()[index];
        export::write_snapshot_csv(&dir.join(&file), field)
            .map_err(|e| format!("cannot write snapshot: {e}"))?;
        artifacts.push(file.clone());
        entries.push(export::SnapshotEntry { file, time: field.time() });
        if index + 1 == traj.fields().len() {
            break;
        }
        index = (index + stride).min(traj.fields().len() - 1);
    }
    export::write_snapshot_manifest(&dir.join("snapshots.json"), &entries)
        .map_err(|e| format!("cannot write snapshot manifest: {e}"))?;
    artifacts.push("snapshots.json".into());
    payload.insert("retained_snapshots".into(), (entries.len() as u64).into());

    let body = ReportBody {
        command: "simulate".into(),
        config: echo(&cfg),
        seed: cfg.seed,
        checks,
        artifacts,
        result: Some(serde_json::Value::Object(payload)),
    };
    finish_report(body, started, &dir)
}

fn build_datum(scfg: &SimulateConfig, grid: SpatialGrid) -> Result<ComplexField, String> {
    match &scfg.data {
        DatumConfig::Constant { value } => {
            ComplexField::constant(grid, complex(*value)).map_err(|e| e.to_string())
        }
        DatumConfig::Gaussian { amplitude, width } => {
            let a = complex(*amplitude);
            let w = *width;
            ComplexField::from_radial(grid, |r| a * (-(r / w) * (r / w)).exp())
                .map_err(|e| e.to_string())
        }
        DatumConfig::PlaneWave { modes, amplitude } => {
            ComplexField::plane_wave(grid, modes, complex(*amplitude)).map_err(|e| e.to_string())
        }
    }
}

/// Tracked plane-wave mode against the relaxation solution of the linear
/// equation, evaluated at the last retained time.
fn mode_oracle_check(
    scfg: &SimulateConfig,
    modes: &[i64],
    amplitude: Complex64,
    last: &ComplexField,
) -> CheckResult {
    let name = "mode-oracle";
    let result = (|| -> Result<f64, String> {
        let grid = last.grid();
        let xi_sq: f64 = modes
            .iter()
            .map(|&m| {
                let xi = std::f64::consts::PI * m as f64 / grid.half_length();
                xi * xi
            })
            .sum();
        let symbol = xi_sq.powf(scfg.beta / 2.0);
        let z = i_power(-scfg.alpha) * symbol * last.time().powf(scfg.alpha);
        let oracle = amplitude
            * fracblow_core::mittag_leffler(scfg.alpha, z).map_err(|e| e.to_string())?;
        let measured = last.mode_amplitude(modes).map_err(|e| e.to_string())?;
        Ok((measured - oracle).norm() / oracle.norm())
    })();
    match result {
        Ok(rel) => CheckResult::at_most(name, rel, 0.0, scfg.mode_tolerance),
        Err(e) => CheckResult::flag(name, false).with_note(format!("evaluation failed: {e}")),
    }
}

/// Comparability constant of the weight family, measured at unit scale the
/// same way the acceptance chain does: 401 radii within radius 10 in one
/// dimension, 101 in two.
fn measured_comparability(dim: usize, q: f64, beta: f64) -> Result<f64, String> {
    let s = LaplacianOrder::new(beta / 2.0).map_err(|e| e.to_string())?;
    let unit = SpaceTestFn::new(dim, q, 1.0).map_err(|e| e.to_string())?;
    let samples = if dim == 1 { 401 } else { 101 };
    unit.comparability_constant(s, 10.0, samples).map_err(|e| e.to_string())
}

fn cmd_classify(args: ClassifyArgs) -> Result<u8, String> {
    let started = Instant::now();
    let mut cfg = load_config(Some(&args.config))?;
    let ccfg = cfg.classify.clone().ok_or("configuration has no classify block")?;
    if let Some(seed) = args.seed {
        cfg.seed = seed;
    }
    let dir = output_dir(args.output, &cfg);

    let gamma = ccfg.gamma.map(complex).unwrap_or_else(|| i_power(-ccfg.alpha));
    let params = build_params(&ccfg, ccfg.p, ccfg.epsilon, gamma)?;
    let profile = DataProfile::new(
        profile_kind(ccfg.profile.kind),
        ccfg.k,
        ccfg.sobolev,
        route(ccfg.profile.route),
        ccfg.profile.margin,
    )
    .map_err(|e| e.to_string())?;
    let c_nq = match ccfg.c_nq {
        Some(c) => c,
        None => measured_comparability(ccfg.dim as usize, ccfg.dim as f64 + ccfg.beta, ccfg.beta)?,
    };
    let datum_fn: Option<Box<dyn Fn(f64) -> Complex64>> = ccfg.datum.as_ref().map(|d| {
        let RadialDatumConfig::Gaussian { amplitude, width } = d;
        let a = complex(*amplitude);
        let w = *width;
        Box::new(move |r: f64| a * (-(r / w) * (r / w)).exp()) as Box<dyn Fn(f64) -> Complex64>
    });
    let u0: RadialData = datum_fn.as_deref();

    let verdict = regime::classify(&params, &profile, c_nq, u0).map_err(|e| e.to_string())?;
    println!(
        "{}",
        serde_json::to_string_pretty(&verdict).expect("verdicts serialize without error")
    );

    let mut checks = Vec::new();
    checks.push(CheckResult::flag("applicable", verdict.regime != Regime::Inapplicable));
    for condition in &verdict.conditions {
        checks.push(CheckResult {
            name: format!("condition/{}", condition.name),
            pass: condition.holds,
            measured: if condition.margin.is_nan() { None } else { Some(condition.margin) },
            bound: None,
            tolerance: None,
            note: None,
        });
    }

    let mut artifacts = Vec::new();
    if args.sweep || ccfg.sweep.is_some() {
        let sweep = ccfg.sweep.clone().unwrap_or_default();
        let ps = if sweep.p.is_empty() { vec![ccfg.p] } else { sweep.p };
        let eps = if sweep.epsilon.is_empty() { vec![ccfg.epsilon] } else { sweep.epsilon };
        let mut rows = Vec::new();
        for &p in &ps {
            for &e in &eps {
                rows.push(sweep_row(&ccfg, &profile, c_nq, u0, gamma, p, e));
            }
        }
        export::write_classify_sweep_csv(&dir.join("verdict-sweep.csv"), &rows)
            .map_err(|e| format!("cannot write verdict table: {e}"))?;
        artifacts.push("verdict-sweep.csv".into());
    }

    let body = ReportBody {
        command: "classify".into(),
        config: echo(&cfg),
        seed: cfg.seed,
        checks,
        artifacts,
        result: Some(serde_json::to_value(&verdict).expect("verdicts serialize without error")),
    };
    finish_report(body, started, &dir)
}

fn build_params(
    ccfg: &ClassifyConfig,
    p: f64,
    epsilon: f64,
    gamma: Complex64,
) -> Result<ProblemParams, String> {
    ProblemParams::new(
        order(ccfg.alpha),
        ccfg.beta,
        ccfg.dim,
        p,
        complex(ccfg.lambda),
        epsilon,
        gamma,
        ccfg.sobolev,
        ccfg.k,
    )
    .map_err(|e| e.to_string())
}

fn profile_kind(kind: ProfileKindConfig) -> ProfileKind {
    match kind {
        ProfileKindConfig::Integrable => ProfileKind::Integrable,
        ProfileKindConfig::Sobolev => ProfileKind::Sobolev,
        ProfileKindConfig::OuterSingular => ProfileKind::OuterSingular,
        ProfileKindConfig::InnerSingular => ProfileKind::InnerSingular,
    }
}

fn route(r: RouteConfig) -> SignRoute {
    match r {
        RouteConfig::RealPart => SignRoute::RealPart,
        RouteConfig::ImagPart => SignRoute::ImagPart,
        RouteConfig::Pairing => SignRoute::Pairing,
    }
}

fn tag(value: impl serde::Serialize) -> String {
    match serde_json::to_value(value) {
        Ok(serde_json::Value::String(s)) => s,
        _ => String::new(),
    }
}

fn sweep_row(
    ccfg: &ClassifyConfig,
    profile: &DataProfile,
    c_nq: f64,
    u0: RadialData,
    gamma: Complex64,
    p: f64,
    epsilon: f64,
) -> export::SweepRow {
    let verdict = build_params(ccfg, p, epsilon, gamma)
        .and_then(|params| regime::classify(&params, profile, c_nq, u0).map_err(|e| e.to_string()));
    match verdict {
        Ok(v) => {
            let (bound_kind, bound_value, formula) = match v.bound {
                Some(b) => (tag(b.kind), b.value, b.formula.to_string()),
                None => (String::new(), None, String::new()),
            };
            export::SweepRow { p, epsilon, regime: tag(v.regime), bound_kind, bound_value, formula }
        }
        Err(_) => export::SweepRow {
            p,
            epsilon,
            regime: "error".into(),
            bound_kind: String::new(),
            bound_value: None,
            formula: String::new(),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cli_parses_the_documented_invocations() {
        let cli = Cli::try_parse_from([
            "fracblow", "verify", "--suite", "window-constants", "--alpha", "0.5", "--seed", "3",
        ])
        .unwrap();
        match cli.command {
            Command::Verify(a) => {
                assert_eq!(a.suite, vec![Suite::WindowConstants]);
                assert_eq!(a.alpha, vec![0.5]);
                assert_eq!(a.seed, Some(3));
            }
            _ => panic!("wrong command"),
        }

        let cli = Cli::try_parse_from([
            "fracblow", "fode", "--alpha", "0.5", "--B", "1.0", "--p", "2.0", "--g0", "1.0",
        ])
        .unwrap();
        match cli.command {
            Command::Fode(a) => {
                assert_eq!(a.b, Some(1.0));
                assert_eq!(a.alpha, Some(0.5));
            }
            _ => panic!("wrong command"),
        }
    }

    #[test]
    fn unknown_flags_are_rejected() {
        assert!(Cli::try_parse_from(["fracblow", "verify", "--sweet", "x"]).is_err());
        assert!(Cli::try_parse_from(["fracblow", "simulate"]).is_err());
    }

    #[test]
    fn fode_without_parameters_is_a_usage_error() {
        let code = run(Cli::try_parse_from(["fracblow", "fode", "--alpha", "0.5"]).unwrap());
        assert_eq!(code, 2);
    }
}
