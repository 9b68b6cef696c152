//! Classification of problem data against the nonexistence and lifespan
//! criteria, with quantitative margins for every checked hypothesis.
//!
//! A [`DataProfile`] declares the qualitative shape of the initial data and
//! the sign route the verification uses. Together with a validated
//! [`ProblemParams`] it selects a menu of candidate criteria:
//!
//! ```text
//! kind            route            candidate regimes
//! ----            -----            -----------------
//! integrable      real/imag part   weight_subcritical, weight_critical
//! integrable      pairing          pairing_subcritical
//! sobolev         pairing          pairing_functional
//! outer singular  real/imag part   weight_outer_small_data
//! outer singular  pairing          pairing_outer_small_data
//! inner singular  real/imag part   weight_inner_large_data,
//!                                  weight_supercritical_sobolev,
//!                                  weight_supercritical_integrable
//! inner singular  pairing          pairing_inner_large_data
//! ```
//!
//! The weight regimes pair the equation with `phi(x/R) (1 - t/T)^eta` and
//! live on the decay windows of the rotated data components; the pairing
//! regimes pair with `phi(x/R)` alone after multiplication by a complex
//! constant `gamma` and require `Re(gamma lambda) > 0`. With `p_F = 1 +
//! b/N` and `p_s = 1 + 2b/(N - 2s)`, the conclusions are
//!
//! ```text
//! p < p_F,  integrable data, positive data functional -> no global solution
//! p = p_F,  functional above a constant threshold     -> no global solution
//! p < 1 + 2b/N,  N/2 < k < b/(p-1)  (outer bound)     -> lifespan <= B_0 eps^{-1/(a kappa_0)}
//!                                                        for eps < eps_0, else <= 1
//! k < min(N/2 - s, b/(p-1))  (inner bound), eps > eps_1 -> lifespan <= C_bar eps^{-1/(a kappa_0)}
//! p > p_s,  b/(p-1) < k < N/2 - s                     -> no local solution (square-integrable)
//! p > p_F,  b/(p-1) < k < N                           -> no local solution (integrable)
//! pairing functional beats C R^{N - b/(p-1)} at some R -> lifespan <= window upper endpoint
//! ```
//!
//! [`classify`] evaluates every candidate, reports each condition with a
//! signed margin, and picks the strongest fully verified regime; local
//! nonexistence outranks a lifespan bound, which outranks global
//! nonexistence (an artifact convention recorded in the verdict shape, not a
//! mathematical comparison). A condition that cannot be evaluated from the
//! supplied information reports `holds = false` with a NaN margin: `false`
//! always means "not verified", never "provably fails".

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
// resolves float math in no_std builds; shadowed when std is in the graph
#[allow(unused_imports)]
use num_traits::Float;
use serde::Serialize;

use crate::constants::{
    blowup_bound_constants, i_power, sphere_surface_measure, weight_method_constants,
    pairing_method_constants, ConstantsError, ProblemParams, SignCase,
};
use crate::grid::FracOrder;
use crate::quad::{integrate, QuadError};
use crate::testfn::{default_eta, SpaceTestFn, TestFnError};

use core::fmt;

/// Error type for classification.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RegimeError {
    /// A parameter lies outside the admissible domain.
    Domain,
    /// A structural hypothesis of the requested evaluation fails.
    Hypothesis(&'static str),
    /// A numeric evaluation did not reach the requested accuracy.
    Accuracy,
}

impl fmt::Display for RegimeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Domain => write!(f, "parameter outside the admissible domain"),
            Self::Hypothesis(h) => write!(f, "hypothesis violated: {h}"),
            Self::Accuracy => write!(f, "a numeric evaluation did not reach the requested accuracy"),
        }
    }
}

impl From<ConstantsError> for RegimeError {
    fn from(e: ConstantsError) -> Self {
        match e {
            ConstantsError::Domain => Self::Domain,
            ConstantsError::Hypothesis(h) => Self::Hypothesis(h),
            // lookups are gated on the window conditions, so absence of a
            // bundle entry can only mean an internal evaluation shortfall
            ConstantsError::Missing(_) => Self::Accuracy,
            ConstantsError::Accuracy { .. } => Self::Accuracy,
        }
    }
}

impl From<TestFnError> for RegimeError {
    fn from(e: TestFnError) -> Self {
        match e {
            TestFnError::Domain | TestFnError::Divergent => Self::Domain,
            TestFnError::Hypothesis(h) => Self::Hypothesis(h),
            TestFnError::Accuracy { .. } => Self::Accuracy,
        }
    }
}

/// Qualitative shape of the initial data.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ProfileKind {
    /// Integrable data with a declared value of the sign functional.
    Integrable,
    /// Square-integrable data of regularity `s` with no declared pointwise
    /// structure; only the searched pairing functional applies.
    Sobolev,
    /// Data dominating `|x|^{-k}` outside the unit ball (in the route's
    /// component) and nonnegative inside.
    OuterSingular,
    /// Data dominating `|x|^{-k}` inside the unit ball (in the route's
    /// component).
    InnerSingular,
}

/// Which component of the data carries the declared lower bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SignRoute {
    /// First rotated component, paired with `Re lambda`.
    RealPart,
    /// Second rotated component, paired with `Im lambda`.
    ImagPart,
    /// Rotated pairing against the multiplier `gamma`.
    Pairing,
}

/// Declared shape of the initial data.
///
/// `margin` carries the quantitative content of the declaration: for the
/// integrable kind it declares the value of the route's data functional
/// (coefficient included); for the singular kinds it declares the
/// multiplicative factor on the pointwise lower bound, so `margin >= 1`
/// means the bound holds as stated. A supplied radial datum overrides the
/// declared functional value wherever one is quadrature-accessible.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DataProfile {
    kind: ProfileKind,
    k: f64,
    s: f64,
    route: SignRoute,
    margin: f64,
}

impl DataProfile {
    /// New profile declaration.
    ///
    /// Requires a finite decay rate `k`, finite regularity `s >= 0`, and a
    /// finite margin. `k` and `s` must match the parameter set the profile
    /// is classified against.
    pub fn new(
        kind: ProfileKind,
        k: f64,
        s: f64,
        route: SignRoute,
        margin: f64,
    ) -> Result<Self, RegimeError> {
        if !(k.is_finite() && s.is_finite() && s >= 0.0 && margin.is_finite()) {
            return Err(RegimeError::Domain);
        }
        Ok(Self { kind, k, s, route, margin })
    }

    /// Declared data shape.
    pub fn kind(&self) -> ProfileKind {
        self.kind
    }

    /// Decay rate of the pointwise bound `|x|^{-k}`.
    pub fn k(&self) -> f64 {
        self.k
    }

    /// Data regularity s.
    pub fn s(&self) -> f64 {
        self.s
    }

    /// Sign route of the declaration.
    pub fn route(&self) -> SignRoute {
        self.route
    }

    /// Declared functional value or pointwise factor.
    pub fn margin(&self) -> f64 {
        self.margin
    }
}

/// Nonexistence or lifespan criterion identified by mechanism and regime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    /// Weight route below the critical power: global nonexistence.
    WeightSubcritical,
    /// Weight route at the critical power: global nonexistence above a
    /// functional threshold.
    WeightCritical,
    /// Weight route on the outer decay window: small-amplitude lifespan
    /// bound.
    WeightOuterSmallData,
    /// Weight route on the inner singular window: large-amplitude lifespan
    /// bound.
    WeightInnerLargeData,
    /// Weight route above the square-integrable critical power: no local
    /// solution.
    WeightSupercriticalSobolev,
    /// Weight route above the integrable critical power: no local solution.
    WeightSupercriticalIntegrable,
    /// Pairing route with a searched radius: lifespan window endpoint.
    PairingFunctional,
    /// Pairing route below the critical power: global nonexistence.
    PairingSubcritical,
    /// Pairing route on the outer decay window: small-amplitude lifespan
    /// bound.
    PairingOuterSmallData,
    /// Pairing route on the inner singular window: large-amplitude lifespan
    /// bound.
    PairingInnerLargeData,
    /// No candidate criterion fully verified.
    Inapplicable,
}

/// Kind of conclusion a verified regime yields.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundKind {
    /// No global solution; no finite horizon is claimed.
    GlobalNonexistence,
    /// Upper bound on the lifespan of any solution.
    LifespanUpper,
    /// No local solution on any positive horizon.
    LocalNonexistence,
}

/// One checked hypothesis with its signed margin.
///
/// `holds = false` means the condition was not verified, never that it
/// provably fails; an unevaluable condition carries a NaN margin, which
/// serializes as `null`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Condition {
    /// Stable name of the condition.
    pub name: &'static str,
    /// Whether the condition was verified to hold.
    pub holds: bool,
    /// Distance into the admissible region (positive inside).
    pub margin: f64,
}

/// Quantitative conclusion of a fully verified regime.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Bound {
    /// Kind of conclusion.
    pub kind: BoundKind,
    /// Numeric content: a lifespan bound, `0` for local nonexistence, and
    /// absent for global nonexistence.
    pub value: Option<f64>,
    /// Stable name of the formula producing `value`.
    pub formula: &'static str,
}

/// One evaluated candidate regime.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RegimeAttempt {
    /// Candidate criterion.
    pub regime: Regime,
    /// Its checked conditions, in a fixed order.
    pub conditions: Vec<Condition>,
    /// Present exactly when every condition holds.
    pub bound: Option<Bound>,
}

/// Classification result.
///
/// `conditions` and `bound` repeat the primary attempt's entries;
/// `attempts` lists every candidate in menu order, so partially failing
/// regimes (an empty admissible window, a missing datum) stay visible.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RegimeVerdict {
    /// Strongest fully verified regime, or [`Regime::Inapplicable`].
    pub regime: Regime,
    /// Conditions of the primary regime; for an inapplicable verdict, the
    /// conditions of the closest candidate.
    pub conditions: Vec<Condition>,
    /// Conclusion of the primary regime, absent when inapplicable.
    pub bound: Option<Bound>,
    /// Every evaluated candidate.
    pub attempts: Vec<RegimeAttempt>,
}

// strength order of conclusions: an artifact convention, not a theorem
fn strength(kind: BoundKind) -> u8 {
    match kind {
        BoundKind::LocalNonexistence => 3,
        BoundKind::LifespanUpper => 2,
        BoundKind::GlobalNonexistence => 1,
    }
}

fn cond(name: &'static str, holds: bool, margin: f64) -> Condition {
    Condition { name, holds, margin }
}

fn unverified(name: &'static str) -> Condition {
    Condition { name, holds: false, margin: f64::NAN }
}

fn all_hold(list: &[Condition]) -> bool {
    list.iter().all(|c| c.holds)
}

/// Optional radial datum `u_0(r)`, amplitude excluded.
pub type RadialData<'a> = Option<&'a dyn Fn(f64) -> Complex64>;

fn menu(profile: &DataProfile) -> &'static [Regime] {
    use Regime::*;
    match (profile.kind, profile.route) {
        (ProfileKind::Integrable, SignRoute::Pairing) => &[PairingSubcritical],
        (ProfileKind::Integrable, _) => &[WeightSubcritical, WeightCritical],
        (ProfileKind::Sobolev, SignRoute::Pairing) => &[PairingFunctional],
        (ProfileKind::Sobolev, _) => &[],
        (ProfileKind::OuterSingular, SignRoute::Pairing) => &[PairingOuterSmallData],
        (ProfileKind::OuterSingular, _) => &[WeightOuterSmallData],
        (ProfileKind::InnerSingular, SignRoute::Pairing) => &[PairingInnerLargeData],
        (ProfileKind::InnerSingular, _) => &[
            WeightInnerLargeData,
            WeightSupercriticalSobolev,
            WeightSupercriticalIntegrable,
        ],
    }
}

// sign-resolved case of a component route; None when the coefficient is zero
fn case_for(route: SignRoute, lambda: Complex64) -> Option<SignCase> {
    match route {
        SignRoute::RealPart => {
            if lambda.re > 0.0 {
                Some(SignCase::RealPositive)
            } else if lambda.re < 0.0 {
                Some(SignCase::RealNegative)
            } else {
                None
            }
        }
        SignRoute::ImagPart => {
            if lambda.im > 0.0 {
                Some(SignCase::ImagPositive)
            } else if lambda.im < 0.0 {
                Some(SignCase::ImagNegative)
            } else {
                None
            }
        }
        SignRoute::Pairing => None,
    }
}

fn coefficient_condition(params: &ProblemParams, route: SignRoute) -> (Condition, Option<SignCase>) {
    let case = case_for(route, params.lambda());
    let eff = match route {
        SignRoute::RealPart => params.lambda().re.abs(),
        SignRoute::ImagPart => params.lambda().im.abs(),
        SignRoute::Pairing => 0.0,
    };
    (cond("effective_coefficient_positive", case.is_some(), eff), case)
}

fn pairing_sign_condition(params: &ProblemParams) -> Condition {
    let m = (params.gamma() * params.lambda()).re;
    cond("pairing_sign_positive", m > 0.0, m)
}

fn pointwise_condition(profile: &DataProfile) -> Condition {
    let m = profile.margin - 1.0;
    cond("pointwise_lower_bound", m >= 0.0, m)
}

// budget exhaustion keeps the partial value; only a bad interval is fatal
fn radial_seg<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Result<(f64, f64), RegimeError> {
    match integrate(f, a, b, 1e-12, 1e-300, 4096) {
        Ok(r) => Ok((r.value, r.error)),
        Err(QuadError::Budget { value, error }) => Ok((value, error)),
        Err(QuadError::Domain) => Err(RegimeError::Domain),
    }
}

/// Rotated radial pairing `omega_N int_0^inf Re(i^a gamma u_0(r)) w(r)
/// r^{N-1} dr`, with `w` the supplied weight or 1.
///
/// Integrates octave by octave from `[0, 8]` outward and stops once two
/// consecutive octaves contribute nothing at working precision, so a datum
/// concentrated near the origin is never stepped over regardless of the
/// weight's scale. The datum must decay fast enough for the integral to
/// saturate within sixty octaves.
fn radial_pairing(
    dim: u32,
    alpha: FracOrder,
    gamma: Complex64,
    weight: Option<&SpaceTestFn>,
    u0: &dyn Fn(f64) -> Complex64,
) -> Result<f64, RegimeError> {
    let rot = i_power(alpha.value()) * gamma;
    let n = dim as f64;
    let omega = sphere_surface_measure(dim)?;
    let integrand = |r: f64| {
        let w = weight.map_or(1.0, |phi| phi.eval_radius(r));
        (rot * u0(r)).re * w * r.powf(n - 1.0)
    };
    let (mut acc, _) = radial_seg(&integrand, 0.0, 8.0)?;
    let mut lo = 8.0f64;
    let mut quiet = 0u32;
    for _ in 0..60 {
        let (v, _) = radial_seg(&integrand, lo, 2.0 * lo)?;
        acc += v;
        lo *= 2.0;
        if v.abs() <= 1e-13 * acc.abs() + 1e-300 {
            quiet += 1;
            if quiet == 2 {
                return Ok(omega * acc);
            }
        } else {
            quiet = 0;
        }
    }
    Err(RegimeError::Accuracy)
}

// route's data functional: declared by the profile, overridden by a datum
fn functional_condition(
    params: &ProblemParams,
    profile: &DataProfile,
    u0: RadialData,
) -> Result<Condition, RegimeError> {
    let value = match u0 {
        Some(f) => route_functional(params, profile.route, f)?,
        None => profile.margin,
    };
    Ok(cond("data_functional_positive", value > 0.0, value))
}

fn route_functional(
    params: &ProblemParams,
    route: SignRoute,
    u0: &dyn Fn(f64) -> Complex64,
) -> Result<f64, RegimeError> {
    let (rot, coeff) = match route {
        // i^a u_0 has first component Re(i^a u_0), second Re(-i i^a u_0)
        SignRoute::RealPart => (Complex64::new(1.0, 0.0), params.lambda().re),
        SignRoute::ImagPart => (Complex64::new(0.0, -1.0), params.lambda().im),
        SignRoute::Pairing => (params.gamma(), 1.0),
    };
    let integral = radial_pairing(params.dim(), params.alpha(), rot, None, u0)?;
    Ok(coeff * integral)
}

fn attempt_weight_subcritical(
    params: &ProblemParams,
    profile: &DataProfile,
    u0: RadialData,
) -> Result<RegimeAttempt, RegimeError> {
    let p_f = 1.0 + params.beta() / params.dim() as f64;
    let m = p_f - params.p();
    let power = cond("power_subcritical", m > 0.0, m);
    let functional = functional_condition(params, profile, u0)?;
    let conditions = vec![power, functional];
    let bound = all_hold(&conditions).then(|| Bound {
        kind: BoundKind::GlobalNonexistence,
        value: None,
        formula: "global_nonexistence_subcritical",
    });
    Ok(RegimeAttempt { regime: Regime::WeightSubcritical, conditions, bound })
}

fn attempt_weight_critical(
    params: &ProblemParams,
    profile: &DataProfile,
    c_nq: f64,
    u0: RadialData,
) -> Result<RegimeAttempt, RegimeError> {
    let p = params.p();
    let p_f = 1.0 + params.beta() / params.dim() as f64;
    let diff = (p - p_f).abs();
    let power = cond("power_critical", diff == 0.0, if diff == 0.0 { 0.0 } else { -diff });
    let (coeff, case) = coefficient_condition(params, profile.route);
    let threshold = match case {
        Some(case) => {
            let eta = default_eta(params.alpha(), p)?;
            let bundle = weight_method_constants(params, eta, c_nq, case, None)?;
            let gate = bundle.require("C_0")? * bundle.require("A_0")?;
            let functional = match u0 {
                Some(f) => route_functional(params, profile.route, f)?,
                None => profile.margin,
            };
            let eff = case.effective_coefficient(params.lambda());
            let lhs = eff.powf((2.0 - p) / (p - 1.0)) * params.epsilon() * functional;
            let m = lhs - gate;
            cond("threshold_exceeded", m > 0.0, m)
        }
        None => unverified("threshold_exceeded"),
    };
    let conditions = vec![power, coeff, threshold];
    let bound = all_hold(&conditions).then(|| Bound {
        kind: BoundKind::GlobalNonexistence,
        value: None,
        formula: "global_nonexistence_critical",
    });
    Ok(RegimeAttempt { regime: Regime::WeightCritical, conditions, bound })
}

fn attempt_weight_outer(
    params: &ProblemParams,
    profile: &DataProfile,
    c_nq: f64,
) -> Result<RegimeAttempt, RegimeError> {
    let (n, beta, p, k) = (params.dim() as f64, params.beta(), params.p(), params.k());
    let m_sub = 1.0 + 2.0 * beta / n - p;
    let sub = cond("power_l2_subcritical", m_sub > 0.0, m_sub);
    let m_win = (k - 0.5 * n).min(beta / (p - 1.0) - k);
    let window = cond("decay_window", m_win > 0.0, m_win);
    let pointwise = pointwise_condition(profile);
    let (coeff, case) = coefficient_condition(params, profile.route);
    let conditions = vec![sub, window, pointwise, coeff];
    let bound = if all_hold(&conditions) {
        let eta = default_eta(params.alpha(), p)?;
        let bundle = weight_method_constants(params, eta, c_nq, case.expect("coefficient holds"), None)?;
        let eps0 = bundle.require("eps_0")?;
        let kappa0 = bundle.require("kappa_0")?;
        let a = params.alpha().value();
        let eps = params.epsilon();
        let value = if eps < eps0 {
            bundle.require("B_0")? * eps.powf(-1.0 / (a * kappa0))
        } else {
            1.0
        };
        Some(Bound {
            kind: BoundKind::LifespanUpper,
            value: Some(value),
            formula: "lifespan_small_amplitude_piecewise",
        })
    } else {
        None
    };
    Ok(RegimeAttempt { regime: Regime::WeightOuterSmallData, conditions, bound })
}

fn attempt_weight_inner(
    params: &ProblemParams,
    profile: &DataProfile,
    c_nq: f64,
) -> Result<RegimeAttempt, RegimeError> {
    let (n, beta, p, k, s) = (
        params.dim() as f64,
        params.beta(),
        params.p(),
        params.k(),
        params.sobolev(),
    );
    let m_win = (0.5 * n - s - k).min(beta / (p - 1.0) - k);
    let window = cond("singular_window", m_win > 0.0, m_win);
    let pointwise = pointwise_condition(profile);
    let (coeff, case) = coefficient_condition(params, profile.route);
    let bundle = if window.holds && coeff.holds {
        let eta = default_eta(params.alpha(), p)?;
        Some(weight_method_constants(params, eta, c_nq, case.expect("coefficient holds"), None)?)
    } else {
        None
    };
    let amplitude = match &bundle {
        Some(b) => {
            let m = params.epsilon() - b.require("eps_1")?;
            cond("amplitude_above_threshold", m > 0.0, m)
        }
        None => unverified("amplitude_above_threshold"),
    };
    let conditions = vec![window, pointwise, coeff, amplitude];
    let bound = if all_hold(&conditions) {
        let b = bundle.expect("window and coefficient hold");
        let a = params.alpha().value();
        let kappa0 = b.require("kappa_0")?;
        let value = b.require("C_bar")? * params.epsilon().powf(-1.0 / (a * kappa0));
        Some(Bound {
            kind: BoundKind::LifespanUpper,
            value: Some(value),
            formula: "lifespan_large_amplitude_power",
        })
    } else {
        None
    };
    Ok(RegimeAttempt { regime: Regime::WeightInnerLargeData, conditions, bound })
}

fn attempt_weight_supercritical_sobolev(
    params: &ProblemParams,
    profile: &DataProfile,
) -> Result<RegimeAttempt, RegimeError> {
    let (n, beta, p, k, s) = (
        params.dim() as f64,
        params.beta(),
        params.p(),
        params.k(),
        params.sobolev(),
    );
    let m_reg = 0.5 * n - s;
    let regularity = cond("regularity_below_half_dimension", m_reg > 0.0, m_reg);
    // window nonempty iff p exceeds the square-integrable critical power
    let m_adm = (0.5 * n - s) - beta / (p - 1.0);
    let admissible = cond("admissible_window_nonempty", m_adm > 0.0, m_adm);
    let m_win = (k - beta / (p - 1.0)).min(0.5 * n - s - k);
    let window = cond("singular_window_supercritical", m_win > 0.0, m_win);
    let pointwise = pointwise_condition(profile);
    let (coeff, _) = coefficient_condition(params, profile.route);
    let conditions = vec![regularity, admissible, window, pointwise, coeff];
    let bound = all_hold(&conditions).then(|| Bound {
        kind: BoundKind::LocalNonexistence,
        value: Some(0.0),
        formula: "local_nonexistence_square_integrable",
    });
    Ok(RegimeAttempt { regime: Regime::WeightSupercriticalSobolev, conditions, bound })
}

fn attempt_weight_supercritical_integrable(
    params: &ProblemParams,
    profile: &DataProfile,
) -> Result<RegimeAttempt, RegimeError> {
    let (n, beta, p, k) = (params.dim() as f64, params.beta(), params.p(), params.k());
    let m_pow = p - (1.0 + beta / n);
    let power = cond("power_supercritical_fujita", m_pow > 0.0, m_pow);
    let m_win = (k - beta / (p - 1.0)).min(n - k);
    let window = cond("singular_window_integrable", m_win > 0.0, m_win);
    let pointwise = pointwise_condition(profile);
    let (coeff, _) = coefficient_condition(params, profile.route);
    let conditions = vec![power, window, pointwise, coeff];
    let bound = all_hold(&conditions).then(|| Bound {
        kind: BoundKind::LocalNonexistence,
        value: Some(0.0),
        formula: "local_nonexistence_integrable",
    });
    Ok(RegimeAttempt { regime: Regime::WeightSupercriticalIntegrable, conditions, bound })
}

// golden-section maximization of f over log10 R in [-6, 6] after a coarse
// scan; returns (R, best value), or best value -inf when nothing evaluated
fn search_radius<F: FnMut(f64) -> f64>(mut f: F) -> (f64, f64) {
    const LO: f64 = -6.0;
    const HI: f64 = 6.0;
    const POINTS: usize = 25;
    const INV_PHI: f64 = 0.618_033_988_749_894_8;
    let x_at = |i: usize| LO + (HI - LO) * i as f64 / (POINTS - 1) as f64;
    let mut best_i = 0usize;
    let mut best = f64::NEG_INFINITY;
    for i in 0..POINTS {
        let v = f(x_at(i));
        if v > best {
            best = v;
            best_i = i;
        }
    }
    if !best.is_finite() {
        return (f64::NAN, f64::NEG_INFINITY);
    }
    let mut a = x_at(best_i.saturating_sub(1));
    let mut b = x_at((best_i + 1).min(POINTS - 1));
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    for _ in 0..48 {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    let x = 0.5 * (a + b);
    let v = f(x);
    if v >= best {
        (10.0f64.powf(x), v)
    } else {
        (10.0f64.powf(x_at(best_i)), best)
    }
}

fn attempt_pairing_functional(
    params: &ProblemParams,
    c_nq: f64,
    u0: RadialData,
) -> Result<RegimeAttempt, RegimeError> {
    let sign = pairing_sign_condition(params);
    let (n, beta, p) = (params.dim() as f64, params.beta(), params.p());
    let mut witness = None;
    let functional = if !sign.holds {
        unverified("functional_exceeds_scaling")
    } else {
        match u0 {
            None => unverified("functional_exceeds_scaling"),
            Some(f) => {
                let bundle = pairing_method_constants(params, c_nq)?;
                let c_pair = bundle.require("C_pairing")?;
                let d_pair = bundle.require("D_pairing")?;
                let bar_exp = n - beta / (p - 1.0);
                let objective = |x: f64| {
                    let r = 10.0f64.powf(x);
                    let weight = match SpaceTestFn::new(params.dim() as usize, n + beta, r) {
                        Ok(w) => w,
                        Err(_) => return f64::NEG_INFINITY,
                    };
                    match radial_pairing(params.dim(), params.alpha(), params.gamma(), Some(&weight), f) {
                        Ok(v) => params.epsilon() * v - c_pair * r.powf(bar_exp),
                        Err(_) => f64::NEG_INFINITY,
                    }
                };
                let (r_star, m_star) = search_radius(objective);
                if m_star.is_finite() {
                    witness = Some((r_star, m_star, d_pair));
                    cond("functional_exceeds_scaling", m_star > 0.0, m_star)
                } else {
                    unverified("functional_exceeds_scaling")
                }
            }
        }
    };
    let conditions = vec![sign, functional];
    let bound = if all_hold(&conditions) {
        let (r, f0, d_pair) = witness.expect("search succeeded");
        let b = d_pair * r.powf(-n * (p - 1.0));
        let window = blowup_bound_constants(params.alpha(), p, b, f0)?;
        Some(Bound {
            kind: BoundKind::LifespanUpper,
            value: Some(window.require("T_U")?),
            formula: "pairing_window_upper_endpoint",
        })
    } else {
        None
    };
    Ok(RegimeAttempt { regime: Regime::PairingFunctional, conditions, bound })
}

fn attempt_pairing_subcritical(
    params: &ProblemParams,
    profile: &DataProfile,
    u0: RadialData,
) -> Result<RegimeAttempt, RegimeError> {
    let p_f = 1.0 + params.beta() / params.dim() as f64;
    let m = p_f - params.p();
    let power = cond("power_subcritical", m > 0.0, m);
    let sign = pairing_sign_condition(params);
    let functional = functional_condition(params, profile, u0)?;
    let conditions = vec![power, sign, functional];
    let bound = all_hold(&conditions).then(|| Bound {
        kind: BoundKind::GlobalNonexistence,
        value: None,
        formula: "global_nonexistence_pairing",
    });
    Ok(RegimeAttempt { regime: Regime::PairingSubcritical, conditions, bound })
}

fn attempt_pairing_outer(
    params: &ProblemParams,
    profile: &DataProfile,
    c_nq: f64,
) -> Result<RegimeAttempt, RegimeError> {
    let (n, beta, p, k) = (params.dim() as f64, params.beta(), params.p(), params.k());
    let m_sub = 1.0 + 2.0 * beta / n - p;
    let sub = cond("power_l2_subcritical", m_sub > 0.0, m_sub);
    let m_win = (k - 0.5 * n).min(beta / (p - 1.0) - k);
    let window = cond("decay_window", m_win > 0.0, m_win);
    let pointwise = pointwise_condition(profile);
    let sign = pairing_sign_condition(params);
    let bundle = if window.holds && sign.holds {
        Some(pairing_method_constants(params, c_nq)?)
    } else {
        None
    };
    let amplitude = match &bundle {
        Some(b) => {
            let m = b.require("eps_2")? - params.epsilon();
            cond("amplitude_below_threshold", m >= 0.0, m)
        }
        None => unverified("amplitude_below_threshold"),
    };
    let conditions = vec![sub, window, pointwise, sign, amplitude];
    let bound = if all_hold(&conditions) {
        let b = bundle.expect("window and sign hold");
        let a = params.alpha().value();
        let kappa1 = b.require("kappa_1")?;
        let value = b.require("B_1")? * params.epsilon().powf(-1.0 / (a * kappa1));
        Some(Bound {
            kind: BoundKind::LifespanUpper,
            value: Some(value),
            formula: "pairing_lifespan_small_amplitude",
        })
    } else {
        None
    };
    Ok(RegimeAttempt { regime: Regime::PairingOuterSmallData, conditions, bound })
}

fn attempt_pairing_inner(
    params: &ProblemParams,
    profile: &DataProfile,
    c_nq: f64,
) -> Result<RegimeAttempt, RegimeError> {
    let (n, beta, p, k, s) = (
        params.dim() as f64,
        params.beta(),
        params.p(),
        params.k(),
        params.sobolev(),
    );
    let m_win = (0.5 * n - s - k).min(beta / (p - 1.0) - k);
    let window = cond("singular_window", m_win > 0.0, m_win);
    let pointwise = pointwise_condition(profile);
    let sign = pairing_sign_condition(params);
    let bundle = if window.holds && sign.holds {
        Some(pairing_method_constants(params, c_nq)?)
    } else {
        None
    };
    let amplitude = match &bundle {
        Some(b) => {
            let m = params.epsilon() - b.require("eps_3")?;
            cond("amplitude_above_threshold", m >= 0.0, m)
        }
        None => unverified("amplitude_above_threshold"),
    };
    let conditions = vec![window, pointwise, sign, amplitude];
    let bound = if all_hold(&conditions) {
        let b = bundle.expect("window and sign hold");
        let a = params.alpha().value();
        let kappa0 = b.require("kappa_0")?;
        let value = b.require("B_2")? * params.epsilon().powf(-1.0 / (a * kappa0));
        Some(Bound {
            kind: BoundKind::LifespanUpper,
            value: Some(value),
            formula: "pairing_lifespan_large_amplitude",
        })
    } else {
        None
    };
    Ok(RegimeAttempt { regime: Regime::PairingInnerLargeData, conditions, bound })
}

fn attempt(
    regime: Regime,
    params: &ProblemParams,
    profile: &DataProfile,
    c_nq: f64,
    u0: RadialData,
) -> Result<RegimeAttempt, RegimeError> {
    match regime {
        Regime::WeightSubcritical => attempt_weight_subcritical(params, profile, u0),
        Regime::WeightCritical => attempt_weight_critical(params, profile, c_nq, u0),
        Regime::WeightOuterSmallData => attempt_weight_outer(params, profile, c_nq),
        Regime::WeightInnerLargeData => attempt_weight_inner(params, profile, c_nq),
        Regime::WeightSupercriticalSobolev => attempt_weight_supercritical_sobolev(params, profile),
        Regime::WeightSupercriticalIntegrable => {
            attempt_weight_supercritical_integrable(params, profile)
        }
        Regime::PairingFunctional => attempt_pairing_functional(params, c_nq, u0),
        Regime::PairingSubcritical => attempt_pairing_subcritical(params, profile, u0),
        Regime::PairingOuterSmallData => attempt_pairing_outer(params, profile, c_nq),
        Regime::PairingInnerLargeData => attempt_pairing_inner(params, profile, c_nq),
        Regime::Inapplicable => Err(RegimeError::Domain),
    }
}

fn validate(params: &ProblemParams, profile: &DataProfile, c_nq: f64) -> Result<(), RegimeError> {
    if profile.k != params.k() {
        return Err(RegimeError::Hypothesis("profile decay rate must match the parameter set"));
    }
    if profile.s != params.sobolev() {
        return Err(RegimeError::Hypothesis("profile regularity must match the parameter set"));
    }
    if !(c_nq.is_finite() && c_nq > 0.0) {
        return Err(RegimeError::Domain);
    }
    Ok(())
}

/// Classifies the problem against every candidate criterion of the profile.
///
/// `c_nq` is the measured comparability constant of the spatial weight; the
/// classifier treats it as an input, and everything downstream of it is
/// empirical. `u0` optionally supplies the radial datum (amplitude
/// excluded); when present it overrides declared functional values and
/// enables the searched pairing criterion.
pub fn classify(
    params: &ProblemParams,
    profile: &DataProfile,
    c_nq: f64,
    u0: RadialData,
) -> Result<RegimeVerdict, RegimeError> {
    validate(params, profile, c_nq)?;
    let mut attempts = Vec::new();
    for regime in menu(profile) {
        attempts.push(attempt(*regime, params, profile, c_nq, u0)?);
    }
    let mut primary: Option<usize> = None;
    for (i, a) in attempts.iter().enumerate() {
        if let Some(bound) = &a.bound {
            let better = match primary {
                None => true,
                // ties keep the earlier menu entry
                Some(j) => {
                    strength(bound.kind)
                        > strength(attempts[j].bound.as_ref().expect("primary has bound").kind)
                }
            };
            if better {
                primary = Some(i);
            }
        }
    }
    Ok(match primary {
        Some(i) => RegimeVerdict {
            regime: attempts[i].regime,
            conditions: attempts[i].conditions.clone(),
            bound: attempts[i].bound,
            attempts,
        },
        None => {
            // closest candidate: fewest unverified conditions, menu order ties
            let conditions = attempts
                .iter()
                .enumerate()
                .min_by_key(|(i, a)| (a.conditions.iter().filter(|c| !c.holds).count(), *i))
                .map(|(_, a)| a.conditions.clone())
                .unwrap_or_default();
            RegimeVerdict { regime: Regime::Inapplicable, conditions, bound: None, attempts }
        }
    })
}

/// Conditions of the primary candidate, as [`classify`] would report them.
pub fn check_conditions(
    params: &ProblemParams,
    profile: &DataProfile,
    c_nq: f64,
    u0: RadialData,
) -> Result<Vec<Condition>, RegimeError> {
    Ok(classify(params, profile, c_nq, u0)?.conditions)
}

/// Lifespan bound of the profile's verified lifespan regime, evaluated at
/// amplitude `eps` (overriding the amplitude in `params`).
///
/// The outer-window bound is the total piecewise formula (power law below
/// the threshold amplitude, 1 above); the other lifespan formulas require
/// `eps` on their admissible side and report a hypothesis error outside it.
/// A profile whose verdict is not a lifespan bound is a domain error.
pub fn lifespan_bound(
    params: &ProblemParams,
    profile: &DataProfile,
    c_nq: f64,
    eps: f64,
) -> Result<f64, RegimeError> {
    if !(eps.is_finite() && eps > 0.0) {
        return Err(RegimeError::Domain);
    }
    let at_eps = ProblemParams::new(
        params.alpha(),
        params.beta(),
        params.dim(),
        params.p(),
        params.lambda(),
        eps,
        params.gamma(),
        params.sobolev(),
        params.k(),
    )?;
    let verdict = classify(&at_eps, profile, c_nq, None)?;
    if let Some(Bound { kind: BoundKind::LifespanUpper, value: Some(v), .. }) = verdict.bound {
        return Ok(v);
    }
    // distinguish a wrong amplitude from a structurally inapplicable profile
    for a in &verdict.attempts {
        let amplitude_fails = a
            .conditions
            .iter()
            .any(|c| !c.holds && c.name.starts_with("amplitude_"));
        let others_hold = a
            .conditions
            .iter()
            .all(|c| c.holds || c.name.starts_with("amplitude_"));
        if amplitude_fails && others_hold {
            return Err(RegimeError::Hypothesis(
                "amplitude outside the lifespan bound's admissible range",
            ));
        }
    }
    Err(RegimeError::Domain)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::critical_exponents;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    // fixed plausible measured constant; the classifier treats it as input
    const CNQ: f64 = 2.0;

    fn order(a: f64) -> FracOrder {
        FracOrder::new(a).unwrap()
    }

    fn params(
        alpha: f64,
        beta: f64,
        dim: u32,
        p: f64,
        lambda: Complex64,
        eps: f64,
        gamma: Complex64,
        s: f64,
        k: f64,
    ) -> ProblemParams {
        ProblemParams::new(order(alpha), beta, dim, p, lambda, eps, gamma, s, k).unwrap()
    }

    fn one() -> Complex64 {
        Complex64::new(1.0, 0.0)
    }

    fn profile(kind: ProfileKind, k: f64, s: f64, route: SignRoute, margin: f64) -> DataProfile {
        DataProfile::new(kind, k, s, route, margin).unwrap()
    }

    fn find<'a>(conditions: &'a [Condition], name: &str) -> &'a Condition {
        conditions.iter().find(|c| c.name == name).unwrap()
    }

    #[test]
    fn profile_construction_validates() {
        assert!(DataProfile::new(ProfileKind::Integrable, 0.0, 0.0, SignRoute::RealPart, 1.0).is_ok());
        assert_eq!(
            DataProfile::new(ProfileKind::Integrable, f64::NAN, 0.0, SignRoute::RealPart, 1.0),
            Err(RegimeError::Domain)
        );
        assert_eq!(
            DataProfile::new(ProfileKind::Integrable, 0.0, -0.5, SignRoute::RealPart, 1.0),
            Err(RegimeError::Domain)
        );
        assert_eq!(
            DataProfile::new(ProfileKind::Integrable, 0.0, 0.0, SignRoute::RealPart, f64::INFINITY),
            Err(RegimeError::Domain)
        );
    }

    #[test]
    fn mismatched_profile_is_rejected() {
        let pr = params(0.5, 1.0, 1, 1.5, one(), 1.0, one(), 0.0, 0.7);
        let wrong_k = profile(ProfileKind::Integrable, 0.8, 0.0, SignRoute::RealPart, 1.0);
        assert!(matches!(
            classify(&pr, &wrong_k, CNQ, None),
            Err(RegimeError::Hypothesis(_))
        ));
        let wrong_s = profile(ProfileKind::Integrable, 0.7, 0.25, SignRoute::RealPart, 1.0);
        assert!(matches!(
            classify(&pr, &wrong_s, CNQ, None),
            Err(RegimeError::Hypothesis(_))
        ));
        let good = profile(ProfileKind::Integrable, 0.7, 0.0, SignRoute::RealPart, 1.0);
        assert_eq!(classify(&pr, &good, f64::NAN, None), Err(RegimeError::Domain));
    }

    #[test]
    fn sign_route_resolves_cases() {
        assert_eq!(case_for(SignRoute::RealPart, Complex64::new(2.0, 0.0)), Some(SignCase::RealPositive));
        assert_eq!(case_for(SignRoute::RealPart, Complex64::new(-2.0, 1.0)), Some(SignCase::RealNegative));
        assert_eq!(case_for(SignRoute::ImagPart, Complex64::new(0.0, 3.0)), Some(SignCase::ImagPositive));
        assert_eq!(case_for(SignRoute::ImagPart, Complex64::new(0.0, -3.0)), Some(SignCase::ImagNegative));
        assert_eq!(case_for(SignRoute::ImagPart, Complex64::new(1.0, 0.0)), None);
        assert_eq!(case_for(SignRoute::Pairing, one()), None);
    }

    #[test]
    fn subcritical_integrable_data_is_global_nonexistence() {
        let pr = params(0.5, 1.0, 1, 1.5, one(), 1.0, one(), 0.0, 0.0);
        let pf = profile(ProfileKind::Integrable, 0.0, 0.0, SignRoute::RealPart, 1.0);
        let v = classify(&pr, &pf, CNQ, None).unwrap();
        assert_eq!(v.regime, Regime::WeightSubcritical);
        let b = v.bound.unwrap();
        assert_eq!(b.kind, BoundKind::GlobalNonexistence);
        assert_eq!(b.value, None);
        assert_eq!(b.formula, "global_nonexistence_subcritical");
        assert_abs_diff_eq!(find(&v.conditions, "power_subcritical").margin, 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(find(&v.conditions, "data_functional_positive").margin, 1.0, epsilon = 1e-15);
    }

    #[test]
    fn gaussian_datum_overrides_declared_functional() {
        // int of the first rotated component of exp(-r^2) over the line is
        // cos(a pi/4 * 2 / 2) ... = cos(a pi/2) sqrt(pi) at lambda = 1
        let pr = params(0.5, 1.0, 1, 1.5, one(), 1.0, one(), 0.0, 0.0);
        let pf = profile(ProfileKind::Integrable, 0.0, 0.0, SignRoute::RealPart, -5.0);
        let u0 = |r: f64| Complex64::new((-r * r).exp(), 0.0);
        let v = classify(&pr, &pf, CNQ, Some(&u0)).unwrap();
        assert_eq!(v.regime, Regime::WeightSubcritical);
        let expect = (0.25 * core::f64::consts::PI).cos() * core::f64::consts::PI.sqrt();
        assert_relative_eq!(
            find(&v.conditions, "data_functional_positive").margin,
            expect,
            max_relative = 1e-9
        );
        // the declared negative margin alone would have failed
        let symbolic = classify(&pr, &pf, CNQ, None).unwrap();
        assert_eq!(symbolic.regime, Regime::Inapplicable);
    }

    #[test]
    fn imaginary_route_pairs_second_component() {
        // purely imaginary coupling fails the real route but feeds the
        // imaginary one; for real data the second component is sin(a pi/2) g
        let lam = Complex64::new(0.0, 1.0);
        let pr = params(0.5, 1.0, 1, 1.5, lam, 1.0, one(), 0.0, 0.0);
        let pf = profile(ProfileKind::Integrable, 0.0, 0.0, SignRoute::ImagPart, -5.0);
        let u0 = |r: f64| Complex64::new((-r * r).exp(), 0.0);
        let v = classify(&pr, &pf, CNQ, Some(&u0)).unwrap();
        assert_eq!(v.regime, Regime::WeightSubcritical);
        let expect = (0.25 * core::f64::consts::PI).sin() * core::f64::consts::PI.sqrt();
        assert_relative_eq!(
            find(&v.conditions, "data_functional_positive").margin,
            expect,
            max_relative = 1e-9
        );
    }

    #[test]
    fn critical_power_needs_threshold() {
        // N = 1, b = 1 puts the critical power exactly at p = 2
        let pr = params(0.5, 1.0, 1, 2.0, one(), 1.0, one(), 0.0, 0.0);
        let big = profile(ProfileKind::Integrable, 0.0, 0.0, SignRoute::RealPart, 1.0e6);
        let v = classify(&pr, &big, CNQ, None).unwrap();
        assert_eq!(v.regime, Regime::WeightCritical);
        assert_eq!(v.bound.unwrap().formula, "global_nonexistence_critical");
        assert_eq!(find(&v.conditions, "power_critical").margin, 0.0);

        // at p = 2 the coefficient prefactor is 1, so the threshold is the
        // declared functional against C_0 A_0
        let eta = default_eta(pr.alpha(), 2.0).unwrap();
        let bundle =
            weight_method_constants(&pr, eta, CNQ, SignCase::RealPositive, None).unwrap();
        let gate = bundle.require("C_0").unwrap() * bundle.require("A_0").unwrap();
        assert_relative_eq!(
            find(&v.conditions, "threshold_exceeded").margin,
            1.0e6 - gate,
            max_relative = 1e-12
        );

        let small = profile(ProfileKind::Integrable, 0.0, 0.0, SignRoute::RealPart, 1e-12);
        let verdict = classify(&pr, &small, CNQ, None).unwrap();
        assert_eq!(verdict.regime, Regime::Inapplicable);
        let critical = verdict
            .attempts
            .iter()
            .find(|a| a.regime == Regime::WeightCritical)
            .unwrap();
        assert!(!find(&critical.conditions, "threshold_exceeded").holds);
    }

    #[test]
    fn zero_coefficient_leaves_threshold_unverified() {
        let lam = Complex64::new(0.0, 1.0);
        let pr = params(0.5, 1.0, 1, 2.0, lam, 1.0, one(), 0.0, 0.0);
        let pf = profile(ProfileKind::Integrable, 0.0, 0.0, SignRoute::RealPart, 1.0e6);
        let v = classify(&pr, &pf, CNQ, None).unwrap();
        assert_eq!(v.regime, Regime::Inapplicable);
        let critical = v
            .attempts
            .iter()
            .find(|a| a.regime == Regime::WeightCritical)
            .unwrap();
        let coeff = find(&critical.conditions, "effective_coefficient_positive");
        assert!(!coeff.holds);
        assert_eq!(coeff.margin, 0.0);
        assert!(find(&critical.conditions, "threshold_exceeded").margin.is_nan());
    }

    #[test]
    fn outer_window_margins_are_edge_distances() {
        let pr = params(0.5, 1.0, 1, 2.0, one(), 1e-3, one(), 0.0, 0.75);
        let pf = profile(ProfileKind::OuterSingular, 0.75, 0.0, SignRoute::RealPart, 1.5);
        let v = classify(&pr, &pf, CNQ, None).unwrap();
        assert_eq!(v.regime, Regime::WeightOuterSmallData);
        assert_abs_diff_eq!(find(&v.conditions, "decay_window").margin, 0.25, epsilon = 1e-15);
        assert_abs_diff_eq!(
            find(&v.conditions, "pointwise_lower_bound").margin,
            0.5,
            epsilon = 1e-15
        );
        let b = v.bound.unwrap();
        assert_eq!(b.kind, BoundKind::LifespanUpper);
        assert_eq!(b.formula, "lifespan_small_amplitude_piecewise");
        assert!(b.value.unwrap() > 1.0);
    }

    #[test]
    fn outer_bound_matches_the_constant_chain() {
        let pr = params(0.5, 1.0, 1, 1.8, one(), 0.01, one(), 0.0, 0.7);
        let pf = profile(ProfileKind::OuterSingular, 0.7, 0.0, SignRoute::RealPart, 1.0);
        let v = classify(&pr, &pf, CNQ, None).unwrap();
        assert_eq!(v.regime, Regime::WeightOuterSmallData);
        let eta = default_eta(pr.alpha(), 1.8).unwrap();
        let bundle =
            weight_method_constants(&pr, eta, CNQ, SignCase::RealPositive, None).unwrap();
        let eps0 = bundle.require("eps_0").unwrap();
        let k0 = bundle.require("kappa_0").unwrap();
        assert!(0.01 < eps0, "amplitude must sit below the threshold, eps_0 = {eps0}");
        let expect = bundle.require("B_0").unwrap() * 0.01f64.powf(-1.0 / (0.5 * k0));
        assert_relative_eq!(v.bound.unwrap().value.unwrap(), expect, max_relative = 1e-12);
    }

    #[test]
    fn inner_window_needs_large_amplitude() {
        let pr_small = params(0.5, 1.0, 1, 2.0, one(), 1e-9, one(), 0.0, 0.3);
        let pf = profile(ProfileKind::InnerSingular, 0.3, 0.0, SignRoute::RealPart, 1.0);
        let v = classify(&pr_small, &pf, CNQ, None).unwrap();
        assert_eq!(v.regime, Regime::Inapplicable);
        assert!(!find(&v.conditions, "amplitude_above_threshold").holds);

        let eta = default_eta(pr_small.alpha(), 2.0).unwrap();
        let bundle =
            weight_method_constants(&pr_small, eta, CNQ, SignCase::RealPositive, None).unwrap();
        let eps1 = bundle.require("eps_1").unwrap();
        let pr_big = params(0.5, 1.0, 1, 2.0, one(), 2.0 * eps1, one(), 0.0, 0.3);
        let v = classify(&pr_big, &pf, CNQ, None).unwrap();
        assert_eq!(v.regime, Regime::WeightInnerLargeData);
        let k0 = bundle.require("kappa_0").unwrap();
        let expect = bundle.require("C_bar").unwrap() * (2.0 * eps1).powf(-1.0 / (0.5 * k0));
        assert_relative_eq!(v.bound.unwrap().value.unwrap(), expect, max_relative = 1e-12);
    }

    #[test]
    fn supercritical_sobolev_window_gives_local_nonexistence() {
        // k = 0.7 lies inside (b/(p-1), N/2 - s) = (2/3, 3/2)
        let pr = params(0.5, 1.0, 3, 2.5, one(), 1.0, one(), 0.0, 0.7);
        let pf = profile(ProfileKind::InnerSingular, 0.7, 0.0, SignRoute::RealPart, 1.0);
        let v = classify(&pr, &pf, CNQ, None).unwrap();
        assert_eq!(v.regime, Regime::WeightSupercriticalSobolev);
        let b = v.bound.unwrap();
        assert_eq!(b.kind, BoundKind::LocalNonexistence);
        assert_eq!(b.value, Some(0.0));
        assert_eq!(b.formula, "local_nonexistence_square_integrable");
        // the integrable supercritical criterion holds too and stays listed
        let alt = v
            .attempts
            .iter()
            .find(|a| a.regime == Regime::WeightSupercriticalIntegrable)
            .unwrap();
        assert!(alt.bound.is_some());
    }

    #[test]
    fn empty_supercritical_window_is_reported_not_fatal() {
        // (b/(p-1), N/2 - s) = (2/3, 1/2) is empty; the integrable-route
        // criterion still applies at k = 0.8 and carries the verdict
        let pr = params(0.5, 1.0, 1, 2.5, one(), 1.0, one(), 0.0, 0.8);
        let pf = profile(ProfileKind::InnerSingular, 0.8, 0.0, SignRoute::RealPart, 1.0);
        let v = classify(&pr, &pf, CNQ, None).unwrap();
        assert_eq!(v.regime, Regime::WeightSupercriticalIntegrable);
        assert_eq!(v.bound.unwrap().formula, "local_nonexistence_integrable");
        let vac = v
            .attempts
            .iter()
            .find(|a| a.regime == Regime::WeightSupercriticalSobolev)
            .unwrap();
        let adm = find(&vac.conditions, "admissible_window_nonempty");
        assert!(!adm.holds);
        assert_relative_eq!(adm.margin, 0.5 - 2.0 / 3.0, max_relative = 1e-12);
        assert!(vac.bound.is_none());
    }

    #[test]
    fn pairing_sign_margin_is_the_real_part() {
        // lambda = i, gamma = -i gives Re(gamma lambda) = 1
        let lam = Complex64::new(0.0, 1.0);
        let gam = Complex64::new(0.0, -1.0);
        let pr = params(0.5, 1.0, 1, 1.5, lam, 1.0, gam, 0.0, 0.0);
        let pf = profile(ProfileKind::Integrable, 0.0, 0.0, SignRoute::Pairing, 0.8);
        let v = classify(&pr, &pf, CNQ, None).unwrap();
        assert_eq!(v.regime, Regime::PairingSubcritical);
        assert_abs_diff_eq!(
            find(&v.conditions, "pairing_sign_positive").margin,
            1.0,
            epsilon = 1e-15
        );
        assert_eq!(v.bound.unwrap().formula, "global_nonexistence_pairing");
    }

    #[test]
    fn pairing_outer_bound_uses_the_annulus_chain() {
        let base = params(0.5, 1.0, 1, 2.0, one(), 1.0, one(), 0.0, 0.75);
        let bundle = pairing_method_constants(&base, CNQ).unwrap();
        let eps2 = bundle.require("eps_2").unwrap();
        let eps = 0.5 * eps2;
        let pr = params(0.5, 1.0, 1, 2.0, one(), eps, one(), 0.0, 0.75);
        let pf = profile(ProfileKind::OuterSingular, 0.75, 0.0, SignRoute::Pairing, 1.0);
        let v = classify(&pr, &pf, CNQ, None).unwrap();
        assert_eq!(v.regime, Regime::PairingOuterSmallData);
        let k1 = bundle.require("kappa_1").unwrap();
        let expect = bundle.require("B_1").unwrap() * eps.powf(-1.0 / (0.5 * k1));
        assert_relative_eq!(v.bound.unwrap().value.unwrap(), expect, max_relative = 1e-12);
        assert_eq!(v.bound.unwrap().formula, "pairing_lifespan_small_amplitude");

        // above the threshold the amplitude condition fails
        let loud = params(0.5, 1.0, 1, 2.0, one(), 2.0 * eps2, one(), 0.0, 0.75);
        let v = classify(&loud, &pf, CNQ, None).unwrap();
        assert_eq!(v.regime, Regime::Inapplicable);
        assert!(!find(&v.conditions, "amplitude_below_threshold").holds);
    }

    #[test]
    fn pairing_inner_bound_uses_the_ball_chain() {
        let base = params(0.5, 1.0, 1, 2.0, one(), 1.0, one(), 0.0, 0.3);
        let bundle = pairing_method_constants(&base, CNQ).unwrap();
        let eps3 = bundle.require("eps_3").unwrap();
        let eps = 2.0 * eps3;
        let pr = params(0.5, 1.0, 1, 2.0, one(), eps, one(), 0.0, 0.3);
        let pf = profile(ProfileKind::InnerSingular, 0.3, 0.0, SignRoute::Pairing, 1.25);
        let v = classify(&pr, &pf, CNQ, None).unwrap();
        assert_eq!(v.regime, Regime::PairingInnerLargeData);
        let k0 = bundle.require("kappa_0").unwrap();
        let expect = bundle.require("B_2").unwrap() * eps.powf(-1.0 / (0.5 * k0));
        assert_relative_eq!(v.bound.unwrap().value.unwrap(), expect, max_relative = 1e-12);

        // the threshold is inclusive
        let edge = params(0.5, 1.0, 1, 2.0, one(), eps3, one(), 0.0, 0.3);
        let v = classify(&edge, &pf, CNQ, None).unwrap();
        assert_eq!(v.regime, Regime::PairingInnerLargeData);
        assert_eq!(find(&v.conditions, "amplitude_above_threshold").margin, 0.0);
    }

    #[test]
    fn functional_search_verifies_some_radius() {
        // barrier exponent N - b/(p-1) = 0, so the margin saturates at
        // eps int G_1 - C_pairing for large radii
        let pr = params(0.5, 1.0, 1, 2.0, one(), 10.0, one(), 0.0, 0.0);
        let pf = profile(ProfileKind::Sobolev, 0.0, 0.0, SignRoute::Pairing, 0.0);
        let u0 = |r: f64| Complex64::new((-r * r).exp(), 0.0);
        let v = classify(&pr, &pf, CNQ, Some(&u0)).unwrap();
        assert_eq!(v.regime, Regime::PairingFunctional);
        let bundle = pairing_method_constants(&pr, CNQ).unwrap();
        let expect = 10.0 * (0.25 * core::f64::consts::PI).cos() * core::f64::consts::PI.sqrt()
            - bundle.require("C_pairing").unwrap();
        assert!(expect > 0.0);
        assert_relative_eq!(
            find(&v.conditions, "functional_exceeds_scaling").margin,
            expect,
            max_relative = 1e-6
        );
        let b = v.bound.unwrap();
        assert_eq!(b.kind, BoundKind::LifespanUpper);
        assert_eq!(b.formula, "pairing_window_upper_endpoint");
        assert!(b.value.unwrap().is_finite() && b.value.unwrap() > 0.0);

        // without a datum the search cannot run
        let sym = classify(&pr, &pf, CNQ, None).unwrap();
        assert_eq!(sym.regime, Regime::Inapplicable);
        let c = find(&sym.conditions, "functional_exceeds_scaling");
        assert!(!c.holds && c.margin.is_nan());
    }

    #[test]
    fn sobolev_weight_route_has_no_candidates() {
        let pr = params(0.5, 1.0, 1, 1.5, one(), 1.0, one(), 0.0, 0.0);
        let pf = profile(ProfileKind::Sobolev, 0.0, 0.0, SignRoute::RealPart, 1.0);
        let v = classify(&pr, &pf, CNQ, None).unwrap();
        assert_eq!(v.regime, Regime::Inapplicable);
        assert!(v.conditions.is_empty());
        assert!(v.attempts.is_empty());
    }

    #[test]
    fn check_conditions_reports_the_primary_list() {
        let pr = params(0.5, 1.0, 1, 1.5, one(), 1.0, one(), 0.0, 0.0);
        let pf = profile(ProfileKind::Integrable, 0.0, 0.0, SignRoute::RealPart, 1.0);
        let list = check_conditions(&pr, &pf, CNQ, None).unwrap();
        let v = classify(&pr, &pf, CNQ, None).unwrap();
        assert_eq!(list, v.conditions);
    }

    #[test]
    fn lifespan_piecewise_is_continuous_and_scales() {
        let pr = params(0.5, 1.0, 1, 1.8, one(), 0.01, one(), 0.0, 0.7);
        let pf = profile(ProfileKind::OuterSingular, 0.7, 0.0, SignRoute::RealPart, 1.0);
        let eta = default_eta(pr.alpha(), 1.8).unwrap();
        let bundle =
            weight_method_constants(&pr, eta, CNQ, SignCase::RealPositive, None).unwrap();
        let eps0 = bundle.require("eps_0").unwrap();
        let k0 = bundle.require("kappa_0").unwrap();

        // identity B_0 eps_0^{-1/(a kappa_0)} = 1 makes the branches agree
        let b0 = bundle.require("B_0").unwrap();
        assert_abs_diff_eq!(b0 * eps0.powf(-1.0 / (0.5 * k0)), 1.0, epsilon = 1e-10);
        assert_eq!(lifespan_bound(&pr, &pf, CNQ, eps0).unwrap(), 1.0);
        assert_eq!(lifespan_bound(&pr, &pf, CNQ, 2.0 * eps0).unwrap(), 1.0);
        let just_below = lifespan_bound(&pr, &pf, CNQ, eps0 * (1.0 - 1e-12)).unwrap();
        assert_abs_diff_eq!(just_below, 1.0, epsilon = 1e-9);

        // doubling the amplitude below threshold scales by 2^{-1/(a kappa_0)}
        let eps = eps0 * 1e-3;
        let v1 = lifespan_bound(&pr, &pf, CNQ, eps).unwrap();
        let v2 = lifespan_bound(&pr, &pf, CNQ, 2.0 * eps).unwrap();
        assert_relative_eq!(v2 / v1, 2.0f64.powf(-1.0 / (0.5 * k0)), max_relative = 1e-12);

        // nonincreasing across the whole range
        let mut last = f64::INFINITY;
        for i in 0..60 {
            let e = eps0 * 1e-4 * 1.3f64.powi(i);
            let v = lifespan_bound(&pr, &pf, CNQ, e).unwrap();
            assert!(v <= last * (1.0 + 1e-13), "bound increased at eps = {e}");
            last = v;
        }
    }

    #[test]
    fn lifespan_bound_rejects_wrong_verdicts() {
        // global-nonexistence profile: no lifespan formula to evaluate
        let pr = params(0.5, 1.0, 1, 1.5, one(), 1.0, one(), 0.0, 0.0);
        let pf = profile(ProfileKind::Integrable, 0.0, 0.0, SignRoute::RealPart, 1.0);
        assert_eq!(lifespan_bound(&pr, &pf, CNQ, 0.5), Err(RegimeError::Domain));
        assert_eq!(lifespan_bound(&pr, &pf, CNQ, 0.0), Err(RegimeError::Domain));

        // inner window below the amplitude threshold: hypothesis, not domain
        let pr = params(0.5, 1.0, 1, 2.0, one(), 1.0, one(), 0.0, 0.3);
        let pf = profile(ProfileKind::InnerSingular, 0.3, 0.0, SignRoute::RealPart, 1.0);
        assert!(matches!(
            lifespan_bound(&pr, &pf, CNQ, 1e-9),
            Err(RegimeError::Hypothesis(_))
        ));
        let eta = default_eta(pr.alpha(), 2.0).unwrap();
        let bundle =
            weight_method_constants(&pr, eta, CNQ, SignCase::RealPositive, None).unwrap();
        let eps1 = bundle.require("eps_1").unwrap();
        assert!(lifespan_bound(&pr, &pf, CNQ, 2.0 * eps1).unwrap() > 0.0);
    }

    #[test]
    fn power_buckets_partition_the_line() {
        // for fixed (N, b, s) exactly one of the four power regimes holds
        for &(dim, beta, s) in &[(1u32, 1.0f64, 0.0f64), (2, 0.5, 0.3), (3, 1.5, 1.0)] {
            let (pf, ps) = critical_exponents(dim, beta, s).unwrap();
            for i in 0..200 {
                let p = 1.0 + 0.025 * (i as f64 + 1.0);
                let buckets = [p < pf, p == pf, pf < p && p <= ps, p > ps];
                assert_eq!(
                    buckets.iter().filter(|b| **b).count(),
                    1,
                    "p = {p}, pf = {pf}, ps = {ps}"
                );
            }
            // the knife edge itself
            let buckets = [pf < pf, pf == pf, false, pf > ps];
            assert_eq!(buckets.iter().filter(|b| **b).count(), 1);
        }
    }

    #[test]
    fn verdict_serializes_with_stable_names() {
        extern crate std;
        use std::string::String;

        let pr = params(0.5, 1.0, 1, 2.0, one(), 1e-3, one(), 0.0, 0.75);
        let pf = profile(ProfileKind::OuterSingular, 0.75, 0.0, SignRoute::RealPart, 1.5);
        let v = classify(&pr, &pf, CNQ, None).unwrap();
        let json: String = serde_json::to_string(&v).unwrap();
        assert!(json.contains("\"regime\":\"weight_outer_small_data\""));
        assert!(json.contains("\"kind\":\"lifespan_upper\""));
        assert!(json.contains("\"formula\":\"lifespan_small_amplitude_piecewise\""));
        assert!(json.contains("\"name\":\"decay_window\""));

        // unverified margins and absent values serialize as null
        let lam = Complex64::new(0.0, 1.0);
        let pr = params(0.5, 1.0, 1, 2.0, lam, 1.0, one(), 0.0, 0.0);
        let pf = profile(ProfileKind::Integrable, 0.0, 0.0, SignRoute::RealPart, 1.0e6);
        let v = classify(&pr, &pf, CNQ, None).unwrap();
        let json = serde_json::to_string(&v).unwrap();
        assert!(json.contains("\"name\":\"threshold_exceeded\",\"holds\":false,\"margin\":null"));

        let pr = params(0.5, 1.0, 1, 1.5, one(), 1.0, one(), 0.0, 0.0);
        let pf = profile(ProfileKind::Integrable, 0.0, 0.0, SignRoute::RealPart, 1.0);
        let json = serde_json::to_string(&classify(&pr, &pf, CNQ, None).unwrap()).unwrap();
        assert!(json.contains("\"value\":null"));
    }

    #[test]
    fn error_messages_name_the_failure() {
        extern crate std;
        use std::format;
        assert_eq!(
            format!("{}", RegimeError::Domain),
            "parameter outside the admissible domain"
        );
        assert_eq!(
            format!("{}", RegimeError::Hypothesis("profile decay rate must match the parameter set")),
            "hypothesis violated: profile decay rate must match the parameter set"
        );
        assert_eq!(
            format!("{}", RegimeError::Accuracy),
            "a numeric evaluation did not reach the requested accuracy"
        );
    }

    #[test]
    fn radial_pairing_handles_flat_and_scaled_weights() {
        // flat route: int_0^inf exp(-r) dr = 1 on the half line, omega_1 = 2
        let u0 = |r: f64| Complex64::new((-r).exp(), 0.0);
        let flat = radial_pairing(1, order(0.5), one(), None, &u0).unwrap();
        let expect = 2.0 * (0.25 * core::f64::consts::PI).cos();
        assert_relative_eq!(flat, expect, max_relative = 1e-10);

        // a huge weight scale must not step over the datum
        let weight = SpaceTestFn::new(1, 2.0, 1e6).unwrap();
        let weighted = radial_pairing(1, order(0.5), one(), Some(&weight), &u0).unwrap();
        assert_relative_eq!(weighted, expect, max_relative = 1e-9);
    }
}
