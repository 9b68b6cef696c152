//! Constant chains entering blow-up and nonexistence criteria.
//!
//! The underlying model is the semilinear fractional evolution problem
//!
//! ```text
//! i^a D_t^a u + (-Delta)^{b/2} u = lambda |u|^p,   u(0, x) = epsilon u_0(x),
//! ```
//!
//! posed on `R^N` with Caputo order a in (0, 1), Laplacian order b in (0, 2),
//! exponent p > 1, and complex coupling lambda. Multiplying by a test function
//! and estimating produces explicit constants whose signs and sizes decide
//! between finite-time blow-up, bounded lifespan, and inconclusive data. This
//! module evaluates those constants as named bundles; the heavy analysis
//! (quadrature, operator action) lives in [`crate::testfn`] and [`crate::ops`].
//!
//! * [`ProblemParams`]: validated parameter set (a, b, N, p, lambda, ...).
//! * [`critical_exponents`]: the scaling exponent `1 + b/N` and the
//!   regularity-limited exponent `1 + 2b/(N - 2s)`.
//! * [`decompose_initial_data`]: real/imaginary parts of `i^a u_0`, a rotation
//!   of (Re u_0, Im u_0) by the angle `a pi/2`.
//! * [`blowup_bound_constants`]: two-sided window `[T_L, T_U]` for the blow-up
//!   time of the comparison ordinary differential inequality.
//! * [`weight_method_constants`]: the chain `C_eps, C_1, ..., C_8, C_0` from
//!   pairing the equation with the product weight `phi(x/R) (1 - t/T)^eta`,
//!   plus the lifespan constants that exist on each admissible `k` window.
//! * [`pairing_method_constants`]: the chain obtained by pairing with the
//!   spatial weight alone and comparing to an ordinary differential
//!   inequality in time.
//! * [`initial_pairing_radial`]: the weighted initial pairing
//!   `Re(i^a gamma int u_0 phi(x/R) dx)` for radial data.
//!
//! Every bundle entry is tagged [`Provenance::Exact`] (closed form in the
//! inputs) or [`Provenance::Empirical`] (inherits a measured constant, e.g.
//! the comparability constant of the weight's fractional Laplacian).

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::f64::consts::PI;
use core::fmt;

use num_complex::Complex64;
// resolves float math in no_std builds; shadowed when std is in the graph
#[allow(unused_imports)]
use num_traits::Float;
use serde::Serialize;

use crate::grid::FracOrder;
use crate::quad::{integrate, QuadError};
use crate::special::gamma_pos;
use crate::testfn::{SpaceTestFn, TestFnError};

/// Error type for constant evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ConstantsError {
    /// A parameter lies outside the admissible domain.
    Domain,
    /// A structural hypothesis of the requested chain fails.
    Hypothesis(&'static str),
    /// A requested constant is not present in the bundle.
    Missing(&'static str),
    /// A quadrature did not reach the requested accuracy.
    Accuracy {
        /// Estimated absolute error of the returned quantity.
        estimate: f64,
    },
}

impl fmt::Display for ConstantsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Domain => write!(f, "parameter outside the admissible domain"),
            Self::Hypothesis(h) => write!(f, "hypothesis violated: {h}"),
            Self::Missing(name) => write!(f, "constant not present in bundle: {name}"),
            Self::Accuracy { estimate } => {
                write!(f, "quadrature did not converge (error estimate {estimate:e})")
            }
        }
    }
}

impl From<TestFnError> for ConstantsError {
    fn from(e: TestFnError) -> Self {
        match e {
            TestFnError::Domain | TestFnError::Divergent => Self::Domain,
            TestFnError::Hypothesis(h) => Self::Hypothesis(h),
            TestFnError::Accuracy { estimate } => Self::Accuracy { estimate },
        }
    }
}

/// How a bundle entry was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    /// Closed form in the validated inputs.
    Exact,
    /// Depends on a numerically measured input and inherits its error.
    Empirical,
}

/// A constant value together with its provenance tag.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TaggedConstant {
    /// Value of the constant.
    pub value: f64,
    /// Whether the value is closed form or inherits measured error.
    pub provenance: Provenance,
}

/// Named, deterministically ordered collection of tagged constants.
///
/// Entries whose defining hypotheses fail are simply absent; [`Self::require`]
/// turns absence into a named error instead of a silent placeholder value.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
#[serde(transparent)]
pub struct ConstantBundle {
    entries: BTreeMap<&'static str, TaggedConstant>,
}

impl ConstantBundle {
    /// Empty bundle.
    pub fn new() -> Self {
        Self::default()
    }

    /// Inserts `name` with an explicit provenance tag.
    pub fn insert(&mut self, name: &'static str, value: f64, provenance: Provenance) {
        self.entries.insert(name, TaggedConstant { value, provenance });
    }

    /// Looks a constant up by name.
    pub fn get(&self, name: &str) -> Option<TaggedConstant> {
        self.entries.get(name).copied()
    }

    /// Value of `name`, or [`ConstantsError::Missing`] naming the absentee.
    pub fn require(&self, name: &'static str) -> Result<f64, ConstantsError> {
        self.entries
            .get(name)
            .map(|c| c.value)
            .ok_or(ConstantsError::Missing(name))
    }

    /// Whether `name` is present.
    pub fn contains(&self, name: &str) -> bool {
        self.entries.contains_key(name)
    }

    /// Iterates entries in name order.
    pub fn iter(&self) -> impl Iterator<Item = (&'static str, TaggedConstant)> + '_ {
        self.entries.iter().map(|(k, v)| (*k, *v))
    }

    /// Number of entries.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    /// Whether the bundle is empty.
    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Principal power `i^a = exp(i a pi/2) = (cos(a pi/2), sin(a pi/2))`.
///
/// Negative `a` gives the conjugate rotation `i^{-a}`.
pub fn i_power(a: f64) -> Complex64 {
    let half = 0.5 * PI * a;
    Complex64::new(half.cos(), half.sin())
}

/// Surface measure `omega_N = 2 pi^{N/2} / Gamma(N/2)` of the unit sphere in
/// `R^N` (counting measure of two points at N = 1). Any `N >= 1`.
pub fn sphere_surface_measure(dim: u32) -> Result<f64, ConstantsError> {
    if dim == 0 {
        return Err(ConstantsError::Domain);
    }
    let half = 0.5 * dim as f64;
    Ok(2.0 * PI.powf(half) / gamma_pos(half))
}

/// Mass `A_0 = int_{R^N} (1 + |x|^2)^{-q/2} dx` of the algebraic weight, in
/// closed form `pi^{N/2} Gamma((q - N)/2) / Gamma(q/2)`. Requires `q > N`.
pub fn weight_mass(dim: u32, q: f64) -> Result<f64, ConstantsError> {
    if dim == 0 || !q.is_finite() {
        return Err(ConstantsError::Domain);
    }
    let n = dim as f64;
    if q <= n {
        return Err(ConstantsError::Domain);
    }
    Ok(PI.powf(0.5 * n) * gamma_pos(0.5 * (q - n)) / gamma_pos(0.5 * q))
}

/// Critical exponents `(1 + b/N, 1 + 2b/(N - 2s))` for Laplacian order `b/2`
/// and data regularity `s`.
///
/// The first separates global existence from mass-driven blow-up; the second
/// is the largest exponent reachable from `H^s` data and requires `s < N/2`.
pub fn critical_exponents(dim: u32, beta: f64, sobolev: f64) -> Result<(f64, f64), ConstantsError> {
    if dim == 0 || !(beta > 0.0 && beta < 2.0) || !(sobolev >= 0.0 && sobolev.is_finite()) {
        return Err(ConstantsError::Domain);
    }
    let n = dim as f64;
    if sobolev >= 0.5 * n {
        return Err(ConstantsError::Domain);
    }
    Ok((1.0 + beta / n, 1.0 + 2.0 * beta / (n - 2.0 * sobolev)))
}

/// Which sign-resolved pairing of the coupling with the rotated data a
/// criterion uses.
///
/// Writing `lambda = lambda_1 + i lambda_2` and `(G_1, G_2)` for the rotated
/// data components, the four routes pair `+G_1` with `+lambda_1`, `-G_1` with
/// `-lambda_1`, `+G_2` with `+lambda_2`, and `-G_2` with `-lambda_2`. Each
/// route requires its effective coefficient to be positive.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SignCase {
    /// Pairs `G_1` with `Re lambda`.
    RealPositive,
    /// Pairs `-G_1` with `-Re lambda`.
    RealNegative,
    /// Pairs `G_2` with `Im lambda`.
    ImagPositive,
    /// Pairs `-G_2` with `-Im lambda`.
    ImagNegative,
}

impl SignCase {
    /// Effective positive coefficient `lambda_eff` of the route.
    pub fn effective_coefficient(self, lambda: Complex64) -> f64 {
        match self {
            Self::RealPositive => lambda.re,
            Self::RealNegative => -lambda.re,
            Self::ImagPositive => lambda.im,
            Self::ImagNegative => -lambda.im,
        }
    }
}

/// Validated parameter set of the model problem.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProblemParams {
    alpha: FracOrder,
    beta: f64,
    dim: u32,
    p: f64,
    lambda: Complex64,
    epsilon: f64,
    gamma: Complex64,
    sobolev: f64,
    k: f64,
}

impl ProblemParams {
    /// New parameter set.
    ///
    /// Requires a in (0, 1) strictly (the classical endpoint a = 1 is
    /// rejected), b in (0, 2), N >= 1, p > 1, lambda != 0, data amplitude
    /// epsilon > 0, regularity s >= 0, and a finite decay rate k; gamma is an
    /// arbitrary finite pairing multiplier.
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        alpha: FracOrder,
        beta: f64,
        dim: u32,
        p: f64,
        lambda: Complex64,
        epsilon: f64,
        gamma: Complex64,
        sobolev: f64,
        k: f64,
    ) -> Result<Self, ConstantsError> {
        let ok = alpha.value() < 1.0
            && beta > 0.0
            && beta < 2.0
            && dim >= 1
            && p.is_finite()
            && p > 1.0
            && lambda.re.is_finite()
            && lambda.im.is_finite()
            && lambda.norm_sqr() > 0.0
            && epsilon.is_finite()
            && epsilon > 0.0
            && gamma.re.is_finite()
            && gamma.im.is_finite()
            && sobolev.is_finite()
            && sobolev >= 0.0
            && k.is_finite();
        if !ok {
            return Err(ConstantsError::Domain);
        }
        Ok(Self { alpha, beta, dim, p, lambda, epsilon, gamma, sobolev, k })
    }

    /// Caputo order a.
    pub fn alpha(&self) -> FracOrder {
        self.alpha
    }

    /// Laplacian order b (the operator is `(-Delta)^{b/2}`).
    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// Space dimension N.
    pub fn dim(&self) -> u32 {
        self.dim
    }

    /// Nonlinearity exponent p.
    pub fn p(&self) -> f64 {
        self.p
    }

    /// Complex coupling lambda.
    pub fn lambda(&self) -> Complex64 {
        self.lambda
    }

    /// Data amplitude epsilon.
    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    /// Pairing multiplier gamma.
    pub fn gamma(&self) -> Complex64 {
        self.gamma
    }

    /// Data regularity s.
    pub fn sobolev(&self) -> f64 {
        self.sobolev
    }

    /// Decay rate k of the data lower bound `|x|^{-k}`.
    pub fn k(&self) -> f64 {
        self.k
    }
}

/// Pointwise decomposition of complex data into rotated real components.
#[derive(Debug, Clone, PartialEq)]
pub struct DataDecomposition {
    /// Real part of the data.
    pub g: Vec<f64>,
    /// Imaginary part of the data.
    pub h: Vec<f64>,
    /// `G_1 = cos(a pi/2) g - sin(a pi/2) h`, the real part of `i^a u_0`.
    pub g1: Vec<f64>,
    /// `G_2 = cos(a pi/2) h + sin(a pi/2) g`, the imaginary part of `i^a u_0`.
    pub g2: Vec<f64>,
}

/// Splits sampled data `u_0 = g + ih` into `(g, h)` and the components
/// `(G_1, G_2)` of `i^a u_0`.
///
/// `(G_1, G_2)` is the rotation of `(g, h)` by the angle `a pi/2`, so
/// `G_1^2 + G_2^2 = g^2 + h^2` pointwise.
pub fn decompose_initial_data(u0: &[Complex64], alpha: FracOrder) -> DataDecomposition {
    let rot = i_power(alpha.value());
    let (c, s) = (rot.re, rot.im);
    let mut g = Vec::with_capacity(u0.len());
    let mut h = Vec::with_capacity(u0.len());
    let mut g1 = Vec::with_capacity(u0.len());
    let mut g2 = Vec::with_capacity(u0.len());
    for z in u0 {
        g.push(z.re);
        h.push(z.im);
        g1.push(c * z.re - s * z.im);
        g2.push(c * z.im + s * z.re);
    }
    DataDecomposition { g, h, g1, g2 }
}

/// Two-sided window for the blow-up time of the comparison ordinary
/// differential inequality `D^a f >= B f^p`, `f(0) = f0 > 0`.
///
/// Keys: `G_p = min(2^p, p^p/(p-1)^{p-1})`, `H_p_alpha = max(p-1,
/// 2^{-pa/(p-1)})`, and the window
///
/// ```text
/// T_L = [Gamma(1+a) / (B f0^{p-1} G_p)]^{1/a},
/// T_U = [Gamma(1+a) / (B f0^{p-1} H_p_alpha)]^{1/a},
/// ```
///
/// with `T_L < T_U` always. The classical endpoint a = 1 is admitted and
/// gives `T_U = 1/(B f0^{p-1} (p-1))`, the exact classical blow-up time.
pub fn blowup_bound_constants(
    alpha: FracOrder,
    p: f64,
    b: f64,
    f0: f64,
) -> Result<ConstantBundle, ConstantsError> {
    if !(p.is_finite() && p > 1.0 && b.is_finite() && b > 0.0 && f0.is_finite() && f0 > 0.0) {
        return Err(ConstantsError::Domain);
    }
    let a = alpha.value();
    let gp = (2.0f64.powf(p)).min(p.powf(p) / (p - 1.0).powf(p - 1.0));
    let hpa = (p - 1.0).max(2.0f64.powf(-p * a / (p - 1.0)));
    let scale = gamma_pos(1.0 + a) / (b * f0.powf(p - 1.0));
    let t_l = (scale / gp).powf(1.0 / a);
    let t_u = (scale / hpa).powf(1.0 / a);
    let mut out = ConstantBundle::new();
    out.insert("G_p", gp, Provenance::Exact);
    out.insert("H_p_alpha", hpa, Provenance::Exact);
    out.insert("T_L", t_l, Provenance::Exact);
    out.insert("T_U", t_u, Provenance::Exact);
    Ok(out)
}

/// Constant chain of the product-weight estimate, plus the lifespan constants
/// of the admissible decay windows.
///
/// The chain pairs the equation with `phi(x/R) (1 - t/T)^eta`, where `phi =
/// <x>^{-N-b}`, applies Young's inequality with parameter `eps_Y in (0,
/// lambda_eff/2]` (default `lambda_eff/2`), and collapses, after the choice
/// `R = T^{a/b}`, to the bound
///
/// ```text
/// int G phi(x/T^{a/b}) dx <= C_8 T^{a [N/b - 1/(p-1)]},    C_8 = max(C_6, C_7)/C_2.
/// ```
///
/// Always present: `C_eps`, `C_1 ... C_8`, `C_0` (the amplitude-free form of
/// `C_8`), the weight mass `A_0`, the measured comparability constant `C_Nq`,
/// and `kappa_0 = 1/(p-1) - k/b`. Present only on their decay windows:
///
/// * `N/2 < k < b/(p-1)` (slowly decaying lower bound at infinity): threshold
///   `eps_0` and lifespan factor `B_0 = eps_0^{1/(a kappa_0)}`, so a data
///   amplitude `eps < eps_0` keeps the lifespan below `B_0 eps^{-1/(a kappa_0)}`.
/// * `k < min(N/2 - s, b/(p-1))` (singular lower bound at the origin):
///   threshold `eps_1` and factor `C_bar`, the large-amplitude analogue.
///
/// `c_nq` is the measured constant comparing `|(-Delta)^{b/2} phi|` to
/// `phi^{1/p'}` and makes every entry downstream of it empirical.
pub fn weight_method_constants(
    params: &ProblemParams,
    eta: f64,
    c_nq: f64,
    case: SignCase,
    eps_young: Option<f64>,
) -> Result<ConstantBundle, ConstantsError> {
    if !(c_nq.is_finite() && c_nq > 0.0) {
        return Err(ConstantsError::Domain);
    }
    let a = params.alpha.value();
    let (beta, p, k) = (params.beta, params.p, params.k);
    let n = params.dim as f64;
    let lam = case.effective_coefficient(params.lambda);
    if lam <= 0.0 {
        return Err(ConstantsError::Hypothesis("effective coefficient lambda_eff > 0"));
    }
    let eps_y = eps_young.unwrap_or(0.5 * lam);
    if !(eps_y > 0.0 && eps_y <= 0.5 * lam) {
        return Err(ConstantsError::Hypothesis("Young parameter in (0, lambda_eff/2]"));
    }
    let window = crate::testfn::window_constants(params.alpha, p, eta)?;
    let pc = p / (p - 1.0);
    let a0 = weight_mass(params.dim, n + beta)?;
    let omega = sphere_surface_measure(params.dim)?;
    let c_eps = (p - 1.0) * (p * eps_y).powf(-1.0 / (p - 1.0)) / p;
    let c3 = c_nq.powf(pc) * a0;
    let c4 = 2.0f64.powf(pc) * c_eps;
    let c5 = c_eps;
    let c6 = window.c1 * c4 * a0;
    let c7 = c3 * c5 / (eta + 1.0);
    let c8 = c6.max(c7) / window.c2;
    let c0 = 2.0f64.powf(1.0 / (p - 1.0)) / (p.powf(pc) * window.c2)
        * (window.c1 * 2.0f64.powf(pc)).max(c_nq.powf(pc) / (eta + 1.0));
    let kappa0 = 1.0 / (p - 1.0) - k / beta;

    let mut out = ConstantBundle::new();
    out.insert("C_eps", c_eps, Provenance::Exact);
    out.insert("C_1", window.c1, Provenance::Exact);
    out.insert("C_2", window.c2, Provenance::Exact);
    out.insert("C_3", c3, Provenance::Empirical);
    out.insert("C_4", c4, Provenance::Exact);
    out.insert("C_5", c5, Provenance::Exact);
    out.insert("C_6", c6, Provenance::Exact);
    out.insert("C_7", c7, Provenance::Empirical);
    out.insert("C_8", c8, Provenance::Empirical);
    out.insert("C_0", c0, Provenance::Empirical);
    out.insert("A_0", a0, Provenance::Exact);
    out.insert("C_Nq", c_nq, Provenance::Empirical);
    out.insert("kappa_0", kappa0, Provenance::Exact);

    // shared amplitude factor of both thresholds
    let stem = c0 / omega * 2.0f64.powf(0.5 * (n + beta)) * a0 * lam.powf((p - 2.0) / (p - 1.0));
    if 0.5 * n < k && k < beta / (p - 1.0) {
        let eps0 = stem * (k + beta);
        out.insert("eps_0", eps0, Provenance::Empirical);
        out.insert("B_0", eps0.powf(1.0 / (a * kappa0)), Provenance::Empirical);
    }
    if k < (0.5 * n - params.sobolev).min(beta / (p - 1.0)) {
        let eps1 = stem * (n - k);
        out.insert("eps_1", eps1, Provenance::Empirical);
        out.insert("C_bar", eps1.powf(1.0 / (a * kappa0)), Provenance::Empirical);
    }
    Ok(out)
}

/// Constant chain of the spatial-pairing estimate, plus the lifespan
/// constants of the admissible decay windows.
///
/// Pairing the equation with `phi(x/R)` alone and taking the real part after
/// multiplication by `gamma` yields an ordinary differential inequality for
/// the pairing functional whose coefficients are
///
/// ```text
/// C_pairing = [2 C_half Re(gamma lambda)^{-p'} |gamma|^{p^2/(p-1)} A_0^p C_Nq^{p'}]^{1/p},
/// D_pairing = Re(gamma lambda)/2 * |gamma|^{-p} A_0^{-(p-1)},
/// ```
///
/// with `C_half = (p-1) p^{-p'} 2^{1/(p-1)}` and `p' = p/(p-1)`. The route
/// requires `Re(gamma lambda) > 0`. Always present: `C_half`, `C_pairing`,
/// `D_pairing`, `A_0`, `C_Nq`, `kappa_0 = 1/(p-1) - k/b`, and `kappa_1 =
/// 1/(p-1) - min(N, k)/b`. Present only on their decay windows:
///
/// * `N/2 < k < b/(p-1)`: annulus mass `I_1`, amplitude threshold `eps_2`
///   (the route applies for `eps <= eps_2`), and lifespan factor `B_1`, so
///   the blow-up time is at most `B_1 eps^{-1/(a kappa_1)}`.
/// * `k < min(N/2 - s, b/(p-1))`: ball mass `I_2`, threshold `eps_3` (the
///   route applies for `eps >= eps_3`), and factor `B_2`, with blow-up time
///   at most `B_2 eps^{-1/(a kappa_0)}`.
pub fn pairing_method_constants(
    params: &ProblemParams,
    c_nq: f64,
) -> Result<ConstantBundle, ConstantsError> {
    if !(c_nq.is_finite() && c_nq > 0.0) {
        return Err(ConstantsError::Domain);
    }
    let a = params.alpha.value();
    let (beta, p, k) = (params.beta, params.p, params.k);
    let n = params.dim as f64;
    let re_gl = (params.gamma * params.lambda).re;
    if re_gl <= 0.0 {
        return Err(ConstantsError::Hypothesis("Re(gamma lambda) > 0"));
    }
    let pc = p / (p - 1.0);
    let a0 = weight_mass(params.dim, n + beta)?;
    let omega = sphere_surface_measure(params.dim)?;
    let gabs = params.gamma.norm();
    let c_half = (p - 1.0) * p.powf(-pc) * 2.0f64.powf(1.0 / (p - 1.0));
    let c_pair = (2.0 * c_half
        * re_gl.powf(-pc)
        * gabs.powf(p * p / (p - 1.0))
        * a0.powf(p)
        * c_nq.powf(pc))
    .powf(1.0 / p);
    let d_pair = 0.5 * re_gl * gabs.powf(-p) * a0.powf(-(p - 1.0));
    let kappa0 = 1.0 / (p - 1.0) - k / beta;
    let kappa1 = 1.0 / (p - 1.0) - k.min(n) / beta;

    let mut out = ConstantBundle::new();
    out.insert("C_half", c_half, Provenance::Exact);
    out.insert("C_pairing", c_pair, Provenance::Empirical);
    out.insert("D_pairing", d_pair, Provenance::Exact);
    out.insert("A_0", a0, Provenance::Exact);
    out.insert("C_Nq", c_nq, Provenance::Empirical);
    out.insert("kappa_0", kappa0, Provenance::Exact);
    out.insert("kappa_1", kappa1, Provenance::Exact);

    // shared lifespan prefactor (p-1)^{-1/a} D^{-1/a} Gamma(1+a)^{1/a}
    let stem = (p - 1.0).powf(-1.0 / a) * d_pair.powf(-1.0 / a) * gamma_pos(1.0 + a).powf(1.0 / a);
    if 0.5 * n < k && k < beta / (p - 1.0) {
        // annulus {1 <= |x| <= R}; the k = N limit of both branches is
        // omega_N 2^{-N-b} ln 2, approached continuously
        let i1 = if k < n {
            2.0f64.powf(-n - beta - 1.0) * omega / (n - k)
        } else if k == n {
            2.0f64.powf(-n - beta) * omega * core::f64::consts::LN_2
        } else {
            2.0f64.powf(-n - beta) * omega * (2.0f64.powf(n - k) - 1.0) / (n - k)
        };
        let eps2 = if k < n {
            c_pair / i1 * 2.0f64.powf(1.0 - beta * kappa1 / (n - k))
        } else {
            c_pair / i1 * 2.0f64.powf(1.0 - beta * kappa1)
        };
        let b1 = stem
            * 2.0f64.powf(1.0 / (a * kappa1))
            * c_pair.powf(k.min(n) * (p - 1.0) / (a * beta * kappa1))
            * i1.powf(-1.0 / (a * kappa1));
        out.insert("I_1", i1, Provenance::Exact);
        out.insert("eps_2", eps2, Provenance::Empirical);
        out.insert("B_1", b1, Provenance::Empirical);
    }
    if k < (0.5 * n - params.sobolev).min(beta / (p - 1.0)) {
        let i2 = 2.0f64.powf(-n - beta) * omega / (n - k);
        let eps3 = 2.0 * c_pair / i2;
        let b2 = stem
            * 2.0f64.powf(1.0 / (a * kappa0))
            * c_pair.powf(k * (p - 1.0) / (a * beta * kappa0))
            * i2.powf(-1.0 / (a * kappa0));
        out.insert("I_2", i2, Provenance::Exact);
        out.insert("eps_3", eps3, Provenance::Empirical);
        out.insert("B_2", b2, Provenance::Empirical);
    }
    Ok(out)
}

/// Weighted initial pairing `Re(i^a gamma int u_0 phi(x/R) dx)` for radial
/// data `u_0(r)`.
///
/// `weight` supplies `phi` and the scale R; the integral is
/// `omega_N int_0^inf Re(i^a gamma u_0(r)) phi(r/R) r^{N-1} dr`, evaluated by
/// adaptive quadrature with the horizon doubled until the weight's algebraic
/// tail is negligible. The tail estimate bounds `|u_0|` by its sampled
/// magnitude on the last octave, so the data must stay bounded at infinity.
pub fn initial_pairing_radial<F>(
    u0: F,
    gamma: Complex64,
    alpha: FracOrder,
    weight: &SpaceTestFn,
) -> Result<f64, ConstantsError>
where
    F: Fn(f64) -> Complex64,
{
    let rot = i_power(alpha.value()) * gamma;
    let n = weight.dim() as f64;
    let q = weight.decay_exponent();
    let scale = weight.scale();
    let omega = sphere_surface_measure(weight.dim() as u32)?;
    let part = |r: f64| (rot * u0(r)).re;
    let integrand = |r: f64| part(r) * weight.eval_radius(r) * r.powf(n - 1.0);
    let mut upper = 8.0 * scale;
    let (mut acc, mut err) = pairing_seg(&integrand, 0.0, upper)?;
    let mut steps = 0usize;
    loop {
        // sampled bound of the data on the last octave
        let mut part_max = 0.0f64;
        for j in 0..=16 {
            part_max = part_max.max(part(upper * (0.5 + 0.5 * j as f64 / 16.0)).abs());
        }
        // tail <= sup|part| int_L^inf (r/R)^{-q} r^{N-1} dr
        let tail = part_max * scale.powf(q) * upper.powf(n - q) / (q - n);
        if tail <= 1e-12 * (acc.abs() + err) + 1e-300 {
            err += tail;
            break;
        }
        if steps >= 200 {
            return Err(ConstantsError::Accuracy { estimate: omega * tail });
        }
        let (v, e) = pairing_seg(&integrand, upper, 2.0 * upper)?;
        acc += v;
        err += e;
        upper *= 2.0;
        steps += 1;
    }
    let _ = err;
    Ok(omega * acc)
}

// budget exhaustion keeps the partial value; only a bad interval is fatal
fn pairing_seg<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Result<(f64, f64), ConstantsError> {
    match integrate(f, a, b, 1e-12, 1e-300, 4096) {
        Ok(r) => Ok((r.value, r.error)),
        Err(QuadError::Budget { value, error }) => Ok((value, error)),
        Err(QuadError::Domain) => Err(ConstantsError::Domain),
    }
}
