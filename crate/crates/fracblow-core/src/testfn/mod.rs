//! Concrete test functions of the nonexistence analysis.
//!
//! Two families are provided, each with closed forms and an independent
//! quadrature path so every formula can be cross-checked:
//!
//! * [`TimeTestFn`]: the temporal weight `w(t) = (1 - t/T)^eta` on `[0, T]`,
//!   its right-sided Caputo derivative in closed form, and the two constants
//!   governing the weight integrals
//!   `int_0^T w^{-1/(p-1)} |D w|^{p/(p-1)} dt = c1 T^{1 - a p/(p-1)}` and
//!   `int_0^T D w dt = c2 T^{1-a}`.
//! * [`SpaceTestFn`]: the spatial weight `phi_R(x) = (1 + |x/R|^2)^{-q/2}`
//!   on `R^N` (N in {1, 2, 3}), its fractional Laplacian by singular-integral
//!   quadrature (with an analytic fast path for N = 1, s = 1/2, q = 2), the
//!   empirical comparability constant `sup |(-Lap)^s phi| / phi`, the
//!   conjugate-weight integral with its scaling bound, and the total mass.
//!
//! | item | what it computes |
//! |------|------------------|
//! | [`TimeTestFn::eval`] | `w(t)` |
//! | [`TimeTestFn::right_caputo`] | closed-form right Caputo derivative of `w` |
//! | [`window_constants`] | `(c1, c2)` of the weight integrals |
//! | [`default_eta`] | smallest convenient exponent `ceil(2 + a p/(p-1))` |
//! | [`SpaceTestFn::eval`] | `phi_R(x)` |
//! | [`SpaceTestFn::frac_laplacian`] | `(-Lap)^s phi_R` (fast path or quadrature) |
//! | [`SpaceTestFn::frac_laplacian_quadrature`] | always the singular integral, with error estimate |
//! | [`SpaceTestFn::comparability_constant`] | sampled `sup |(-Lap)^s phi| / phi` |
//! | [`SpaceTestFn::conjugate_weight_integral`] | `int phi^{-1/(p-1)} |(-Lap)^s phi|^{p/(p-1)}` and its bound |
//! | [`SpaceTestFn::mass`] | `int phi_R dx` |
//! | [`normalization_constant`] | the singular-integral normalization `C_{N,s}` |
//! | [`surface_measure`] | `omega_N` of the unit sphere |

use core::fmt;

mod space;
mod time;

pub use space::{
    normalization_constant, surface_measure, ConjugateIntegral, LaplacianOrder, LaplacianValue,
    SpaceTestFn,
};
pub use time::{default_eta, window_constants, TimeTestFn, WindowConstants};

/// Errors from test-function construction and evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TestFnError {
    /// Argument outside the function's domain (t outside [0, T], wrong point
    /// dimension, non-finite or non-positive parameter).
    Domain,
    /// A hypothesis of the formula in use fails; carries the violated
    /// inequality.
    Hypothesis(&'static str),
    /// The integral diverges for these parameters.
    Divergent,
    /// Quadrature did not converge; carries the remaining error estimate.
    Accuracy {
        /// Error estimate at the point of giving up.
        estimate: f64,
    },
}

impl fmt::Display for TestFnError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Domain => write!(f, "argument outside the test function's domain"),
            Self::Hypothesis(h) => write!(f, "hypothesis violated: {h}"),
            Self::Divergent => write!(f, "integral diverges for these parameters"),
            Self::Accuracy { estimate } => {
                write!(f, "quadrature did not converge (error estimate {estimate:e})")
            }
        }
    }
}
