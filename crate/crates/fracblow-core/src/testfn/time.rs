//! Temporal weight `w(t) = (1 - t/T)^eta` and its right Caputo calculus.
//!
//! The weight anchors the time direction of the nonexistence argument: it is
//! 1 at t = 0, vanishes at t = T with contact order eta, and its right-sided
//! Caputo derivative of order a in (0, 1] has the closed form
//!
//! ```text
//! D_{t|T}^a w (t) = Gamma(eta+1) / Gamma(eta+1-a) * T^{-a} * (1 - t/T)^{eta-a}.
//! ```
//!
//! Two derived constants drive the temporal estimates (p > 1, conjugate
//! exponent p' = p/(p-1)):
//!
//! ```text
//! int_0^T w^{-1/(p-1)} |D_{t|T}^a w|^{p'} dt = c1 * T^{1 - a p'},
//!     c1 = [Gamma(eta+1)/Gamma(eta+1-a)]^{p'} / (eta + 1 - a p'),
//! int_0^T D_{t|T}^a w dt = c2 * T^{1-a},
//!     c2 = Gamma(eta+1) / Gamma(eta+2-a).
//! ```
//!
//! The first requires eta > a p' - 1 for convergence; the second only
//! eta > a - 1. Both reduce to elementary calculus at a = 1.

use crate::grid::FracOrder;
use crate::special::gamma_pos;
use crate::testfn::TestFnError;
// resolves float math in no_std builds; shadowed when std is in the graph
#[allow(unused_imports)]
use num_traits::Float;

/// The weight `(1 - t/T)^eta` on `[0, T]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeTestFn {
    horizon: f64,
    eta: f64,
}

/// Constants `c1`, `c2` of the two weight integrals; see the module doc.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WindowConstants {
    /// Coefficient of `T^{1 - a p/(p-1)}` in the conjugate-weight integral.
    pub c1: f64,
    /// Coefficient of `T^{1-a}` in the plain derivative integral.
    pub c2: f64,
}

impl TimeTestFn {
    /// New weight on `[0, horizon]` with contact order `eta`.
    ///
    /// Requires `horizon > 0` and `eta > 0`, both finite.
    pub fn new(horizon: f64, eta: f64) -> Result<Self, TestFnError> {
        if !(horizon.is_finite() && horizon > 0.0 && eta.is_finite() && eta > 0.0) {
            return Err(TestFnError::Domain);
        }
        Ok(Self { horizon, eta })
    }

    /// Right endpoint T of the support.
    pub fn horizon(&self) -> f64 {
        self.horizon
    }

    /// Contact order at t = T.
    pub fn eta(&self) -> f64 {
        self.eta
    }

    /// `w(t) = (1 - t/T)^eta`; requires `0 <= t <= T`.
    pub fn eval(&self, t: f64) -> Result<f64, TestFnError> {
        if !(t >= 0.0 && t <= self.horizon) {
            return Err(TestFnError::Domain);
        }
        Ok((1.0 - t / self.horizon).powf(self.eta))
    }

    /// Closed-form right Caputo derivative of order `alpha` at `t`.
    ///
    /// Requires `0 <= t <= T` and `eta > alpha - 1` (automatic here since
    /// `eta > 0 >= alpha - 1`, but checked to keep the formula's hypothesis
    /// explicit).
    pub fn right_caputo(&self, alpha: FracOrder, t: f64) -> Result<f64, TestFnError> {
        if !(t >= 0.0 && t <= self.horizon) {
            return Err(TestFnError::Domain);
        }
        let a = alpha.value();
        if self.eta <= a - 1.0 {
            return Err(TestFnError::Hypothesis("eta > alpha - 1"));
        }
        let ratio = gamma_pos(self.eta + 1.0) / gamma_pos(self.eta + 1.0 - a);
        Ok(ratio * self.horizon.powf(-a) * (1.0 - t / self.horizon).powf(self.eta - a))
    }
}

/// Constants `(c1, c2)` of the weight integrals for order `alpha`, exponent
/// `p`, and contact order `eta`.
///
/// Requires `p > 1` and `eta > alpha p/(p-1) - 1` (convergence of the
/// conjugate-weight integral).
pub fn window_constants(alpha: FracOrder, p: f64, eta: f64) -> Result<WindowConstants, TestFnError> {
    if !(p.is_finite() && p > 1.0 && eta.is_finite() && eta > 0.0) {
        return Err(TestFnError::Domain);
    }
    let a = alpha.value();
    let pc = p / (p - 1.0);
    if eta <= a * pc - 1.0 {
        return Err(TestFnError::Hypothesis("eta > alpha p/(p-1) - 1"));
    }
    let ratio = gamma_pos(eta + 1.0) / gamma_pos(eta + 1.0 - a);
    let c1 = ratio.powf(pc) / (eta + 1.0 - a * pc);
    let c2 = gamma_pos(eta + 1.0) / gamma_pos(eta + 2.0 - a);
    Ok(WindowConstants { c1, c2 })
}

/// Smallest convenient contact order, `ceil(2 + alpha p/(p-1))`.
///
/// Any eta at least this large satisfies the hypothesis of
/// [`window_constants`] with a margin of one. Requires `p > 1`.
pub fn default_eta(alpha: FracOrder, p: f64) -> Result<f64, TestFnError> {
    if !(p.is_finite() && p > 1.0) {
        return Err(TestFnError::Domain);
    }
    Ok((2.0 + alpha.value() * p / (p - 1.0)).ceil())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{GridFunction1D, Side};
    use crate::ops::caputo_derivative;
    use crate::quad::integrate_auto;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    #[test]
    fn construction_validates_parameters() {
        assert!(TimeTestFn::new(1.0, 2.0).is_ok());
        assert_eq!(TimeTestFn::new(0.0, 2.0), Err(TestFnError::Domain));
        assert_eq!(TimeTestFn::new(-1.0, 2.0), Err(TestFnError::Domain));
        assert_eq!(TimeTestFn::new(1.0, 0.0), Err(TestFnError::Domain));
        assert_eq!(TimeTestFn::new(f64::NAN, 2.0), Err(TestFnError::Domain));
        assert_eq!(TimeTestFn::new(1.0, f64::INFINITY), Err(TestFnError::Domain));
    }

    #[test]
    fn eval_matches_closed_form() {
        let w = TimeTestFn::new(1.0, 2.0).unwrap();
        assert_eq!(w.eval(0.0).unwrap(), 1.0);
        assert_eq!(w.eval(1.0).unwrap(), 0.0);
        assert_relative_eq!(w.eval(0.5).unwrap(), 0.25, max_relative = 1e-15);
        assert_relative_eq!(w.eval(0.75).unwrap(), 0.0625, max_relative = 1e-15);
        assert_eq!(w.eval(-0.1), Err(TestFnError::Domain));
        assert_eq!(w.eval(1.1), Err(TestFnError::Domain));

        let w = TimeTestFn::new(2.0, 3.0).unwrap();
        assert_relative_eq!(w.eval(1.0).unwrap(), 0.125, max_relative = 1e-15);
    }

    #[test]
    fn weight_is_decreasing_and_caputo_nonnegative() {
        let w = TimeTestFn::new(2.0, 3.0).unwrap();
        let a = FracOrder::new(0.6).unwrap();
        let mut prev = f64::INFINITY;
        for i in 0..=200 {
            let t = 2.0 * i as f64 / 200.0;
            let v = w.eval(t).unwrap();
            assert!(v <= prev);
            prev = v;
            assert!(w.right_caputo(a, t).unwrap() >= 0.0);
        }
    }

    #[test]
    fn right_caputo_frozen_values() {
        let w = TimeTestFn::new(1.0, 2.0).unwrap();
        let a = FracOrder::new(0.5).unwrap();
        assert_relative_eq!(
            w.right_caputo(a, 0.0).unwrap(),
            1.5045055561273500985,
            max_relative = 1e-14
        );
        assert_relative_eq!(
            w.right_caputo(a, 0.5).unwrap(),
            0.53192304053524357059,
            max_relative = 1e-14
        );
        assert_eq!(w.right_caputo(a, 1.0).unwrap(), 0.0);

        let w = TimeTestFn::new(2.0, 3.0).unwrap();
        let a = FracOrder::new(0.3).unwrap();
        assert_relative_eq!(
            w.right_caputo(a, 0.0).unwrap(),
            1.1685258397911571111,
            max_relative = 1e-14
        );
        assert_relative_eq!(
            w.right_caputo(a, 1.0).unwrap(),
            0.17982800743850746938,
            max_relative = 1e-14
        );

        let w = TimeTestFn::new(4.0, 5.0).unwrap();
        let a = FracOrder::new(0.7).unwrap();
        assert_relative_eq!(
            w.right_caputo(a, 1.0).unwrap(),
            0.34660021180365423570,
            max_relative = 1e-14
        );
    }

    #[test]
    fn classical_limit_is_minus_derivative() {
        // a = 1: D_{t|T}^1 w = -w' = eta/T (1 - t/T)^{eta-1}.
        let w = TimeTestFn::new(2.0, 3.0).unwrap();
        let a = FracOrder::classical();
        for i in 0..=10 {
            let t = 2.0 * i as f64 / 10.0;
            let u = 1.0 - t / 2.0;
            assert_relative_eq!(
                w.right_caputo(a, t).unwrap(),
                1.5 * u * u,
                max_relative = 1e-14
            );
        }
    }

    #[test]
    fn right_caputo_matches_grid_operator() {
        // Normwise comparison against the sampled right-sided Caputo scheme.
        let w = TimeTestFn::new(2.0, 3.0).unwrap();
        let a = FracOrder::new(0.3).unwrap();
        let n = 2001;
        let f = GridFunction1D::from_fn(0.0, 2.0, n, |t| w.eval(t).unwrap()).unwrap();
        let d = caputo_derivative(&f, a, Side::Right).unwrap();
        let mut err = 0.0f64;
        let mut scale = 0.0f64;
        for i in 0..n {
            let exact = w.right_caputo(a, d.time(i)).unwrap();
            err = err.max((d.samples()[i] - exact).abs());
            scale = scale.max(exact.abs());
        }
        assert!(err / scale < 1e-4, "normwise error {:e}", err / scale);
    }

    #[test]
    fn window_constants_frozen_values() {
        // c1 raises a two-gamma ratio to the power p/(p-1), amplifying the
        // gamma-evaluation error, so it gets a looser gate than c2
        let c = window_constants(FracOrder::new(0.5).unwrap(), 2.0, 2.0).unwrap();
        assert_relative_eq!(c.c1, 1.1317684842090334988, max_relative = 1e-12);
        assert_relative_eq!(c.c2, 0.60180222245094003941, max_relative = 1e-13);

        let c = window_constants(FracOrder::new(0.3).unwrap(), 1.5, 3.0).unwrap();
        assert_relative_eq!(c.c1, 0.96046216950311488570, max_relative = 1e-12);
        assert_relative_eq!(c.c2, 0.38881731338055669056, max_relative = 1e-13);

        let c = window_constants(FracOrder::new(0.7).unwrap(), 3.0, 5.0).unwrap();
        assert_relative_eq!(c.c1, 1.1302014983962329725, max_relative = 1e-12);
        assert_relative_eq!(c.c2, 0.59460905081763061527, max_relative = 1e-13);
    }

    #[test]
    fn window_constants_classical_limit() {
        // a = 1, p = 2, eta = 2: c1 = 4/(eta-1) = 4, c2 = Gamma(3)/Gamma(3) = 1.
        let c = window_constants(FracOrder::classical(), 2.0, 2.0).unwrap();
        assert_relative_eq!(c.c1, 4.0, max_relative = 1e-14);
        assert_relative_eq!(c.c2, 1.0, max_relative = 1e-14);
    }

    #[test]
    fn window_constants_hypothesis_rejection() {
        // alpha p/(p-1) = 9.9 demands eta > 8.9.
        let a = FracOrder::new(0.9).unwrap();
        assert_eq!(
            window_constants(a, 1.1, 5.0),
            Err(TestFnError::Hypothesis("eta > alpha p/(p-1) - 1"))
        );
        assert!(window_constants(a, 1.1, 9.0).is_ok());
        assert_eq!(
            window_constants(a, 1.0, 5.0),
            Err(TestFnError::Domain)
        );
        assert_eq!(
            window_constants(a, 2.0, -1.0),
            Err(TestFnError::Domain)
        );
    }

    #[test]
    fn weight_integrals_match_quadrature() {
        // Dual route: closed-form c1, c2 against direct adaptive quadrature of
        // the two weight integrals, across horizons.
        let triples = [(0.3, 1.5, 3.0), (0.5, 2.0, 2.0), (0.7, 3.0, 5.0)];
        for &(av, p, eta) in &triples {
            let a = FracOrder::new(av).unwrap();
            let c = window_constants(a, p, eta).unwrap();
            let pc = p / (p - 1.0);
            for horizon in [0.5, 1.0, 4.0] {
                let w = TimeTestFn::new(horizon, eta).unwrap();
                let k = integrate_auto(
                    |t| {
                        let wv = w.eval(t).unwrap();
                        let dv = w.right_caputo(a, t).unwrap();
                        wv.powf(-1.0 / (p - 1.0)) * dv.abs().powf(pc)
                    },
                    0.0,
                    horizon,
                )
                .unwrap();
                assert_relative_eq!(
                    k.value,
                    c.c1 * horizon.powf(1.0 - av * pc),
                    max_relative = 1e-6
                );
                let l = integrate_auto(|t| w.right_caputo(a, t).unwrap(), 0.0, horizon).unwrap();
                assert_relative_eq!(
                    l.value,
                    c.c2 * horizon.powf(1.0 - av),
                    max_relative = 1e-6
                );
            }
        }
    }

    #[test]
    fn default_eta_values() {
        let half = FracOrder::new(0.5).unwrap();
        assert_eq!(default_eta(half, 2.0).unwrap(), 3.0);
        assert_eq!(default_eta(FracOrder::new(0.3).unwrap(), 1.5).unwrap(), 3.0);
        assert_eq!(default_eta(FracOrder::new(0.9).unwrap(), 1.1).unwrap(), 12.0);
        assert_eq!(default_eta(half, 1.0), Err(TestFnError::Domain));
        // Default satisfies the window-constants hypothesis with margin >= 1.
        for av in [0.1, 0.5, 0.99] {
            for p in [1.05, 1.5, 2.0, 5.0] {
                let a = FracOrder::new(av).unwrap();
                let eta = default_eta(a, p).unwrap();
                assert!(window_constants(a, p, eta).is_ok());
                assert!(eta >= av * p / (p - 1.0) + 1.0);
            }
        }
    }

    #[test]
    fn horizon_scaling_of_caputo() {
        // D w_T(t) = T^{-a} D w_1(t/T) under t -> t/T rescaling.
        let a = FracOrder::new(0.4).unwrap();
        let unit = TimeTestFn::new(1.0, 4.0).unwrap();
        for horizon in [0.5, 2.0, 8.0] {
            let w = TimeTestFn::new(horizon, 4.0).unwrap();
            for frac in [0.0, 0.25, 0.6, 0.9] {
                let lhs = w.right_caputo(a, frac * horizon).unwrap();
                let rhs = horizon.powf(-0.4) * unit.right_caputo(a, frac).unwrap();
                assert_abs_diff_eq!(lhs, rhs, epsilon = 1e-13 * rhs.abs().max(1.0));
            }
        }
    }
}
