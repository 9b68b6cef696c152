//! Adaptive quadrature on finite intervals.
//!
//! A 15-point Kronrod rule with embedded 7-point Gauss rule supplies a value
//! and an error estimate per panel; the adaptive driver repeatedly bisects the
//! panel with the largest error estimate until the summed estimate meets the
//! requested tolerance or the panel budget is exhausted. Integrands are
//! expected to be finite on the closed interval; endpoint-singular integrals
//! are handled by the callers (split at the singularity, analytic tail).

use alloc::vec::Vec;
use core::fmt;

// resolves float math in no_std builds; shadowed when std is in the graph
#[allow(unused_imports)]
use num_traits::Float;

/// Positive abscissae of the 15-point Kronrod rule on [-1, 1].
const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.0,
];

/// Kronrod weights matching [`XGK`].
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];

/// Weights of the embedded 7-point Gauss rule (odd-index abscissae of XGK).
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

/// Result of a quadrature run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    /// Integral estimate.
    pub value: f64,
    /// Error estimate (absolute).
    pub error: f64,
    /// Number of integrand evaluations.
    pub evaluations: usize,
}

/// Errors from the adaptive driver.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum QuadError {
    /// Panel budget exhausted before the tolerance was met; the best
    /// available estimate is carried for diagnostics.
    Budget {
        /// Integral estimate at the point of giving up.
        value: f64,
        /// Remaining error estimate.
        error: f64,
    },
    /// Invalid interval or tolerance (non-finite endpoints, tolerances not
    /// positive), or the integrand returned a non-finite value.
    Domain,
}

impl fmt::Display for QuadError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Budget { value, error } => write!(
                f,
                "quadrature budget exhausted: value {value:e}, error estimate {error:e}"
            ),
            Self::Domain => write!(f, "invalid quadrature interval, tolerance, or integrand value"),
        }
    }
}

/// One Gauss-Kronrod pass over [a, b]: (value, error estimate).
///
/// Error model follows the usual scaled |K15 - G7|^{3/2} sharpening.
fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64, bool) {
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);

    let fc = f(mid);
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    let mut abs_int = WGK[7] * fc.abs();
    let mut finite = fc.is_finite();

    for i in 0..7 {
        let x = half * XGK[i];
        let f1 = f(mid - x);
        let f2 = f(mid + x);
        finite &= f1.is_finite() && f2.is_finite();
        let pair = f1 + f2;
        kronrod += WGK[i] * pair;
        abs_int += WGK[i] * (f1.abs() + f2.abs());
        if i % 2 == 1 {
            gauss += WG[i / 2] * pair;
        }
    }

    let value = kronrod * half;
    let raw = ((kronrod - gauss) * half).abs();
    let scale = abs_int * half.abs();
    let error = if scale > 0.0 && raw > 0.0 {
        let sharpened = scale * (200.0 * raw / scale).powf(1.5).min(1.0);
        sharpened.max(f64::EPSILON * 50.0 * scale)
    } else {
        raw
    };
    (value, error, finite)
}

/// Adaptive integral of `f` over `[a, b]`.
///
/// Bisects the worst panel until `sum(error) <= max(abs_tol, rel_tol * |value|)`
/// or `max_panels` panels exist. `a > b` integrates with the usual sign flip.
///
/// # Errors
///
/// * [`QuadError::Domain`]: non-finite endpoints, non-positive tolerances, or
///   a non-finite integrand value.
/// * [`QuadError::Budget`]: tolerance unmet at the panel budget.
pub fn integrate<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    rel_tol: f64,
    abs_tol: f64,
    max_panels: usize,
) -> Result<QuadResult, QuadError> {
    if !a.is_finite() || !b.is_finite() || !(rel_tol > 0.0) || !(abs_tol > 0.0) {
        return Err(QuadError::Domain);
    }
    if a == b {
        return Ok(QuadResult { value: 0.0, error: 0.0, evaluations: 0 });
    }
    if a > b {
        let mut r = integrate(f, b, a, rel_tol, abs_tol, max_panels)?;
        r.value = -r.value;
        return Ok(r);
    }

    struct Panel {
        a: f64,
        b: f64,
        value: f64,
        error: f64,
    }

    let (v0, e0, finite) = gk15(&f, a, b);
    if !finite {
        return Err(QuadError::Domain);
    }
    let mut panels: Vec<Panel> = Vec::new();
    panels.push(Panel { a, b, value: v0, error: e0 });
    let mut evaluations = 15usize;

    loop {
        let mut value = 0.0;
        let mut error = 0.0;
        let mut worst = 0usize;
        let mut worst_err = -1.0;
        for (i, p) in panels.iter().enumerate() {
            value += p.value;
            error += p.error;
            if p.error > worst_err {
                worst_err = p.error;
                worst = i;
            }
        }
        if error <= abs_tol.max(rel_tol * value.abs()) {
            return Ok(QuadResult { value, error, evaluations });
        }
        if panels.len() >= max_panels {
            return Err(QuadError::Budget { value, error });
        }

        let Panel { a: pa, b: pb, .. } = panels[worst];
        let mid = 0.5 * (pa + pb);
        if mid <= pa || mid >= pb {
            // Interval no longer bisectable in f64; accept what we have.
            return Ok(QuadResult { value, error, evaluations });
        }
        let (vl, el, fl) = gk15(&f, pa, mid);
        let (vr, er, fr) = gk15(&f, mid, pb);
        evaluations += 30;
        if !fl || !fr {
            return Err(QuadError::Domain);
        }
        panels[worst] = Panel { a: pa, b: mid, value: vl, error: el };
        panels.push(Panel { a: mid, b: pb, value: vr, error: er });
    }
}

/// Default panel budget used by the library's internal integrals.
pub const DEFAULT_MAX_PANELS: usize = 4096;

/// Convenience wrapper with the library default tolerances (1e-12 relative,
/// 1e-300 absolute floor, default panel budget).
pub fn integrate_auto<F: Fn(f64) -> f64>(f: F, a: f64, b: f64) -> Result<QuadResult, QuadError> {
    integrate(f, a, b, 1e-12, 1e-300, DEFAULT_MAX_PANELS)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn polynomial_is_exact() {
        // K15 integrates degree <= 22 exactly.
        let r = integrate(|x| x * x * x - 2.0 * x + 1.0, -1.0, 3.0, 1e-12, 1e-300, 64).unwrap();
        assert_relative_eq!(r.value, 16.0, max_relative = 1e-14);
        assert_eq!(r.evaluations, 15);
    }

    #[test]
    fn smooth_transcendental() {
        let r = integrate_auto(|x| x.sin(), 0.0, core::f64::consts::PI).unwrap();
        assert_relative_eq!(r.value, 2.0, max_relative = 1e-13);
        assert!(r.error <= 1e-10);
    }

    #[test]
    fn sharp_peak_forces_refinement() {
        // Lorentzian of width 1e-3 centered mid-interval.
        let w: f64 = 1e-3;
        let r = integrate_auto(|x| w / (w * w + (x - 0.5) * (x - 0.5)), 0.0, 1.0).unwrap();
        let want = ((0.5 / w).atan() - (-0.5 / w).atan()) as f64;
        assert_relative_eq!(r.value, want, max_relative = 1e-11);
        assert!(r.evaluations > 100);
    }

    #[test]
    fn algebraic_tail() {
        // Integral of (1 + x^2)^{-1} over [0, 50]: arctan(50).
        let r = integrate_auto(|x| 1.0 / (1.0 + x * x), 0.0, 50.0).unwrap();
        assert_relative_eq!(r.value, 50.0f64.atan(), max_relative = 1e-12);
    }

    #[test]
    fn reversed_interval_flips_sign() {
        let fwd = integrate_auto(|x| x.exp(), 0.0, 1.0).unwrap();
        let rev = integrate_auto(|x| x.exp(), 1.0, 0.0).unwrap();
        assert_relative_eq!(fwd.value, -rev.value, max_relative = 1e-14);
    }

    #[test]
    fn empty_interval_is_zero() {
        let r = integrate_auto(|x| x.exp(), 2.0, 2.0).unwrap();
        assert_eq!(r.value, 0.0);
    }

    #[test]
    fn budget_reports_partial_value() {
        // Too-tight budget on an oscillatory integrand.
        let res = integrate(|x| (50.0 * x).sin().abs(), 0.0, 10.0, 1e-14, 1e-300, 4);
        match res {
            Err(QuadError::Budget { value, error }) => {
                assert!(value.is_finite());
                assert!(error > 0.0);
            }
            other => panic!("expected budget error, got {other:?}"),
        }
    }

    #[test]
    fn domain_errors() {
        assert_eq!(
            integrate(|x| x, 0.0, f64::INFINITY, 1e-8, 1e-300, 16).unwrap_err(),
            QuadError::Domain
        );
        assert_eq!(
            integrate(|x| x, 0.0, 1.0, 0.0, 1e-300, 16).unwrap_err(),
            QuadError::Domain
        );
        assert_eq!(
            integrate(|x| 1.0 / x, -1.0, 1.0, 1e-8, 1e-300, 16).unwrap_err(),
            QuadError::Domain
        );
    }
}
