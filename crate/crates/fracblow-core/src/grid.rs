//! Sampled-function carrier types.
//!
//! [`GridFunction1D`] holds samples of a real- or complex-valued function on
//! a uniform grid over a closed interval; it is the common carrier for the
//! fractional operators in [`crate::ops`] and the trajectories produced by
//! the solver in [`crate::fode`]. [`FracOrder`] is a validated fractional
//! order in (0, 1], with 1 admitted as the classical-limit case.

use alloc::vec::Vec;
use core::fmt;

use num_complex::Complex64;

/// Errors from carrier-type construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GridError {
    /// Order outside (0, 1] or not finite.
    OrderRange,
    /// Interval or sample list invalid: t0 >= t1, fewer than 2 samples, or
    /// non-finite endpoint.
    Interval,
}

impl fmt::Display for GridError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::OrderRange => write!(f, "fractional order must lie in (0, 1]"),
            Self::Interval => write!(f, "grid needs t0 < t1 (finite) and at least 2 samples"),
        }
    }
}

/// Fractional order in (0, 1].
///
/// Orders strictly inside (0, 1) parameterize the genuinely fractional
/// operators; the boundary value 1 is admitted so the classical derivative
/// and ordinary integral are available as limit oracles.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FracOrder(f64);

impl FracOrder {
    /// Validated constructor.
    ///
    /// # Errors
    ///
    /// [`GridError::OrderRange`] unless `0 < value <= 1` and finite.
    pub fn new(value: f64) -> Result<Self, GridError> {
        if value.is_finite() && value > 0.0 && value <= 1.0 {
            Ok(Self(value))
        } else {
            Err(GridError::OrderRange)
        }
    }

    /// The classical-limit order 1.
    pub fn classical() -> Self {
        Self(1.0)
    }

    /// The numeric order.
    pub fn value(self) -> f64 {
        self.0
    }

    /// Whether this is the classical-limit order 1.
    pub fn is_classical(self) -> bool {
        self.0 == 1.0
    }
}

/// Which endpoint a one-sided fractional operator is anchored at.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// Anchored at t0: memory over [t0, t].
    Left,
    /// Anchored at t1: memory over [t, t1].
    Right,
}

/// Sample value admitted in a [`GridFunction1D`]: real or complex.
pub trait Sample:
    Copy
    + PartialEq
    + fmt::Debug
    + core::ops::Add<Output = Self>
    + core::ops::Sub<Output = Self>
    + core::ops::Mul<f64, Output = Self>
{
    /// Additive identity.
    fn zero() -> Self;
    /// Magnitude (absolute value or complex modulus).
    fn magnitude(self) -> f64;
    /// Whether the value is finite in every component.
    fn is_finite(self) -> bool;
}

impl Sample for f64 {
    fn zero() -> Self {
        0.0
    }
    fn magnitude(self) -> f64 {
        self.abs()
    }
    fn is_finite(self) -> bool {
        f64::is_finite(self)
    }
}

impl Sample for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn magnitude(self) -> f64 {
        self.norm()
    }
    fn is_finite(self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }
}

/// Function sampled on a uniform grid over [t0, t1].
///
/// Invariants: `t0 < t1`, at least 2 samples, `step = (t1 - t0)/(len - 1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction1D<T> {
    t0: f64,
    t1: f64,
    samples: Vec<T>,
}

impl<T: Sample> GridFunction1D<T> {
    /// Validated constructor from explicit samples.
    ///
    /// # Errors
    ///
    /// [`GridError::Interval`] unless `t0 < t1` (finite) and `samples.len() >= 2`.
    pub fn new(t0: f64, t1: f64, samples: Vec<T>) -> Result<Self, GridError> {
        if t0.is_finite() && t1.is_finite() && t0 < t1 && samples.len() >= 2 {
            Ok(Self { t0, t1, samples })
        } else {
            Err(GridError::Interval)
        }
    }

    /// Sample `f` at `n` uniform nodes over [t0, t1].
    ///
    /// # Errors
    ///
    /// [`GridError::Interval`] under the same conditions as [`Self::new`].
    pub fn from_fn(t0: f64, t1: f64, n: usize, f: impl Fn(f64) -> T) -> Result<Self, GridError> {
        if !(t0.is_finite() && t1.is_finite() && t0 < t1 && n >= 2) {
            return Err(GridError::Interval);
        }
        let step = (t1 - t0) / (n - 1) as f64;
        let samples = (0..n).map(|i| f(t0 + step * i as f64)).collect();
        Ok(Self { t0, t1, samples })
    }

    /// Left endpoint.
    pub fn t0(&self) -> f64 {
        self.t0
    }

    /// Right endpoint.
    pub fn t1(&self) -> f64 {
        self.t1
    }

    /// Number of samples.
    pub fn len(&self) -> usize {
        self.samples.len()
    }

    /// Always false (construction requires >= 2 samples).
    pub fn is_empty(&self) -> bool {
        false
    }

    /// Grid spacing `(t1 - t0) / (len - 1)`.
    pub fn step(&self) -> f64 {
        (self.t1 - self.t0) / (self.samples.len() - 1) as f64
    }

    /// Node location of sample `i`.
    pub fn time(&self, i: usize) -> f64 {
        self.t0 + self.step() * i as f64
    }

    /// The samples in grid order.
    pub fn samples(&self) -> &[T] {
        &self.samples
    }

    /// Consume into the sample vector.
    pub fn into_samples(self) -> Vec<T> {
        self.samples
    }

    /// Samples reversed in place over the same interval: the carrier of
    /// `f(t0 + t1 - t)`. Right-sided operators reduce to left-sided ones on
    /// the reversal.
    pub fn reversed(&self) -> Self {
        let mut samples = self.samples.clone();
        samples.reverse();
        Self { t0: self.t0, t1: self.t1, samples }
    }

    /// Pointwise map preserving the grid.
    pub fn map<U: Sample>(&self, f: impl Fn(T) -> U) -> GridFunction1D<U> {
        GridFunction1D {
            t0: self.t0,
            t1: self.t1,
            samples: self.samples.iter().map(|&v| f(v)).collect(),
        }
    }

    /// Largest sample magnitude.
    pub fn max_magnitude(&self) -> f64 {
        self.samples.iter().fold(0.0, |m, &v| m.max(v.magnitude()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_validation() {
        assert!(FracOrder::new(0.5).is_ok());
        assert!(FracOrder::new(1.0).is_ok());
        assert_eq!(FracOrder::new(0.0), Err(GridError::OrderRange));
        assert_eq!(FracOrder::new(1.5), Err(GridError::OrderRange));
        assert_eq!(FracOrder::new(-0.3), Err(GridError::OrderRange));
        assert_eq!(FracOrder::new(f64::NAN), Err(GridError::OrderRange));
        assert!(FracOrder::classical().is_classical());
        assert!(!FracOrder::new(0.9999).unwrap().is_classical());
    }

    #[test]
    fn grid_construction_and_geometry() {
        let g = GridFunction1D::from_fn(0.0, 2.0, 5, |t| t * t).unwrap();
        assert_eq!(g.len(), 5);
        assert_eq!(g.step(), 0.5);
        assert_eq!(g.time(0), 0.0);
        assert_eq!(g.time(4), 2.0);
        assert_eq!(g.samples()[3], 2.25);
    }

    #[test]
    fn grid_rejects_bad_intervals() {
        assert_eq!(
            GridFunction1D::<f64>::new(1.0, 1.0, alloc::vec![0.0, 1.0]),
            Err(GridError::Interval)
        );
        assert_eq!(
            GridFunction1D::<f64>::new(0.0, 1.0, alloc::vec![0.0]),
            Err(GridError::Interval)
        );
        assert_eq!(
            GridFunction1D::from_fn(0.0, f64::INFINITY, 4, |t| t),
            Err(GridError::Interval)
        );
    }

    #[test]
    fn reversal_is_involutive() {
        let g = GridFunction1D::from_fn(0.0, 1.0, 7, |t| t.exp()).unwrap();
        let rr = g.reversed().reversed();
        assert_eq!(g, rr);
        assert_eq!(g.reversed().samples()[0], g.samples()[6]);
    }

    #[test]
    fn complex_samples() {
        let g = GridFunction1D::from_fn(0.0, 1.0, 3, |t| Complex64::new(t, -t)).unwrap();
        assert_eq!(g.samples()[2], Complex64::new(1.0, -1.0));
        assert!((g.max_magnitude() - 2.0f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn map_preserves_grid() {
        let g = GridFunction1D::from_fn(0.0, 1.0, 4, |t| t).unwrap();
        let h = g.map(|v| v * 2.0);
        assert_eq!(h.step(), g.step());
        assert_eq!(h.samples(), &[0.0, 2.0 / 3.0, 4.0 / 3.0, 2.0]);
    }
}
