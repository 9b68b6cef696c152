//! Numerical kernel for time-fractional evolution analysis.
//!
//! This crate implements the machinery needed to study finite-time blow-up and
//! nonexistence of solutions for semilinear evolution equations driven by a
//! Caputo time derivative of order `alpha` in `(0, 1)` and a fractional
//! Laplacian `(-Delta)^{beta/2}` in space:
//!
//! * [`special`]: gamma function and Mittag-Leffler series evaluation,
//! * [`quad`]: adaptive Gauss-Kronrod quadrature used by the integral routines,
//! * [`grid`]: uniformly sampled functions of time and fractional orders,
//! * [`ops`]: Riemann-Liouville integrals and Caputo derivatives on samples,
//! * [`testfn`]: the temporal weight `(1 - t/T)^eta` and the spatial weight
//!   `<x>^{-q}` together with its fractional Laplacian,
//! * [`constants`]: critical exponents, data decomposition, and the constant
//!   chains entering the blow-up and lifespan estimates,
//! * [`fode`]: a fractional ordinary differential equation solver with blow-up
//!   bracketing against the analytic two-sided window,
//! * [`regime`]: a classifier mapping problem parameters and a data profile to
//!   the strongest applicable nonexistence or lifespan statement.
//!
//! The crate is `no_std` (with `alloc`); float math routes through `libm` via
//! `num-traits`. Everything is deterministic: no randomness, no global state.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod constants;
pub mod fode;
pub mod grid;
pub mod ops;
pub mod quad;
pub mod regime;
pub mod special;
pub mod testfn;

pub use constants::{ConstantBundle, ProblemParams, SignCase};
pub use fode::{detect_blowup, solve_fode, BlowupEstimate, FodeProblem, FodeSolution};
pub use grid::{FracOrder, GridFunction1D, Side};
pub use regime::{
    check_conditions, classify, lifespan_bound, DataProfile, ProfileKind, Regime, RegimeVerdict,
    SignRoute,
};
pub use special::{gamma, mittag_leffler};
pub use testfn::{LaplacianOrder, SpaceTestFn, TimeTestFn};
