//! Desk-scale experiment harness over the `fracblow-core` kernel.
//!
//! The core crate carries the allocation-only numerical kernel: fractional
//! derivative and integral operators on sampled functions, the special
//! functions behind them, the test-function families with closed-form
//! fractional actions, the constant chains of the nonexistence arguments,
//! the scalar fractional ODE solver with blow-up bracketing, and the
//! parameter-regime classifier. This companion crate adds everything that
//! needs an operating system: the spectral simulator of the full space-time
//! model on a periodic box, experiment configuration files, machine-readable
//! run reports with content hashes, CSV export of trajectories and
//! diagnostic series, and the command-line driver.
//!
//! The model under study is the space-time nonlocal Schrodinger-type
//! evolution
//!
//! ```text
//! i^a D^a_t u - (-Lap)^{b/2} u = lambda |u|^p
//! ```
//!
//! with Caputo time order `a` in (0, 1), diffusion order `b` in (0, 2),
//! and a non-gauge power nonlinearity; the harness exercises the regime
//! where weighted averages of solutions are forced into finite-time
//! blow-up, and the complementary regimes where the obstruction vanishes.

pub mod cli;
pub mod config;
pub mod export;
pub mod pde;
pub mod report;
pub mod suites;
