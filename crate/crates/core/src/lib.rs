//! Semi-analytic solver for the one-way (extra-wide-angle) parabolic wave
//! equation
//!
//! ```text
//! du/dr = ±i √(∂²/∂z² + α(z)²) u,   0 < z < π,   u(0, r) = u(π, r) = 0
//! ```
//!
//! with a piecewise constant wavenumber `α(z)`.
//!
//! The operator `L = ∂²/∂z² + α²` is diagonalized directly: every eigenfunction
//! is piecewise trigonometric, so each eigenpair reduces to a scalar root of a
//! dispersion function in one frequency. Roots are seeded either from the
//! Rayleigh quotient of `sin(jz)` (high modes) or from a small Galerkin matrix
//! on `span{sin z, …, sin Jz}` (low modes), then refined by the secant method.
//! The PDE is then solved by a truncated eigenfunction expansion whose cost per
//! eigenpair does not depend on any spatial grid.
//!
//! Modules:
//!
//! - [`model`]: the piecewise coefficient and solver configuration.
//! - [`eigensolver`]: seeds, dispersion function, secant refinement, modes.
//! - [`expansion`]: projections, change-of-basis matrix, solution evaluation.
//! - [`oracle`]: finite-difference discretization and spectral propagator used
//!   as an independent reference.
//! - [`cli`]: scenario files and the `spectrum | solve | compare | decay`
//!   commands behind the `ewape` binary.
//!
//! ```
//! use ewape::model::{presets, SolverConfig};
//! use ewape::eigensolver::compute_spectrum;
//!
//! let pw = presets::alpha1();
//! let spectrum = compute_spectrum(&pw, 10, &SolverConfig::default()).unwrap();
//! assert!(spectrum.modes[0].lambda > 0.0);
//! assert!(spectrum.modes[9].lambda < 0.0);
//! ```

pub mod cli;
pub mod eigensolver;
pub mod error;
pub mod expansion;
pub mod linalg;
pub mod model;
pub mod oracle;
mod special;

pub use error::{Error, Result};
pub use model::{PiecewiseWavenumber, SolverConfig};
