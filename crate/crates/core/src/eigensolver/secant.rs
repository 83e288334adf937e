//! Secant refinement of eigenfrequencies.
//!
//! The iteration runs on `λ` with the real dispersion function, which stays
//! smooth through `ω_i = 0` and into the hyperbolic regime; results are
//! reported as the last-piece frequency `ω_n = √(α_n² − λ)`.

use num_complex::Complex64;

use super::determinant::omega_of_lambda;
use super::sturm::dispersion;
use crate::error::{Error, Result};
use crate::model::{PiecewiseWavenumber, SolverConfig};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SecantOutcome {
    pub lambda: f64,
    pub omega_n: Complex64,
    pub iterations: usize,
    /// `|V(π)|` at the root for the `A_1 = 0`, `B_1 = 1` normalization.
    pub residual: f64,
}

/// Refines `ω_n` from `omega0`; the second iterate is
/// `ω0·(1 + p) + p·[ω0 = 0]` with `p` the configured perturbation.
pub fn secant_root(pw: &PiecewiseWavenumber, omega0: Complex64, cfg: &SolverConfig) -> Result<Complex64> {
    if omega0.norm() < 1e-14 {
        return Err(Error::SingularBlock(omega0.norm()));
    }
    let p = cfg.secant_perturbation;
    let omega1 = omega0 * (1.0 + p);
    let an2 = pw.alpha_sq(pw.n_pieces() - 1);
    let lam0 = an2 - (omega0 * omega0).re;
    let lam1 = an2 - (omega1 * omega1).re;
    Ok(secant_lambda(pw, lam0, lam1, cfg)?.omega_n)
}

/// Second iterate for a seed eigenvalue, mirroring the perturbation applied
/// to `ω_n`.
pub(crate) fn perturbed_lambda(pw: &PiecewiseWavenumber, lambda: f64, p: f64) -> f64 {
    let alpha_n = pw.alphas()[pw.n_pieces() - 1];
    let w = omega_of_lambda(lambda, alpha_n);
    let w1 = if w.norm() == 0.0 {
        Complex64::new(p, 0.0)
    } else {
        w * (1.0 + p)
    };
    let lam1 = alpha_n * alpha_n - (w1 * w1).re;
    if lam1 == lambda {
        lambda + p * (1.0 + lambda.abs())
    } else {
        lam1
    }
}

/// `V(π)` scaled to the `B_1 = 1` normalization: `ω_1 · dispersion`.
pub(crate) fn scaled_residual(pw: &PiecewiseWavenumber, lambda: f64) -> f64 {
    omega_of_lambda(lambda, pw.alphas()[0]).norm() * dispersion(pw, lambda).abs()
}

pub fn secant_lambda(pw: &PiecewiseWavenumber, lam0: f64, lam1: f64, cfg: &SolverConfig) -> Result<SecantOutcome> {
    let alpha_n = pw.alphas()[pw.n_pieces() - 1];
    let (mut x0, mut x1) = (lam0, lam1);
    let mut f0 = dispersion(pw, x0);
    let mut f1 = dispersion(pw, x1);
    for it in 1..=cfg.secant_max_iter {
        if !(f0.is_finite() && f1.is_finite()) {
            return Err(Error::DivergedToNaN);
        }
        let x2 = if f1 == 0.0 {
            x1
        } else if f1 == f0 {
            return Err(Error::NoConvergence(it));
        } else {
            x1 - f1 * (x1 - x0) / (f1 - f0)
        };
        if !x2.is_finite() {
            return Err(Error::DivergedToNaN);
        }
        let f2 = if x2 == x1 { f1 } else { dispersion(pw, x2) };
        let w1 = omega_of_lambda(x1, alpha_n);
        let w2 = omega_of_lambda(x2, alpha_n);
        let step_small = (w2 - w1).norm() <= cfg.secant_tol * (1.0 + w2.norm())
            || (x2 - x1).abs() <= 4.0 * f64::EPSILON * (1.0 + x2.abs());
        let residual = scaled_residual(pw, x2);
        if step_small && residual <= 1e-10 * (1.0 + w2.norm()) {
            return Ok(SecantOutcome {
                lambda: x2,
                omega_n: w2,
                iterations: it,
                residual,
            });
        }
        (x0, f0) = (x1, f1);
        (x1, f1) = (x2, f2);
    }
    Err(Error::NoConvergence(cfg.secant_max_iter))
}
