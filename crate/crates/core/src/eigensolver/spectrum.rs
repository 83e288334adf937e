use num_complex::Complex64;
use serde::Serialize;

use super::determinant::{frequencies_for_lambda, omega_of_lambda, transfer};
use super::secant::{perturbed_lambda, scaled_residual, secant_lambda};
use super::seeds::{cutoff_index, rayleigh_guess, restricted_seeds};
use super::sturm::{count_above, dispersion};
use super::{local_forms, EigenMode};
use crate::error::{Error, Result};
use crate::expansion::mode_norm_sq;
use crate::model::{PiecewiseWavenumber, SolverConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SeedSource {
    RestrictedMatrix,
    Rayleigh,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ModeDiagnostics {
    pub index: usize,
    pub seed: f64,
    pub seed_source: SeedSource,
    pub secant_iters: usize,
    pub det_residual: f64,
    pub reseeds: usize,
    /// The root was isolated by Sturm bisection after all secant attempts
    /// landed on the wrong index.
    pub bracketed: bool,
}

#[derive(Debug, Clone)]
pub struct SpectrumResult {
    pub modes: Vec<EigenMode>,
    pub cutoff_j: usize,
    pub diagnostics: Vec<ModeDiagnostics>,
}

/// Builds the full mode for the `j`-th eigenvalue.
pub fn assemble_mode(pw: &PiecewiseWavenumber, j: usize, omega_n: Complex64) -> Result<EigenMode> {
    let an = pw.alphas()[pw.n_pieces() - 1];
    let lambda = an * an - (omega_n * omega_n).re;
    let mut omegas = super::determinant::frequencies(pw, omega_n);
    // Keep the per-piece frequencies on the principal branch of a real λ.
    for (w, &a) in omegas.iter_mut().zip(pw.alphas()) {
        if w.im.abs() <= 1e-14 * w.norm() || w.re.abs() <= 1e-14 * w.norm() {
            *w = omega_of_lambda(lambda, a);
        }
    }
    build_mode(pw, j, lambda, omegas)
}

fn build_mode(pw: &PiecewiseWavenumber, j: usize, lambda: f64, omegas: Vec<Complex64>) -> Result<EigenMode> {
    if let Some(w) = omegas.iter().find(|w| w.norm() < 1e-14) {
        return Err(Error::SingularBlock(w.norm()));
    }
    let coeffs = transfer(pw, &omegas)?;
    let breaks = pw.breakpoints();
    let local = local_forms(&breaks, &omegas);
    let mut mode = EigenMode {
        index: j,
        lambda,
        omegas,
        coeffs,
        norm_sq: 0.0,
        breaks,
        local,
    };
    mode.norm_sq = mode_norm_sq(&mode)?;
    Ok(mode)
}

fn mode_for_lambda(pw: &PiecewiseWavenumber, j: usize, lambda: f64) -> Result<EigenMode> {
    // A root indistinguishable from zero is taken as zero: the range factor
    // e^{i√λ r} has a branch point there, and a round-off sign flip would
    // turn a neutral mode into a decaying one.
    let lambda = if lambda.abs() <= 8.0 * f64::EPSILON * (1.0 + pw.alpha_max().powi(2)) {
        0.0
    } else {
        lambda
    };
    match build_mode(pw, j, lambda, frequencies_for_lambda(pw, lambda)) {
        // λ landed on some α_i² to round-off; the neighbouring float is an
        // equally good root and keeps every frequency nonzero.
        Err(Error::SingularBlock(_)) => {
            let nudged = lambda + 64.0 * f64::EPSILON * (1.0 + lambda.abs());
            build_mode(pw, j, nudged, frequencies_for_lambda(pw, nudged))
        }
        other => other,
    }
}

fn has_index(pw: &PiecewiseWavenumber, j: usize, lambda: f64) -> bool {
    let delta = 1e-6 * (1.0 + lambda.abs());
    count_above(pw, lambda + delta) == j - 1 && count_above(pw, lambda - delta) == j
}

/// Isolates the `j`-th eigenvalue with Sturm counts, then finishes with
/// Illinois regula falsi on the dispersion function.
fn bracket_root(pw: &PiecewiseWavenumber, j: usize) -> Result<(f64, usize)> {
    let jj = (j * j) as f64;
    let mut lo = pw.alpha_min().powi(2) - jj - 1.0;
    let mut hi = pw.alpha_max().powi(2) - jj + 1.0;
    let mut iters = 0;
    while !(count_above(pw, lo) == j && count_above(pw, hi) == j - 1) {
        iters += 1;
        if iters > 200 {
            return Err(Error::SpectrumIncomplete(j));
        }
        let mid = 0.5 * (lo + hi);
        if count_above(pw, mid) >= j {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let (mut flo, mut fhi) = (dispersion(pw, lo), dispersion(pw, hi));
    let mut side = 0i8;
    for _ in 0..200 {
        iters += 1;
        let x = (lo * fhi - hi * flo) / (fhi - flo);
        let x = if x.is_finite() && x > lo && x < hi {
            x
        } else {
            0.5 * (lo + hi)
        };
        let fx = dispersion(pw, x);
        if fx == 0.0 || hi - lo <= 4.0 * f64::EPSILON * (1.0 + x.abs()) {
            return Ok((x, iters));
        }
        if (fx > 0.0) == (flo > 0.0) {
            lo = x;
            flo = fx;
            if side == 1 {
                fhi *= 0.5;
            }
            side = 1;
        } else {
            hi = x;
            fhi = fx;
            if side == -1 {
                flo *= 0.5;
            }
            side = -1;
        }
    }
    Err(Error::SpectrumIncomplete(j))
}

struct Refined {
    lambda: f64,
    iterations: usize,
    reseeds: usize,
    bracketed: bool,
}

fn refine(pw: &PiecewiseWavenumber, j: usize, seeds: &[f64], cfg: &SolverConfig) -> Result<Refined> {
    let seed = seeds[j - 1];
    let mut attempts = vec![seed];
    if j < seeds.len() {
        attempts.push(0.5 * (seed + seeds[j]));
    }
    if j > 1 {
        attempts.push(0.5 * (seed + seeds[j - 2]));
    }
    let rq = rayleigh_guess(pw, j);
    if rq != seed {
        attempts.push(rq);
    }
    attempts.truncate(4);
    let mut total_iters = 0;
    for (k, &start) in attempts.iter().enumerate() {
        let second = perturbed_lambda(pw, start, cfg.secant_perturbation);
        match secant_lambda(pw, start, second, cfg) {
            Ok(out) => {
                total_iters += out.iterations;
                if has_index(pw, j, out.lambda) {
                    return Ok(Refined {
                        lambda: out.lambda,
                        iterations: total_iters,
                        reseeds: k,
                        bracketed: false,
                    });
                }
            }
            Err(Error::NoConvergence(n)) => total_iters += n,
            Err(Error::DivergedToNaN) => {}
            Err(e) => return Err(e),
        }
    }
    let (lambda, iters) = bracket_root(pw, j)?;
    Ok(Refined {
        lambda,
        iterations: total_iters + iters,
        reseeds: attempts.len() - 1,
        bracketed: true,
    })
}

/// Seeds for modes `1..=m` and the cutoff that separates the two regimes.
pub fn initial_guesses(pw: &PiecewiseWavenumber, m: usize, cfg: &SolverConfig) -> Result<(Vec<f64>, usize)> {
    let cutoff = cutoff_index(pw, m, cfg.cutoff_threshold);
    let mut seeds = restricted_seeds(pw, cutoff)?;
    seeds.extend((cutoff + 1..=m).map(|j| rayleigh_guess(pw, j)));
    Ok((seeds, cutoff))
}

/// The `m` largest eigenvalues with their eigenfunctions.
pub fn compute_spectrum(pw: &PiecewiseWavenumber, m: usize, cfg: &SolverConfig) -> Result<SpectrumResult> {
    cfg.validate()?;
    if m == 0 {
        return Err(Error::InvalidConfig("at least one mode is required".into()));
    }
    let (seeds, cutoff) = initial_guesses(pw, m, cfg)?;
    let mut modes = Vec::with_capacity(m);
    let mut diagnostics = Vec::with_capacity(m);
    for j in 1..=m {
        let refined = refine(pw, j, &seeds, cfg).map_err(|e| match e {
            Error::SpectrumIncomplete(_) => e,
            _ => Error::SpectrumIncomplete(j),
        })?;
        let mode = mode_for_lambda(pw, j, refined.lambda)?;
        diagnostics.push(ModeDiagnostics {
            index: j,
            seed: seeds[j - 1],
            seed_source: if j <= cutoff {
                SeedSource::RestrictedMatrix
            } else {
                SeedSource::Rayleigh
            },
            secant_iters: refined.iterations,
            det_residual: scaled_residual(pw, mode.lambda),
            reseeds: refined.reseeds,
            bracketed: refined.bracketed,
        });
        modes.push(mode);
    }
    Ok(SpectrumResult {
        modes,
        cutoff_j: cutoff,
        diagnostics,
    })
}
