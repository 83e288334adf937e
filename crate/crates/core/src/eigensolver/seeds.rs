//! Initial guesses: Rayleigh quotients of `sin(jz)` and the Galerkin matrix
//! on the first `J` sines.

use std::f64::consts::PI;

use crate::error::Result;
use crate::linalg::{small_symmetric_eig, Matrix};
use crate::model::PiecewiseWavenumber;

/// `∫_a^b sin²(jz) dz`.
pub fn sine_sq_integral(j: usize, a: f64, b: f64) -> f64 {
    let j = j as f64;
    (b - a) / 2.0 - ((2.0 * j * b).sin() - (2.0 * j * a).sin()) / (4.0 * j)
}

/// `Σ_p α_p^power ∫_piece sin²(jz) dz`.
fn weighted_sine_sq(pw: &PiecewiseWavenumber, j: usize, power: i32) -> f64 {
    (0..pw.n_pieces())
        .map(|p| {
            let (a, b) = pw.piece_bounds(p);
            pw.alphas()[p].powi(power) * sine_sq_integral(j, a, b)
        })
        .sum()
}

/// `Y_j = ∫ α² sin²(jz)`.
pub fn y_coefficient(pw: &PiecewiseWavenumber, j: usize) -> f64 {
    weighted_sine_sq(pw, j, 2)
}

/// `X_ij = ∫ sin(iz) α² sin(jz)` for `i ≠ j`, written as a sum over
/// interfaces of the jumps in `α²`.
pub fn x_coefficient(pw: &PiecewiseWavenumber, i: usize, j: usize) -> f64 {
    debug_assert_ne!(i, j);
    let (fi, fj) = (i as f64, j as f64);
    let g = |rho: f64| {
        ((fi + fj) * (rho * (fi - fj) * PI).sin() - (fi - fj) * (rho * (fi + fj) * PI).sin())
            / (fi * fi - fj * fj)
    };
    let a = pw.alphas();
    pw.rhos()
        .iter()
        .enumerate()
        .map(|(k, &rho)| 0.5 * (a[k] * a[k] - a[k + 1] * a[k + 1]) * g(rho))
        .sum()
}

/// Rayleigh quotient of `sin(jz)`: `−j² + (2/π) Y_j`.
pub fn rayleigh_guess(pw: &PiecewiseWavenumber, j: usize) -> f64 {
    let j2 = (j * j) as f64;
    -j2 + 2.0 / PI * y_coefficient(pw, j)
}

/// Relative residual `‖Lφ − μφ‖² / ‖Lφ‖²` of `φ = sin(jz)` with its
/// Rayleigh quotient `μ`, clamped to `[0, 1]`.
pub fn sine_approx_error(pw: &PiecewiseWavenumber, j: usize) -> f64 {
    let a = weighted_sine_sq(pw, j, 4);
    let b = weighted_sine_sq(pw, j, 2);
    let j2 = (j * j) as f64;
    let num = a - 2.0 / PI * b * b;
    let den = j2 * j2 * PI / 2.0 - 2.0 * j2 * b + a;
    // `L sin(jz) = 0` only when α ≡ j; then the sine is exact.
    let scale = j2 * j2 * PI / 2.0 + a;
    if den <= 1e-13 * scale {
        return if num.abs() <= 1e-13 * scale { 0.0 } else { 1.0 };
    }
    (num / den).clamp(0.0, 1.0)
}

/// Largest `j ≤ j_max` whose sine approximation error exceeds `threshold`;
/// 0 when every sine is good enough.
pub fn cutoff_index(pw: &PiecewiseWavenumber, j_max: usize, threshold: f64) -> usize {
    (1..=j_max)
        .rev()
        .find(|&j| sine_approx_error(pw, j) > threshold)
        .unwrap_or(0)
}

/// Galerkin matrix `(2/π)⟨sin(iz), L sin(jz)⟩`, `1 ≤ i, j ≤ size`.
pub fn restricted_matrix(pw: &PiecewiseWavenumber, size: usize) -> Matrix {
    let mut m = Matrix::zeros(size, size);
    for i in 1..=size {
        m[(i - 1, i - 1)] = rayleigh_guess(pw, i);
        for j in i + 1..=size {
            let x = 2.0 / PI * x_coefficient(pw, i, j);
            m[(i - 1, j - 1)] = x;
            m[(j - 1, i - 1)] = x;
        }
    }
    m
}

/// Eigenvalues of the restricted matrix, descending.
pub fn restricted_seeds(pw: &PiecewiseWavenumber, size: usize) -> Result<Vec<f64>> {
    if size == 0 {
        return Ok(Vec::new());
    }
    Ok(small_symmetric_eig(&restricted_matrix(pw, size))?.values)
}
