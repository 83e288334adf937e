//! Boundary/continuity system, its reduced determinant, and the null-space
//! coefficients obtained by block forward substitution.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::model::PiecewiseWavenumber;
use crate::special::{principal_sqrt, sin_over};

const SINGULAR: f64 = 1e-14;

/// `√(α² − λ)` on the principal branch: real and nonnegative when
/// `λ ≤ α²`, positive imaginary otherwise.
pub fn omega_of_lambda(lambda: f64, alpha: f64) -> Complex64 {
    principal_sqrt(Complex64::new(alpha * alpha - lambda, 0.0))
}

/// Per-piece frequencies from the last one, `ω_i = √(ω_n² − α_n² + α_i²)`.
/// `ω_n` itself is kept as given.
pub fn frequencies(pw: &PiecewiseWavenumber, omega_n: Complex64) -> Vec<Complex64> {
    let n = pw.n_pieces();
    let an2 = pw.alpha_sq(n - 1);
    let w2 = omega_n * omega_n;
    (0..n)
        .map(|i| {
            if i + 1 == n {
                omega_n
            } else {
                principal_sqrt(w2 - an2 + pw.alpha_sq(i))
            }
        })
        .collect()
}

/// Per-piece frequencies for a given eigenvalue.
pub fn frequencies_for_lambda(pw: &PiecewiseWavenumber, lambda: f64) -> Vec<Complex64> {
    pw.alphas().iter().map(|&a| omega_of_lambda(lambda, a)).collect()
}

/// Coefficients `(A_i, B_i)` for every piece with `A_1 = 0`, `B_1 = 1`,
/// propagated across interfaces so that value and slope are continuous.
pub(crate) fn transfer(pw: &PiecewiseWavenumber, omegas: &[Complex64]) -> Result<Vec<(Complex64, Complex64)>> {
    let zero = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let mut coeffs = Vec::with_capacity(omegas.len());
    coeffs.push((zero, one));
    for (k, &rho) in pw.rhos().iter().enumerate() {
        let z = PI * rho;
        let (a, b) = coeffs[k];
        let wk = omegas[k];
        let (ck, sk) = ((wk * z).cos(), (wk * z).sin());
        let v = a * ck + b * sk;
        let d = wk * (b * ck - a * sk);
        let w = omegas[k + 1];
        if w.norm() < SINGULAR {
            return Err(Error::SingularBlock(w.norm()));
        }
        let (c, s) = ((w * z).cos(), (w * z).sin());
        let next_a = c * v - sin_over(w, z) * d;
        let next_b = s * v + c * d / w;
        coeffs.push((next_a, next_b));
    }
    Ok(coeffs)
}

/// `(B_1, A_2, B_2, …, A_n, B_n)`, i.e. `[1; −D⁻¹C]`.
pub fn null_space_coeffs(pw: &PiecewiseWavenumber, omega_n: Complex64) -> Result<Vec<Complex64>> {
    let omegas = frequencies(pw, omega_n);
    let coeffs = transfer(pw, &omegas)?;
    let mut x = Vec::with_capacity(2 * coeffs.len() - 1);
    x.push(coeffs[0].1);
    for &(a, b) in &coeffs[1..] {
        x.push(a);
        x.push(b);
    }
    Ok(x)
}

/// The scalar `−B D⁻¹ C`, equal to `V(π)` for the solution started with
/// `A_1 = 0`, `B_1 = 1`. Vanishes exactly at eigenfrequencies.
pub fn reduced_determinant(pw: &PiecewiseWavenumber, omega_n: Complex64) -> Result<Complex64> {
    let n = pw.n_pieces();
    if omega_n.norm() < SINGULAR {
        return Err(Error::SingularBlock(omega_n.norm()));
    }
    let omegas = frequencies(pw, omega_n);
    let coeffs = transfer(pw, &omegas)?;
    let (a, b) = coeffs[n - 1];
    let w = omegas[n - 1] * PI;
    let value = a * w.cos() + b * w.sin();
    if value.re.is_finite() && value.im.is_finite() {
        Ok(value)
    } else {
        Err(Error::DivergedToNaN)
    }
}

/// The full `(2n−1) × (2n−1)` system `M_j` acting on
/// `(B_1, A_2, B_2, …, A_n, B_n)`. Row 0 is the boundary condition at `π`,
/// rows `2k−1, 2k` the value and slope continuity at the `k`-th interface.
pub fn system_matrix(pw: &PiecewiseWavenumber, omega_n: Complex64) -> Vec<Vec<Complex64>> {
    let n = pw.n_pieces();
    let omegas = frequencies(pw, omega_n);
    let dim = 2 * n - 1;
    let zero = Complex64::new(0.0, 0.0);
    let mut m = vec![vec![zero; dim]; dim];
    // Column of A_i / B_i; A_1 is eliminated.
    let col_a = |i: usize| if i == 0 { None } else { Some(2 * i - 1) };
    let col_b = |i: usize| if i == 0 { 0 } else { 2 * i };

    let wn = omegas[n - 1] * PI;
    if let Some(c) = col_a(n - 1) {
        m[0][c] = wn.cos();
    }
    m[0][col_b(n - 1)] = wn.sin();

    for (k, &rho) in pw.rhos().iter().enumerate() {
        let z = PI * rho;
        let (rv, rd) = (2 * k + 1, 2 * k + 2);
        for (piece, sign) in [(k, 1.0), (k + 1, -1.0)] {
            let w = omegas[piece];
            let (c, s) = ((w * z).cos(), (w * z).sin());
            if let Some(ca) = col_a(piece) {
                m[rv][ca] = c * sign;
                m[rd][ca] = -w * s * sign;
            }
            let cb = col_b(piece);
            m[rv][cb] = s * sign;
            m[rd][cb] = w * c * sign;
        }
    }
    m
}

/// The block `D_j`: rows and columns `1..` of [`system_matrix`].
pub fn d_block(pw: &PiecewiseWavenumber, omega_n: Complex64) -> Vec<Vec<Complex64>> {
    system_matrix(pw, omega_n)
        .into_iter()
        .skip(1)
        .map(|row| row[1..].to_vec())
        .collect()
}

/// `det(D_j)` from the assembled three-piece block. Analytically this is
/// `ω_2 ω_3`.
pub fn det_d_check(pw: &PiecewiseWavenumber, omega_n: Complex64) -> Result<Complex64> {
    if pw.n_pieces() != 3 {
        return Err(Error::WrongPieceCount {
            expected: 3,
            got: pw.n_pieces(),
        });
    }
    Ok(complex_det(d_block(pw, omega_n)))
}

/// Determinant by Gaussian elimination with partial pivoting.
pub(crate) fn complex_det(mut a: Vec<Vec<Complex64>>) -> Complex64 {
    let n = a.len();
    let mut det = Complex64::new(1.0, 0.0);
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| a[i][col].norm().total_cmp(&a[j][col].norm()))
            .unwrap();
        if a[pivot][col].norm() == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        if pivot != col {
            a.swap(pivot, col);
            det = -det;
        }
        let p = a[col][col];
        det *= p;
        for row in col + 1..n {
            let f = a[row][col] / p;
            if f.norm() == 0.0 {
                continue;
            }
            for k in col..n {
                let v = a[col][k];
                a[row][k] -= f * v;
            }
        }
    }
    det
}
