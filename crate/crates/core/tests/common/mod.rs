//! Reference computations written independently of the library: composite
//! Simpson integration, Sturm-sequence bisection on tridiagonal matrices,
//! cofactor determinants and the finite-difference matrix built from
//! scratch.

#![allow(dead_code)]

use std::f64::consts::PI;

use ewape::PiecewiseWavenumber;
use num_complex::Complex64;

/// Composite Simpson rule with `n` (made even) subintervals.
pub fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> f64 {
    let n = n + n % 2;
    let h = (b - a) / n as f64;
    let mut s = f(a) + f(b);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        s += w * f(a + i as f64 * h);
    }
    s * h / 3.0
}

pub fn simpson_c(f: impl Fn(f64) -> Complex64, a: f64, b: f64, n: usize) -> Complex64 {
    Complex64::new(simpson(|z| f(z).re, a, b, n), simpson(|z| f(z).im, a, b, n))
}

/// Interface locations including 0 and π.
pub fn breaks(pw: &PiecewiseWavenumber) -> Vec<f64> {
    let mut b = vec![0.0];
    b.extend(pw.rhos().iter().map(|r| PI * r));
    b.push(PI);
    b
}

/// `∫_0^π f` with Simpson on each piece separately, so that jumps of the
/// coefficient never fall inside a panel.
pub fn piecewise(pw: &PiecewiseWavenumber, f: impl Fn(f64) -> f64, n_per_piece: usize) -> f64 {
    breaks(pw).windows(2).map(|w| simpson(&f, w[0], w[1], n_per_piece)).sum()
}

pub fn piecewise_c(pw: &PiecewiseWavenumber, f: impl Fn(f64) -> Complex64, n_per_piece: usize) -> Complex64 {
    breaks(pw).windows(2).map(|w| simpson_c(&f, w[0], w[1], n_per_piece)).sum()
}

/// `∫_0^π f(z, α(z)²)`, with the piece's own `α²` passed in so interface
/// endpoints are evaluated from the correct side.
pub fn piecewise_a(pw: &PiecewiseWavenumber, f: impl Fn(f64, f64) -> f64, n_per_piece: usize) -> f64 {
    breaks(pw)
        .windows(2)
        .zip(pw.alphas())
        .map(|(w, a)| simpson(|z| f(z, a * a), w[0], w[1], n_per_piece))
        .sum()
}

/// Diagonal of the difference matrix with `α²` averaged over each cell.
pub fn fd_diagonal(pw: &PiecewiseWavenumber, n: usize) -> (Vec<f64>, f64) {
    let h = PI / (n + 1) as f64;
    let b = breaks(pw);
    let diag = (1..=n)
        .map(|i| {
            let (lo, hi) = ((i as f64 - 0.5) * h, (i as f64 + 0.5) * h);
            let mut acc = 0.0;
            for (p, w) in b.windows(2).enumerate() {
                let overlap = hi.min(w[1]) - lo.max(w[0]);
                if overlap > 0.0 {
                    acc += pw.alphas()[p].powi(2) * overlap;
                }
            }
            -2.0 / (h * h) + acc / h
        })
        .collect();
    (diag, 1.0 / (h * h))
}

/// Number of eigenvalues of the symmetric tridiagonal matrix (constant
/// off-diagonal `e`) that are greater than `x`.
fn count_greater(diag: &[f64], e: f64, x: f64) -> usize {
    // Sturm sequence for T − x: negative pivots count eigenvalues below x.
    let mut below = 0;
    let mut q = 1.0f64;
    for (i, &d) in diag.iter().enumerate() {
        q = if i == 0 { d - x } else { d - x - e * e / q };
        if q == 0.0 {
            q = -1e-300;
        }
        if q < 0.0 {
            below += 1;
        }
    }
    diag.len() - below
}

/// The `count` largest eigenvalues (descending) by bisection.
pub fn top_eigenvalues(diag: &[f64], e: f64, count: usize) -> Vec<f64> {
    let radius = diag.iter().map(|d| d.abs()).fold(0.0, f64::max) + 2.0 * e.abs();
    (1..=count)
        .map(|k| {
            // k-th largest: the smallest x with fewer than k eigenvalues above.
            let (mut lo, mut hi) = (-radius, radius);
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if count_greater(diag, e, mid) >= k {
                    lo = mid;
                } else {
                    hi = mid;
                }
                if hi - lo <= 1e-15 * (1.0 + mid.abs()) {
                    break;
                }
            }
            0.5 * (lo + hi)
        })
        .collect()
}

/// Largest `count` eigenvalues of the cell-averaged difference operator.
pub fn fd_top_eigenvalues(pw: &PiecewiseWavenumber, n: usize, count: usize) -> Vec<f64> {
    let (d, e) = fd_diagonal(pw, n);
    top_eigenvalues(&d, e, count)
}

/// Determinant by cofactor expansion along the first row.
pub fn cofactor_det(m: &[Vec<Complex64>]) -> Complex64 {
    let n = m.len();
    if n == 1 {
        return m[0][0];
    }
    let mut total = Complex64::new(0.0, 0.0);
    for c in 0..n {
        let minor: Vec<Vec<Complex64>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|(k, _)| *k != c).map(|(_, v)| *v).collect())
            .collect();
        let sign = if c % 2 == 0 { 1.0 } else { -1.0 };
        total += m[0][c] * sign * cofactor_det(&minor);
    }
    total
}

/// Least-squares slope of `y` against `x`.
pub fn ls_slope(pts: &[(f64, f64)]) -> f64 {
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    sxy / sxx
}

pub fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1e-300)
}
