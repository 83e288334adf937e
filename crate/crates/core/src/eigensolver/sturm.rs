//! Real shooting from `z = 0` with `V(0) = 0`, `V'(0) = 1`.
//!
//! The end value is an entire function of `λ` whose zeros are exactly the
//! eigenvalues, and the number of interior zeros of the shot solution counts
//! the eigenvalues above `λ`.

use std::f64::consts::PI;

use crate::model::PiecewiseWavenumber;

#[derive(Debug, Clone, Copy)]
struct Piece {
    /// `α² − λ`.
    kappa: f64,
    len: f64,
}

fn pieces(pw: &PiecewiseWavenumber, lambda: f64) -> impl Iterator<Item = Piece> + '_ {
    (0..pw.n_pieces()).map(move |i| {
        let (a, b) = pw.piece_bounds(i);
        Piece {
            kappa: pw.alpha_sq(i) - lambda,
            len: b - a,
        }
    })
}

/// `(cos(√κ L), sin(√κ L)/√κ, −κ sin(√κ L)/√κ)` continued analytically
/// through `κ ≤ 0`.
fn propagator(p: Piece) -> (f64, f64, f64) {
    let Piece { kappa, len } = p;
    let x = kappa * len * len;
    if x.abs() < 1e-8 {
        let c = 1.0 - x / 2.0 + x * x / 24.0;
        let s = len * (1.0 - x / 6.0 + x * x / 120.0);
        return (c, s, -kappa * s);
    }
    if kappa > 0.0 {
        let w = kappa.sqrt();
        let (sn, cs) = (w * len).sin_cos();
        (cs, sn / w, -w * sn)
    } else {
        let y = (-kappa).sqrt();
        let (sh, ch) = ((y * len).sinh(), (y * len).cosh());
        (ch, sh / y, y * sh)
    }
}

/// Zeros of `v cos + (d/ω) sin` (or its hyperbolic/linear analogue) in
/// `(0, L]` along the piece.
fn zeros_in_piece(p: Piece, v: f64, d: f64) -> usize {
    let Piece { kappa, len } = p;
    if kappa > 0.0 && kappa * len * len >= 1e-8 {
        let w = kappa.sqrt();
        let phi = v.atan2(d / w);
        let hi = ((phi + w * len) / PI).floor();
        let lo = (phi / PI).floor();
        (hi - lo).max(0.0) as usize
    } else if kappa < 0.0 && kappa * len * len <= -1e-8 {
        if d == 0.0 {
            return 0;
        }
        let y = (-kappa).sqrt();
        let t = -v * y / d;
        usize::from(t > 0.0 && t <= (y * len).tanh())
    } else {
        if d == 0.0 {
            return 0;
        }
        let t = -v / d;
        usize::from(t > 0.0 && t <= len)
    }
}

/// `V(π)` for the solution with `V(0) = 0`, `V'(0) = 1`.
pub fn dispersion(pw: &PiecewiseWavenumber, lambda: f64) -> f64 {
    shoot(pw, lambda).0
}

/// `(V(π), V'(π))` for the same solution.
pub fn shoot(pw: &PiecewiseWavenumber, lambda: f64) -> (f64, f64) {
    let (mut v, mut d) = (0.0, 1.0);
    for p in pieces(pw, lambda) {
        let (c, s, ks) = propagator(p);
        (v, d) = (c * v + s * d, ks * v + c * d);
    }
    (v, d)
}

/// Number of eigenvalues strictly greater than `lambda`, for `lambda` not
/// itself an eigenvalue.
pub fn count_above(pw: &PiecewiseWavenumber, lambda: f64) -> usize {
    let (mut v, mut d) = (0.0, 1.0);
    let mut zeros = 0;
    for p in pieces(pw, lambda) {
        zeros += zeros_in_piece(p, v, d);
        let (c, s, ks) = propagator(p);
        (v, d) = (c * v + s * d, ks * v + c * d);
        let scale = v.abs().max(d.abs());
        if scale > 1e100 || (scale < 1e-100 && scale > 0.0) {
            v /= scale;
            d /= scale;
        }
    }
    zeros
}
