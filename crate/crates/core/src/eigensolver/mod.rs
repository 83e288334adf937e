//! Eigenpairs of `L = d²/dz² + α(z)²` with Dirichlet ends.
//!
//! On each piece an eigenfunction is `A_i cos(ω_i z) + B_i sin(ω_i z)` with
//! `λ = α_i² − ω_i²`. Fixing `A_1 = 0`, `B_1 = 1` and imposing continuity of
//! value and slope leaves the single condition `V(π) = 0` in one unknown.

mod determinant;
mod secant;
mod seeds;
mod spectrum;
mod sturm;

use num_complex::Complex64;

pub use determinant::{
    d_block, det_d_check, frequencies, frequencies_for_lambda, null_space_coeffs, omega_of_lambda,
    reduced_determinant, system_matrix,
};
pub use secant::{secant_lambda, secant_root, SecantOutcome};
pub use seeds::{
    cutoff_index, rayleigh_guess, restricted_matrix, restricted_seeds, sine_approx_error,
    sine_sq_integral, x_coefficient, y_coefficient,
};
pub use spectrum::{
    assemble_mode, compute_spectrum, initial_guesses, ModeDiagnostics, SeedSource, SpectrumResult,
};
pub use sturm::{count_above, dispersion, shoot};

/// One eigenpair in piecewise trigonometric form.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenMode {
    pub index: usize,
    pub lambda: f64,
    pub omegas: Vec<Complex64>,
    /// `(A_i, B_i)` per piece, in global `z`.
    pub coeffs: Vec<(Complex64, Complex64)>,
    /// `∫|V|²`.
    pub norm_sq: f64,
    pub(crate) breaks: Vec<f64>,
    /// The same function written relative to each piece's left end; all
    /// evaluation and integration goes through this form.
    pub(crate) local: Vec<LocalForm>,
}

/// A piece of a mode in the local variable `t = z − z_a`, `0 ≤ t ≤ L`.
///
/// In global `z` an evanescent piece is a difference of `cosh` and `sinh`
/// terms of size `e^{κz}`, which cancel to a field of order one. Anchoring
/// at the piece start and switching to decaying exponentials keeps every
/// term no larger than the field itself.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) enum LocalForm {
    /// `a cos(ωt) + b sin(ωt)`.
    Trig { a: Complex64, b: Complex64 },
    /// `up·e^{κ(t−L)} + down·e^{−κt}` for `ω = iκ`.
    Exp { up: Complex64, down: Complex64, kappa: f64 },
}

/// `κL` above which an evanescent piece uses the exponential form.
const EXP_FORM_FROM: f64 = 1.0;

impl LocalForm {
    /// Form with value `v` and slope `d` at `t = 0`.
    pub(crate) fn from_start(w: Complex64, len: f64, v: Complex64, d: Complex64) -> Self {
        if w.re == 0.0 && w.im * len > EXP_FORM_FROM {
            let kappa = w.im;
            let decay = (-kappa * len).exp();
            LocalForm::Exp {
                up: (v + d / kappa) * (0.5 / decay),
                down: (v - d / kappa) * 0.5,
                kappa,
            }
        } else {
            LocalForm::Trig { a: v, b: d / w }
        }
    }

    pub(crate) fn value(&self, w: Complex64, len: f64, t: f64) -> Complex64 {
        match *self {
            LocalForm::Trig { a, b } if w.im == 0.0 => {
                let (s, c) = (w.re * t).sin_cos();
                a * c + b * s
            }
            LocalForm::Trig { a, b } => {
                let wt = w * t;
                a * wt.cos() + b * wt.sin()
            }
            LocalForm::Exp { up, down, kappa } => up * (kappa * (t - len)).exp() + down * (-kappa * t).exp(),
        }
    }

    pub(crate) fn slope(&self, w: Complex64, len: f64, t: f64) -> Complex64 {
        match *self {
            LocalForm::Trig { a, b } => {
                let wt = w * t;
                w * (b * wt.cos() - a * wt.sin())
            }
            LocalForm::Exp { up, down, kappa } => {
                (up * (kappa * (t - len)).exp() - down * (-kappa * t).exp()) * kappa
            }
        }
    }

    fn scaled(&self, c: Complex64) -> Self {
        match *self {
            LocalForm::Trig { a, b } => LocalForm::Trig { a: a * c, b: b * c },
            LocalForm::Exp { up, down, kappa } => LocalForm::Exp {
                up: up * c,
                down: down * c,
                kappa,
            },
        }
    }
}

/// Local forms of the solution with `V(0) = 0`, `V'(0) = ω_1`, i.e.
/// `A_1 = 0`, `B_1 = 1`, carried across interfaces by value and slope.
pub(crate) fn local_forms(breaks: &[f64], omegas: &[Complex64]) -> Vec<LocalForm> {
    let mut v = Complex64::new(0.0, 0.0);
    let mut d = omegas[0];
    omegas
        .iter()
        .zip(breaks.windows(2))
        .map(|(&w, ends)| {
            let len = ends[1] - ends[0];
            let form = LocalForm::from_start(w, len, v, d);
            (v, d) = (form.value(w, len, len), form.slope(w, len, len));
            form
        })
        .collect()
}

impl EigenMode {
    pub fn n_pieces(&self) -> usize {
        self.omegas.len()
    }

    /// `0 = z_0 < … < z_n = π`.
    pub fn breakpoints(&self) -> &[f64] {
        &self.breaks
    }

    /// Piece containing `z`, right-continuous; `z` is clamped to `[0, π]`.
    pub fn piece_of(&self, z: f64) -> usize {
        let n = self.n_pieces();
        self.breaks[1..n].iter().take_while(|&&b| b <= z).count()
    }

    pub(crate) fn piece_len(&self, piece: usize) -> f64 {
        self.breaks[piece + 1] - self.breaks[piece]
    }

    pub fn eval_piece(&self, piece: usize, z: f64) -> Complex64 {
        let t = z - self.breaks[piece];
        self.local[piece].value(self.omegas[piece], self.piece_len(piece), t)
    }

    pub fn derivative_piece(&self, piece: usize, z: f64) -> Complex64 {
        let t = z - self.breaks[piece];
        self.local[piece].slope(self.omegas[piece], self.piece_len(piece), t)
    }

    pub fn eval(&self, z: f64) -> Complex64 {
        self.eval_piece(self.piece_of(z), z)
    }

    pub fn derivative(&self, z: f64) -> Complex64 {
        self.derivative_piece(self.piece_of(z), z)
    }

    /// Constant unit factor `ω_1/|ω_1|` such that `V / phase` is real.
    pub fn phase(&self) -> Complex64 {
        let w = self.omegas[0];
        if w.norm() == 0.0 {
            Complex64::new(1.0, 0.0)
        } else {
            w / w.norm()
        }
    }

    /// `max_z |V(z)|`, exact per piece.
    pub fn sup_norm(&self) -> f64 {
        (0..self.n_pieces())
            .map(|p| self.piece_sup(p))
            .fold(0.0, f64::max)
    }

    fn piece_sup(&self, p: usize) -> f64 {
        let (za, zb) = (self.breaks[p], self.breaks[p + 1]);
        let ends = self.eval_piece(p, za).norm().max(self.eval_piece(p, zb).norm());
        let w = self.omegas[p];
        let LocalForm::Trig { a, b } = self.local[p] else {
            return ends;
        };
        if w.im != 0.0 || w.re == 0.0 {
            // cosh/sinh combinations and straight lines peak at the ends.
            return ends;
        }
        let w = w.re;
        // |V|² = Q(cos θ, sin θ) with θ = ωt; extrema where tan 2θ = 2q/(p−r).
        let (qa, qb, qab) = (a.norm_sqr(), b.norm_sqr(), (a * b.conj()).re);
        let theta0 = 0.5 * (2.0 * qab).atan2(qa - qb);
        let tb = w * (zb - za);
        let half_pi = std::f64::consts::FRAC_PI_2;
        let mut best = ends;
        if tb >= std::f64::consts::PI {
            let peak = 0.5 * (qa + qb) + (0.25 * (qa - qb).powi(2) + qab * qab).sqrt();
            return peak.sqrt().max(ends);
        }
        let mut k = (-theta0 / half_pi).ceil();
        loop {
            let t = theta0 + k * half_pi;
            if t > tb {
                break;
            }
            best = best.max(self.eval_piece(p, za + t / w).norm());
            k += 1.0;
        }
        best
    }

    /// The same mode multiplied by `c`.
    pub fn scaled(&self, c: Complex64) -> EigenMode {
        EigenMode {
            coeffs: self.coeffs.iter().map(|&(a, b)| (a * c, b * c)).collect(),
            local: self.local.iter().map(|f| f.scaled(c)).collect(),
            norm_sq: self.norm_sq * c.norm_sqr(),
            ..self.clone()
        }
    }
}
