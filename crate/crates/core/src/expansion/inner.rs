//! Closed-form integrals of piecewise trigonometric modes.
//!
//! Inner products are Hermitian, conjugate-linear in the first slot. A mode
//! is a real function times the constant phase `ω_1/|ω_1|`, so the bilinear
//! integrals below differ from the Hermitian ones only by that phase.

use num_complex::Complex64;

use crate::eigensolver::{EigenMode, LocalForm};
use crate::error::{Error, Result};
use crate::special::sin_over;

/// `∫_0^L (a cos ωt + b sin ωt)² dt`.
fn trig_square(a: Complex64, b: Complex64, w: Complex64, len: f64) -> Complex64 {
    let s = sin_over(w, len);
    let wl = w * len;
    (a * a + b * b) * (len / 2.0) + (a * a - b * b) * wl.cos() * s / 2.0 + a * b * wl.sin() * s
}

/// `∫_0^L (up·e^{κ(t−L)} + down·e^{−κt})² dt`; every term is positive or
/// bounded, so nothing cancels.
fn exp_square(up: Complex64, down: Complex64, kappa: f64, len: f64) -> Complex64 {
    let decay = (-kappa * len).exp();
    let tail = -(-2.0 * kappa * len).exp_m1() / (2.0 * kappa);
    (up * up + down * down) * tail + up * down * (2.0 * len * decay)
}

/// `⟨V, V⟩ = ∫|V|²`.
pub fn mode_norm_sq(mode: &EigenMode) -> Result<f64> {
    let total: Complex64 = (0..mode.n_pieces())
        .map(|p| {
            let len = mode.piece_len(p);
            match mode.local[p] {
                LocalForm::Trig { a, b } => trig_square(a, b, mode.omegas[p], len),
                LocalForm::Exp { up, down, kappa } => exp_square(up, down, kappa, len),
            }
        })
        .sum();
    let phase = mode.phase();
    let value = (total * phase.conj() * phase.conj()).re;
    if value > 0.0 && value.is_finite() {
        Ok(value)
    } else {
        Err(Error::DegenerateNorm(value))
    }
}

/// `(cos ωL, sin ωL)` per piece, or `(e^{−κL}, 0)` for exponential pieces.
struct ModeTrig {
    ends: Vec<(Complex64, Complex64)>,
}

impl ModeTrig {
    fn new(mode: &EigenMode) -> Self {
        let ends = (0..mode.n_pieces())
            .map(|p| {
                let len = mode.piece_len(p);
                match mode.local[p] {
                    LocalForm::Trig { .. } => {
                        let wl = mode.omegas[p] * len;
                        (wl.cos(), wl.sin())
                    }
                    LocalForm::Exp { kappa, .. } => (Complex64::new((-kappa * len).exp(), 0.0), Complex64::new(0.0, 0.0)),
                }
            })
            .collect();
        Self { ends }
    }
}

/// `(∫_0^L cos(ωt) sin(k(z_a+t)), ∫_0^L sin(ωt) sin(k(z_a+t)))` through the
/// entire product-to-sum form, valid for any `k² − ω²`.
fn resonant_pair(w: Complex64, k: f64, za: f64, len: f64) -> (Complex64, Complex64) {
    let c = Complex64::new(k * za, 0.0);
    let kc = Complex64::new(k, 0.0);
    let (pp, pm) = (kc + w, kc - w);
    let half = 0.5 * len;
    let sin_int = |p: Complex64| (c + p * half).sin() * sin_over(p, half) * 2.0;
    let cos_int = |p: Complex64| (c + p * half).cos() * sin_over(p, half) * 2.0;
    let cs = (sin_int(pp) + sin_int(pm)) * 0.5;
    let ss = (cos_int(pm) - cos_int(pp)) * 0.5;
    (cs, ss)
}

/// `∫ V sin(kz)` over the whole domain, using precomputed trig values.
fn sine_integral(mode: &EigenMode, trig: &ModeTrig, k: usize, ksin: &[f64], kcos: &[f64]) -> Complex64 {
    (0..mode.n_pieces())
        .map(|p| piece_sine_integral(mode, trig, p, k as f64, ksin, kcos))
        .sum()
}

/// Real antiderivative pair for a real frequency `w`, or `None` near
/// resonance. `ends = (sin kz_a, cos kz_a, sin kz_b, cos kz_b)`.
#[inline]
fn real_pair(w: f64, kf: f64, cl: f64, sl: f64, ends: (f64, f64, f64, f64)) -> Option<(f64, f64)> {
    let (sa, ca, sb, cb) = ends;
    let den = w * w - kf * kf;
    if den.abs() <= 1e-8 * kf * kf {
        return None;
    }
    Some((
        ((w * sl * sb + cl * kf * cb) - kf * ca) / den,
        ((-w * cl * sb + sl * kf * cb) + w * sa) / den,
    ))
}

/// `∫ V sin(kz)` over piece `p`.
fn piece_sine_integral(mode: &EigenMode, trig: &ModeTrig, p: usize, kf: f64, ksin: &[f64], kcos: &[f64]) -> Complex64 {
    let len = mode.piece_len(p);
    let (sa, ca, sb, cb) = (ksin[p], kcos[p], ksin[p + 1], kcos[p + 1]);
    match mode.local[p] {
        LocalForm::Trig { a, b } => {
            let w = mode.omegas[p];
            let (cl, sl) = trig.ends[p];
            if w.im == 0.0 {
                if let Some((cs, ss)) = real_pair(w.re, kf, cl.re, sl.re, (sa, ca, sb, cb)) {
                    return a * cs + b * ss;
                }
            }
            let den = w * w - kf * kf;
            let (cs, ss) = if den.norm() <= 1e-8 * kf * kf {
                resonant_pair(w, kf, mode.breakpoints()[p], len)
            } else {
                // Antiderivatives in t of cos(ωt)·sin(kz) and sin(ωt)·sin(kz).
                (
                    ((w * sl * sb + cl * (kf * cb)) - kf * ca) / den,
                    ((-w * cl * sb + sl * (kf * cb)) + w * sa) / den,
                )
            };
            a * cs + b * ss
        }
        LocalForm::Exp { up, down, kappa } => {
            let decay = trig.ends[p].0.re;
            let q = kappa * kappa + kf * kf;
            let rising = (kappa * sb - kf * cb) - decay * (kappa * sa - kf * ca);
            let falling = decay * (-kappa * sb - kf * cb) - (-kappa * sa - kf * ca);
            (up * rising + down * falling) / q
        }
    }
}

fn sine_trig(breaks: &[f64], k: usize) -> (Vec<f64>, Vec<f64>) {
    let kf = k as f64;
    breaks.iter().map(|&z| (kf * z).sin_cos()).unzip()
}

/// `⟨V, sin(k·)⟩`.
pub fn mode_sine_inner(mode: &EigenMode, k: usize) -> Complex64 {
    let trig = ModeTrig::new(mode);
    let (ks, kc) = sine_trig(mode.breakpoints(), k);
    sine_integral(mode, &trig, k, &ks, &kc).conj()
}

/// `G[j][k-1] = ⟨V_j, sin(k·)⟩` for the given modes and `k = 1..=cols`.
pub fn change_of_basis_rect(modes: &[EigenMode], cols: usize) -> Vec<Vec<Complex64>> {
    let trigs: Vec<ModeTrig> = modes.iter().map(ModeTrig::new).collect();
    let mut g = vec![vec![Complex64::new(0.0, 0.0); cols]; modes.len()];
    let Some(first) = modes.first() else {
        return g;
    };
    let breaks = first.breakpoints();
    for k in 1..=cols {
        let (ks, kc) = sine_trig(breaks, k);
        for (j, mode) in modes.iter().enumerate() {
            g[j][k - 1] = sine_integral(mode, &trigs[j], k, &ks, &kc).conj();
        }
    }
    g
}

/// Square change-of-basis matrix on the first `m` modes and sines.
pub fn change_of_basis(modes: &[EigenMode], m: usize) -> Vec<Vec<Complex64>> {
    change_of_basis_rect(&modes[..m.min(modes.len())], m)
}

/// `Σ_k b_k ⟨V, sin(k·)⟩` for each mode, skipping negligible `b_k`.
pub fn project_sine_series(modes: &[EigenMode], b: &[f64]) -> Vec<Complex64> {
    let Some(first) = modes.first() else {
        return Vec::new();
    };
    let breaks = first.breakpoints();
    let bmax = b.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let kept: Vec<usize> = (1..=b.len()).filter(|k| b[k - 1].abs() > 1e-15 * bmax).collect();
    let kf: Vec<f64> = kept.iter().map(|&k| k as f64).collect();
    let bk: Vec<f64> = kept.iter().map(|&k| b[k - 1]).collect();
    // sin and cos of k·z at every breakpoint, one contiguous row per breakpoint.
    let (ks, kc): (Vec<Vec<f64>>, Vec<Vec<f64>>) = breaks
        .iter()
        .map(|&z| kf.iter().map(|k| (k * z).sin_cos()).unzip())
        .unzip();
    let column = |rows: &[Vec<f64>], i: usize| -> Vec<f64> { rows.iter().map(|r| r[i]).collect() };

    modes
        .iter()
        .map(|mode| {
            let trig = ModeTrig::new(mode);
            let mut total = Complex64::new(0.0, 0.0);
            for p in 0..mode.n_pieces() {
                let w = mode.omegas[p];
                match mode.local[p] {
                    // Real frequency: the k-sum splits into two real sums
                    // over contiguous arrays. Near-resonant k are skipped here
                    // and added through the general path below.
                    LocalForm::Trig { a, b } if w.im == 0.0 => {
                        let (wr, cl, sl) = (w.re, trig.ends[p].0.re, trig.ends[p].1.re);
                        let w2 = wr * wr;
                        let (sa, ca, sb, cb) = (&ks[p], &kc[p], &ks[p + 1], &kc[p + 1]);
                        let (mut sc, mut ss) = (0.0, 0.0);
                        for i in 0..kf.len() {
                            let k = kf[i];
                            let den = w2 - k * k;
                            let inv = if den.abs() <= 1e-8 * k * k { 0.0 } else { bk[i] / den };
                            sc += inv * ((wr * sl * sb[i] + cl * k * cb[i]) - k * ca[i]);
                            ss += inv * ((-wr * cl * sb[i] + sl * k * cb[i]) + wr * sa[i]);
                        }
                        total += a.conj() * sc + b.conj() * ss;
                        for i in resonant(&kf, wr) {
                            let (s, c) = (column(&ks, i), column(&kc, i));
                            total += piece_sine_integral(mode, &trig, p, kf[i], &s, &c).conj() * bk[i];
                        }
                    }
                    _ => {
                        for i in 0..kf.len() {
                            let (s, c) = (column(&ks, i), column(&kc, i));
                            total += piece_sine_integral(mode, &trig, p, kf[i], &s, &c).conj() * bk[i];
                        }
                    }
                }
            }
            total
        })
        .collect()
}

/// Indices into the ascending `kf` whose `k` is within the resonance band
/// of the real frequency `w`.
fn resonant(kf: &[f64], w: f64) -> impl Iterator<Item = usize> + '_ {
    let w = w.abs();
    let from = kf.partition_point(|&k| k < w.floor());
    kf[from..]
        .iter()
        .take_while(move |&&k| k <= w.ceil())
        .enumerate()
        .filter(move |(_, &k)| (w * w - k * k).abs() <= 1e-8 * k * k)
        .map(move |(i, _)| from + i)
}
