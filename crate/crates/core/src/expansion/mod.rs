//! Truncated eigenfunction expansion
//! `u(z, r) = Σ_j f_j V_j(z) e^{±i√λ_j r}` and the change-of-basis matrix.

mod decay;
mod initial;
mod inner;
pub mod quadrature;

use std::f64::consts::PI;

use num_complex::Complex64;

pub use decay::{fit_decay, DecayFit};
pub use initial::{dst_coeffs, sine_coeffs, InitialCondition};
pub use inner::{change_of_basis, change_of_basis_rect, mode_norm_sq, mode_sine_inner, project_sine_series};

use crate::eigensolver::{compute_spectrum, EigenMode, LocalForm};
use crate::error::Result;
use crate::model::{PiecewiseWavenumber, SolverConfig, TruncationPolicy};
use crate::oracle::{grid_points, GridSolution};

/// Range propagation factor for one eigenvalue. Oscillatory for `λ ≥ 0`;
/// for `λ < 0` the factor is `e^{−√|λ| r}` whatever the sign, so evanescent
/// modes always decay.
pub fn propagator_factor(lambda: f64, r: f64, sign: f64) -> Complex64 {
    if lambda >= 0.0 {
        Complex64::from_polar(1.0, sign * lambda.sqrt() * r)
    } else {
        Complex64::new((-(-lambda).sqrt() * r).exp(), 0.0)
    }
}

#[derive(Debug, Clone)]
pub struct ModalExpansion {
    pub modes: Vec<EigenMode>,
    pub fj: Vec<Complex64>,
    pub sign: f64,
}

impl ModalExpansion {
    pub fn new(modes: Vec<EigenMode>, fj: Vec<Complex64>, sign: f64) -> Self {
        assert_eq!(modes.len(), fj.len());
        Self { modes, fj, sign }
    }

    pub fn len(&self) -> usize {
        self.modes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.modes.is_empty()
    }

    /// The first `m` terms.
    pub fn truncated(&self, m: usize) -> ModalExpansion {
        let m = m.min(self.len());
        ModalExpansion {
            modes: self.modes[..m].to_vec(),
            fj: self.fj[..m].to_vec(),
            sign: self.sign,
        }
    }

    pub fn evaluate(&self, zs: &[f64], r: f64) -> Vec<Complex64> {
        evaluate_solution(self, zs, r)
    }

    /// Same values as `evaluate(&grid_points(n), r)`, stepping each piece
    /// with a rotation instead of calling trig functions per point.
    pub fn evaluate_grid(&self, n: usize, r: f64) -> Vec<Complex64> {
        evaluate_on_grid(self, n, r)
    }

    /// Terms needed at range `r` under the given policy and tolerance.
    pub fn terms_needed(&self, r: f64, tol: f64, policy: TruncationPolicy) -> usize {
        truncate_with(&self.modes, &self.fj, r, tol, policy)
    }
}

/// `f_j = ⟨V_j, f⟩ / ⟨V_j, V_j⟩` through the sine series of `f`.
///
/// Grid samples use their `N` discrete sine coefficients, a single sine uses
/// itself, and a characteristic function uses `cfg.sine_terms` terms of its
/// Fourier sine series.
pub fn project_initial(modes: &[EigenMode], f: &InitialCondition, cfg: &SolverConfig) -> Vec<Complex64> {
    let terms = f.exact_sine_terms().unwrap_or(cfg.sine_terms);
    let b = sine_coeffs(f, terms);
    project_sine_series(modes, &b)
        .into_iter()
        .zip(modes)
        .map(|(v, m)| v / m.norm_sq)
        .collect()
}

/// Same coefficients by direct composite quadrature of `⟨V_j, f⟩`, with
/// panel breaks at interfaces and at discontinuities of `f`.
pub fn project_initial_quadrature(modes: &[EigenMode], f: &InitialCondition, cfg: &SolverConfig) -> Vec<Complex64> {
    let Some(first) = modes.first() else {
        return Vec::new();
    };
    let mut breaks = first.breakpoints().to_vec();
    breaks.extend(f.breakpoints());
    breaks.sort_by(f64::total_cmp);
    breaks.dedup();
    let sample_coeffs = match f {
        InitialCondition::Samples { values } => Some(dst_coeffs(values)),
        _ => None,
    };
    let eval = |z: f64| match &sample_coeffs {
        Some(c) => c
            .iter()
            .enumerate()
            .map(|(k, ck)| ck * ((k + 1) as f64 * z).sin())
            .sum(),
        None => f.eval(z),
    };
    // Characteristic values are taken from the segment interior so the
    // closed endpoints never leak into a neighbouring segment.
    let values_on = |a: f64, b: f64| {
        let inside = eval(0.5 * (a + b));
        move |z: f64| match f {
            InitialCondition::Characteristic { .. } => inside,
            _ => eval(z),
        }
    };
    modes
        .iter()
        .map(|mode| {
            let total: Complex64 = breaks
                .windows(2)
                .filter(|w| w[1] > w[0])
                .map(|w| {
                    let fv = values_on(w[0], w[1]);
                    quadrature::integrate(|z| mode.eval(z).conj() * fv(z), w[0], w[1], cfg.quadrature_panels)
                })
                .sum();
            total / mode.norm_sq
        })
        .collect()
}

/// `Σ_j f_j V_j(z) e^{i·sign·√λ_j r}` at every `z`.
fn range_weights(exp: &ModalExpansion, r: f64) -> Vec<Complex64> {
    exp.modes
        .iter()
        .zip(&exp.fj)
        .map(|(m, f)| f * propagator_factor(m.lambda, r, exp.sign))
        .collect()
}

pub fn evaluate_solution(exp: &ModalExpansion, zs: &[f64], r: f64) -> Vec<Complex64> {
    let weights = range_weights(exp, r);
    let Some(first) = exp.modes.first() else {
        return vec![Complex64::new(0.0, 0.0); zs.len()];
    };
    let pieces: Vec<usize> = zs.iter().map(|&z| first.piece_of(z)).collect();
    let mut out = vec![Complex64::new(0.0, 0.0); zs.len()];
    for (m, w) in exp.modes.iter().zip(&weights).filter(|(_, w)| w.norm() != 0.0) {
        for ((u, &z), &p) in out.iter_mut().zip(zs).zip(&pieces) {
            *u += w * m.eval_piece(p, z);
        }
    }
    out
}

/// Points between exact restarts of the rotation recurrence.
const ROTATION_RESTART: usize = 64;

fn evaluate_on_grid(exp: &ModalExpansion, n: usize, r: f64) -> Vec<Complex64> {
    let zs = grid_points(n);
    let mut out = vec![Complex64::new(0.0, 0.0); n];
    let Some(first) = exp.modes.first() else {
        return out;
    };
    let h = PI / (n + 1) as f64;
    // Contiguous runs of grid indices per piece.
    let mut runs = vec![0..0; first.n_pieces()];
    let mut i = 0;
    for (p, run) in runs.iter_mut().enumerate() {
        let start = i;
        while i < n && first.piece_of(zs[i]) == p {
            i += 1;
        }
        *run = start..i;
    }

    let weights = range_weights(exp, r);
    for (m, wgt) in exp.modes.iter().zip(&weights).filter(|(_, w)| w.norm() != 0.0) {
        for (p, run) in runs.iter().enumerate() {
            let za = m.breakpoints()[p];
            let w = m.omegas[p];
            match m.local[p] {
                LocalForm::Trig { a, b } if w.im == 0.0 => {
                    let (wa, wb) = (wgt * a, wgt * b);
                    let (sh, ch) = (w.re * h).sin_cos();
                    let (mut s, mut c) = (0.0, 0.0);
                    for (step, idx) in run.clone().enumerate() {
                        if step % ROTATION_RESTART == 0 {
                            (s, c) = (w.re * (zs[idx] - za)).sin_cos();
                        } else {
                            (s, c) = (s * ch + c * sh, c * ch - s * sh);
                        }
                        out[idx] += wa * c + wb * s;
                    }
                }
                _ => {
                    for idx in run.clone() {
                        out[idx] += wgt * m.eval_piece(p, zs[idx]);
                    }
                }
            }
        }
    }
    out
}

/// Output of [`solve_on_grid`].
#[derive(Debug, Clone)]
pub struct GridExpansion {
    pub solution: GridSolution,
    /// Expansion terms actually summed.
    pub terms: usize,
    /// The full projected expansion before truncation.
    pub expansion: ModalExpansion,
}

/// Samples `f` on the `N`-point grid, projects the samples onto the modes
/// and evaluates the truncated expansion on the same grid at range `r`.
///
/// Without an explicit `terms`, `min(m_max, N + 1)` modes are computed and
/// the configured truncation policy picks how many are summed.
pub fn solve_on_grid(
    pw: &PiecewiseWavenumber,
    f: &InitialCondition,
    n: usize,
    r: f64,
    cfg: &SolverConfig,
    terms: Option<usize>,
) -> Result<GridExpansion> {
    cfg.validate()?;
    let samples = match f {
        InitialCondition::Samples { values } if values.len() == n => f.clone(),
        _ => InitialCondition::Samples { values: f.sample(n) },
    };
    let m = terms.unwrap_or_else(|| cfg.m_max.min(n + 1)).max(1);
    let modes = compute_spectrum(pw, m, cfg)?.modes;
    let fj = project_initial(&modes, &samples, cfg);
    let expansion = ModalExpansion::new(modes, fj, cfg.sign());
    let used = match terms {
        Some(t) => t.min(expansion.len()),
        None => expansion.terms_needed(r, cfg.truncation_tol, cfg.truncation_policy),
    };
    let values = expansion.truncated(used).evaluate_grid(n, r);
    Ok(GridExpansion {
        solution: GridSolution { n, values, r },
        terms: used,
        expansion,
    })
}

/// Tail sum criterion: smallest `m` with
/// `Σ_{j>m} |f_j| ‖V_j‖_∞ |e^{i√λ_j r}| ≤ tol`, at least 1.
pub fn truncate(modes: &[EigenMode], fj: &[Complex64], r_f: f64, tol: f64) -> usize {
    truncate_with(modes, fj, r_f, tol, TruncationPolicy::TailSum)
}

/// Smallest `m ≥ 1` whose discarded tail passes `policy` at range `r`.
pub fn truncate_with(modes: &[EigenMode], fj: &[Complex64], r: f64, tol: f64, policy: TruncationPolicy) -> usize {
    let terms: Vec<f64> = modes
        .iter()
        .zip(fj)
        .map(|(m, f)| f.norm() * m.sup_norm() * propagator_factor(m.lambda, r, 1.0).norm())
        .collect();
    let mut tail = 0.0f64;
    let mut m = terms.len();
    for (idx, &t) in terms.iter().enumerate().rev() {
        tail = match policy {
            TruncationPolicy::TailSum => tail + t,
            TruncationPolicy::LargestTerm => tail.max(t),
        };
        if tail > tol {
            break;
        }
        m = idx;
    }
    m.max(1)
}
