//! Piecewise constant wavenumber on `[0, π]` and solver settings.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `α(z)` taking the value `alphas[i]` on `[πρ_i, πρ_{i+1})`, with implicit
/// `ρ_0 = 0` and `ρ_n = 1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawWavenumber", into = "RawWavenumber")]
pub struct PiecewiseWavenumber {
    alphas: Vec<f64>,
    rhos: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
struct RawWavenumber {
    alphas: Vec<f64>,
    #[serde(default)]
    rhos: Vec<f64>,
}

impl TryFrom<RawWavenumber> for PiecewiseWavenumber {
    type Error = Error;
    fn try_from(raw: RawWavenumber) -> Result<Self> {
        PiecewiseWavenumber::new(raw.alphas, raw.rhos)
    }
}

impl From<PiecewiseWavenumber> for RawWavenumber {
    fn from(pw: PiecewiseWavenumber) -> Self {
        RawWavenumber {
            alphas: pw.alphas,
            rhos: pw.rhos,
        }
    }
}

/// Checks the coefficient invariants. Indices in errors are 1-based.
pub fn validate(alphas: &[f64], rhos: &[f64]) -> Result<()> {
    if alphas.is_empty() {
        return Err(Error::NoPieces);
    }
    if let Some(i) = alphas.iter().position(|a| !(a.is_finite() && *a > 0.0)) {
        return Err(Error::NonPositiveAlpha(i + 1));
    }
    if rhos.len() != alphas.len() - 1 {
        return Err(Error::InterfaceCount {
            pieces: alphas.len(),
            expected: alphas.len() - 1,
            got: rhos.len(),
        });
    }
    for (k, &rho) in rhos.iter().enumerate() {
        if !(rho > 0.0 && rho < 1.0) {
            return Err(Error::InterfaceOutOfRange(k + 1));
        }
        if k > 0 && rho <= rhos[k - 1] {
            return Err(Error::NonMonotoneInterfaces(k + 1));
        }
    }
    Ok(())
}

impl PiecewiseWavenumber {
    pub fn new(alphas: Vec<f64>, rhos: Vec<f64>) -> Result<Self> {
        validate(&alphas, &rhos)?;
        Ok(Self { alphas, rhos })
    }

    pub fn constant(alpha: f64) -> Result<Self> {
        Self::new(vec![alpha], Vec::new())
    }

    pub fn validate(&self) -> Result<()> {
        validate(&self.alphas, &self.rhos)
    }

    pub fn alphas(&self) -> &[f64] {
        &self.alphas
    }

    pub fn rhos(&self) -> &[f64] {
        &self.rhos
    }

    pub fn n_pieces(&self) -> usize {
        self.alphas.len()
    }

    pub fn alpha_sq(&self, piece: usize) -> f64 {
        self.alphas[piece] * self.alphas[piece]
    }

    /// Breakpoints `0 = z_0 < z_1 < … < z_n = π`.
    pub fn breakpoints(&self) -> Vec<f64> {
        let mut z = Vec::with_capacity(self.alphas.len() + 1);
        z.push(0.0);
        z.extend(self.rhos.iter().map(|r| PI * r));
        z.push(PI);
        z
    }

    /// Endpoints of piece `i` (0-based).
    pub fn piece_bounds(&self, i: usize) -> (f64, f64) {
        let a = if i == 0 { 0.0 } else { PI * self.rhos[i - 1] };
        let b = if i + 1 == self.alphas.len() {
            PI
        } else {
            PI * self.rhos[i]
        };
        (a, b)
    }

    /// 0-based piece containing `z`; interfaces belong to the piece on their right.
    pub fn piece_index(&self, z: f64) -> Result<usize> {
        if !(0.0..=PI).contains(&z) {
            return Err(Error::DomainError(z));
        }
        Ok(self.rhos.iter().take_while(|&&r| PI * r <= z).count())
    }

    pub fn alpha_at(&self, z: f64) -> Result<f64> {
        Ok(self.alphas[self.piece_index(z)?])
    }

    pub fn alpha_min(&self) -> f64 {
        self.alphas.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn alpha_max(&self) -> f64 {
        self.alphas.iter().copied().fold(0.0, f64::max)
    }
}

/// How the expansion length is chosen from the modal tail.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum TruncationPolicy {
    /// Stop once every remaining term is below the tolerance.
    #[default]
    LargestTerm,
    /// Stop once the sum of all remaining terms is below the tolerance.
    TailSum,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SolverConfig {
    pub secant_tol: f64,
    pub secant_max_iter: usize,
    pub secant_perturbation: f64,
    pub cutoff_threshold: f64,
    pub truncation_tol: f64,
    pub truncation_policy: TruncationPolicy,
    /// `+1` or `-1`, the sign in `±i√L`.
    pub propagation_sign: i8,
    pub quadrature_panels: usize,
    pub m_max: usize,
    /// Sine terms used when projecting an analytic initial condition.
    pub sine_terms: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            secant_tol: 1e-12,
            secant_max_iter: 60,
            secant_perturbation: 1e-3,
            cutoff_threshold: 1e-2,
            truncation_tol: 5e-7,
            truncation_policy: TruncationPolicy::LargestTerm,
            propagation_sign: 1,
            quadrature_panels: 2048,
            m_max: 4096,
            sine_terms: 2048,
        }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(Error::InvalidConfig(msg.to_string()));
        if !(self.secant_tol > 0.0) {
            return bad("secant_tol must be positive");
        }
        if self.secant_max_iter < 2 {
            return bad("secant_max_iter must be at least 2");
        }
        if !(self.secant_perturbation > 0.0) {
            return bad("secant_perturbation must be positive");
        }
        if !(self.cutoff_threshold > 0.0 && self.cutoff_threshold < 1.0) {
            return bad("cutoff_threshold must lie in (0, 1)");
        }
        if !(self.truncation_tol > 0.0) {
            return bad("truncation_tol must be positive");
        }
        if self.propagation_sign != 1 && self.propagation_sign != -1 {
            return bad("propagation_sign must be +1 or -1");
        }
        if self.quadrature_panels < 8 {
            return bad("quadrature_panels must be at least 8");
        }
        if self.m_max == 0 || self.sine_terms == 0 {
            return bad("m_max and sine_terms must be positive");
        }
        Ok(())
    }

    pub fn sign(&self) -> f64 {
        f64::from(self.propagation_sign)
    }
}

/// Coefficients used throughout the test problems.
pub mod presets {
    use super::PiecewiseWavenumber;

    fn build(alphas: &[f64], rhos: &[f64]) -> PiecewiseWavenumber {
        PiecewiseWavenumber::new(alphas.to_vec(), rhos.to_vec()).expect("preset is valid")
    }

    /// `[2, 1, 2]` with interfaces at thirds.
    pub fn alpha1() -> PiecewiseWavenumber {
        build(&[2.0, 1.0, 2.0], &[1.0 / 3.0, 2.0 / 3.0])
    }

    /// `[1, 2, 3]` with interfaces at `π/4` and `3π/4`.
    pub fn alpha2() -> PiecewiseWavenumber {
        build(&[1.0, 2.0, 3.0], &[0.25, 0.75])
    }

    /// `[1, 3, 5]` on the same interfaces as [`alpha2`]; a steeper monotone
    /// profile used for the change-of-basis decay study.
    pub fn alpha2_steep() -> PiecewiseWavenumber {
        build(&[1.0, 3.0, 5.0], &[0.25, 0.75])
    }

    /// `[2, 1, 3]` with interfaces at `π/4` and `π/2`.
    pub fn alpha3() -> PiecewiseWavenumber {
        build(&[2.0, 1.0, 3.0], &[0.25, 0.5])
    }

    pub fn by_name(name: &str) -> Option<PiecewiseWavenumber> {
        match name {
            "alpha1" => Some(alpha1()),
            "alpha2" => Some(alpha2()),
            "alpha2_steep" => Some(alpha2_steep()),
            "alpha3" => Some(alpha3()),
            _ => None,
        }
    }
}
