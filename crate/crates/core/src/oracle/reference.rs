use num_complex::Complex64;

use super::cache::DecompositionCache;
use super::fd::{fd_matrix_with, CoefficientSampling};
use super::propagator::apply_propagator;
use super::GridSolution;
use crate::error::{Error, Result};
use crate::expansion::InitialCondition;
use crate::linalg::SymEigen;
use crate::model::PiecewiseWavenumber;

/// Largest reference grid accepted; its eigenvectors take about 0.5 GB.
pub const MAX_REFERENCE_N: usize = 8191;

/// Above this size eigenvectors come from inverse iteration instead of
/// accumulated QL rotations.
const INVERSE_ITERATION_FROM: usize = 1024;

/// Finite-difference eigendecomposition of `L`, full or cached.
pub fn fd_eigen(pw: &PiecewiseWavenumber, n: usize, sampling: CoefficientSampling) -> Result<SymEigen> {
    let t = fd_matrix_with(pw, n, sampling);
    if n >= INVERSE_ITERATION_FROM {
        t.eigen_inverse_iteration()
    } else {
        t.eigen()
    }
}

/// Exact propagator of the semi-discrete system on a fine grid.
#[derive(Debug, Clone)]
pub struct ReferenceSolver {
    n_ref: usize,
    eig: SymEigen,
}

impl ReferenceSolver {
    pub fn new(pw: &PiecewiseWavenumber, n_ref: usize) -> Result<Self> {
        Self::build(pw, n_ref, CoefficientSampling::default(), None)
    }

    pub fn with_cache(pw: &PiecewiseWavenumber, n_ref: usize, cache: &DecompositionCache) -> Result<Self> {
        Self::build(pw, n_ref, CoefficientSampling::default(), Some(cache))
    }

    pub fn build(
        pw: &PiecewiseWavenumber,
        n_ref: usize,
        sampling: CoefficientSampling,
        cache: Option<&DecompositionCache>,
    ) -> Result<Self> {
        if n_ref > MAX_REFERENCE_N {
            return Err(Error::ReferenceTooLarge {
                n_ref,
                limit: MAX_REFERENCE_N,
            });
        }
        if n_ref < 3 {
            return Err(Error::InvalidConfig("reference grid needs N_ref >= 3".into()));
        }
        let eig = match cache.map(|c| c.load(pw, n_ref, sampling)).transpose()?.flatten() {
            Some(eig) => eig,
            None => {
                let eig = fd_eigen(pw, n_ref, sampling)?;
                if let Some(c) = cache {
                    c.store(pw, sampling, &eig)?;
                }
                eig
            }
        };
        Ok(Self { n_ref, eig })
    }

    pub fn n_ref(&self) -> usize {
        self.n_ref
    }

    pub fn eigen(&self) -> &SymEigen {
        &self.eig
    }

    pub fn solve(&self, f: &InitialCondition, r: f64, sign: f64) -> GridSolution {
        self.solve_samples(&f.sample(self.n_ref), r, sign)
    }

    pub fn solve_samples(&self, samples: &[f64], r: f64, sign: f64) -> GridSolution {
        let x: Vec<Complex64> = samples.iter().map(|&v| Complex64::new(v, 0.0)).collect();
        GridSolution {
            n: self.n_ref,
            values: apply_propagator(&self.eig, &x, r, sign),
            r,
        }
    }
}

/// One-shot reference solution on an `N_ref` grid.
pub fn reference_solve(pw: &PiecewiseWavenumber, f: &InitialCondition, n_ref: usize, r: f64) -> Result<GridSolution> {
    Ok(ReferenceSolver::new(pw, n_ref)?.solve(f, r, 1.0))
}
