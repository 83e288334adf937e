//! Finite-difference reference stack: the three-point matrix of `L`, its
//! symmetric eigendecomposition, the spectral propagator
//! `Q·diag(e^{i√d r})·Qᵀ`, fine-grid reference solutions and the nested-grid
//! error metric.

mod cache;
mod fd;
mod metric;
mod propagator;
mod reference;

use num_complex::Complex64;

pub use cache::DecompositionCache;
pub use fd::{fd_matrix, fd_matrix_with, grid_points, CoefficientSampling};
pub use metric::{grid_stride, relative_error, restrict};
pub use propagator::{apply_propagator, spectral_propagator};
pub use reference::{fd_eigen, reference_solve, ReferenceSolver, MAX_REFERENCE_N};

pub use crate::linalg::{dense_eig, dense_eigenvalues};

use crate::error::Result;
use crate::expansion::InitialCondition;
use crate::model::PiecewiseWavenumber;

/// The dense comparator: full eigendecomposition of the `N`-point
/// difference matrix applied to the sampled initial condition.
pub fn schur_solve(pw: &PiecewiseWavenumber, f: &InitialCondition, n: usize, r: f64, sign: f64) -> Result<GridSolution> {
    let eig = fd_matrix(pw, n).eigen()?;
    let samples = match f {
        InitialCondition::Samples { values } if values.len() == n => values.clone(),
        _ => f.sample(n),
    };
    let x: Vec<Complex64> = samples.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    Ok(GridSolution {
        n,
        values: apply_propagator(&eig, &x, r, sign),
        r,
    })
}

/// Complex values on `z_i = iπ/(N+1)`, `i = 1..=N`, at range `r`.
#[derive(Debug, Clone, PartialEq)]
pub struct GridSolution {
    pub n: usize,
    pub values: Vec<Complex64>,
    pub r: f64,
}

impl GridSolution {
    pub fn points(&self) -> Vec<f64> {
        grid_points(self.n)
    }
}
