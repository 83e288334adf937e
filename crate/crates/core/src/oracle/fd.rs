use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::linalg::SymTridiagonal;
use crate::model::PiecewiseWavenumber;

/// How `α²` enters the diagonal of the difference matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum CoefficientSampling {
    /// `α(z_i)²`. An interface falling between grid points shifts by up to
    /// `h`, so eigenvalue errors shrink only like `h` and erratically.
    Pointwise,
    /// Mean of `α²` over `[z_i − h/2, z_i + h/2]`; second-order accurate for
    /// piecewise constant coefficients.
    #[default]
    CellAverage,
}

impl CoefficientSampling {
    pub(crate) fn code(self) -> u8 {
        match self {
            CoefficientSampling::Pointwise => 0,
            CoefficientSampling::CellAverage => 1,
        }
    }

    pub(crate) fn from_code(code: u8) -> Option<Self> {
        match code {
            0 => Some(CoefficientSampling::Pointwise),
            1 => Some(CoefficientSampling::CellAverage),
            _ => None,
        }
    }
}

/// Interior grid `z_i = iπ/(N+1)`, `i = 1..=N`.
pub fn grid_points(n: usize) -> Vec<f64> {
    let h = PI / (n + 1) as f64;
    (1..=n).map(|i| i as f64 * h).collect()
}

fn cell_average(pw: &PiecewiseWavenumber, lo: f64, hi: f64) -> f64 {
    let mut total = 0.0;
    for p in 0..pw.n_pieces() {
        let (a, b) = pw.piece_bounds(p);
        let overlap = hi.min(b) - lo.max(a);
        if overlap > 0.0 {
            total += pw.alpha_sq(p) * overlap;
        }
    }
    total / (hi - lo)
}

/// Three-point discretization of `d²/dz² + α²` with Dirichlet ends.
pub fn fd_matrix_with(pw: &PiecewiseWavenumber, n: usize, sampling: CoefficientSampling) -> SymTridiagonal {
    let h = PI / (n + 1) as f64;
    let inv_h2 = 1.0 / (h * h);
    let diag = grid_points(n)
        .into_iter()
        .map(|z| {
            let a2 = match sampling {
                CoefficientSampling::Pointwise => {
                    let a = pw.alpha_at(z).expect("grid point inside the domain");
                    a * a
                }
                CoefficientSampling::CellAverage => cell_average(pw, z - 0.5 * h, z + 0.5 * h),
            };
            -2.0 * inv_h2 + a2
        })
        .collect();
    SymTridiagonal::new(diag, vec![inv_h2; n.saturating_sub(1)])
}

/// [`fd_matrix_with`] using cell-averaged coefficients.
pub fn fd_matrix(pw: &PiecewiseWavenumber, n: usize) -> SymTridiagonal {
    fd_matrix_with(pw, n, CoefficientSampling::default())
}
