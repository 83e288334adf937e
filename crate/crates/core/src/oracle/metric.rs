use super::GridSolution;
use crate::error::{Error, Result};

/// Stride of the nested-grid map `m(i) = ((N_ref+1)/(N+1))·i`.
pub fn grid_stride(n: usize, n_ref: usize) -> Result<usize> {
    if n == 0 || (n_ref + 1) % (n + 1) != 0 {
        return Err(Error::IncompatibleGrids { n, n_ref });
    }
    Ok((n_ref + 1) / (n + 1))
}

/// The reference values at the points of the coarse grid.
pub fn restrict(reference: &GridSolution, n: usize) -> Result<GridSolution> {
    let stride = grid_stride(n, reference.n)?;
    let values = (1..=n).map(|i| reference.values[stride * i - 1]).collect();
    Ok(GridSolution {
        n,
        values,
        r: reference.r,
    })
}

/// `max_i |u_ref(m(i)) − ũ_i| / max_i |u_ref(m(i))|`.
pub fn relative_error(candidate: &GridSolution, reference: &GridSolution) -> Result<f64> {
    let restricted = restrict(reference, candidate.n)?;
    let mut diff = 0.0f64;
    let mut scale = 0.0f64;
    for (c, r) in candidate.values.iter().zip(&restricted.values) {
        diff = diff.max((c - r).norm());
        scale = scale.max(r.norm());
    }
    Ok(diff / scale)
}
