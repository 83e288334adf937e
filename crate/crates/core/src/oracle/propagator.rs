use num_complex::Complex64;

use crate::expansion::propagator_factor;
use crate::linalg::SymEigen;

/// Dense `Q·diag(e^{i·sign·√d_k·r})·Qᵀ`, row-major.
pub fn spectral_propagator(eig: &SymEigen, r: f64, sign: f64) -> Vec<Complex64> {
    let n = eig.dim();
    let factors: Vec<Complex64> = eig
        .values
        .iter()
        .map(|&d| propagator_factor(d, r, sign))
        .collect();
    let mut out = vec![Complex64::new(0.0, 0.0); n * n];
    for (k, &fk) in factors.iter().enumerate() {
        let q = eig.vector(k);
        for i in 0..n {
            let qi = fk * q[i];
            let row = &mut out[i * n..(i + 1) * n];
            for (o, &qj) in row.iter_mut().zip(q) {
                *o += qi * qj;
            }
        }
    }
    out
}

/// `e^{i·sign·√A·r} x` without forming the matrix; `O(N²)`.
pub fn apply_propagator(eig: &SymEigen, x: &[Complex64], r: f64, sign: f64) -> Vec<Complex64> {
    let n = eig.dim();
    assert_eq!(x.len(), n);
    let mut out = vec![Complex64::new(0.0, 0.0); n];
    for k in 0..n {
        let q = eig.vector(k);
        let mut c = Complex64::new(0.0, 0.0);
        for (qi, xi) in q.iter().zip(x) {
            c += xi * qi;
        }
        let c = c * propagator_factor(eig.values[k], r, sign);
        if c.norm() == 0.0 {
            continue;
        }
        for (o, qi) in out.iter_mut().zip(q) {
            *o += c * qi;
        }
    }
    out
}
