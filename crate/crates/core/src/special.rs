//! Small complex helpers shared by the eigensolver and the expansion.

use num_complex::Complex64;

/// Principal square root with a deterministic branch on the real axis:
/// a negative real radicand maps to `+i√|x|` regardless of the sign of zero
/// in its imaginary part.
pub(crate) fn principal_sqrt(x: Complex64) -> Complex64 {
    if x.im == 0.0 {
        if x.re >= 0.0 {
            Complex64::new(x.re.sqrt(), 0.0)
        } else {
            Complex64::new(0.0, (-x.re).sqrt())
        }
    } else {
        x.sqrt()
    }
}

/// `sin(w·h) / w`, continuous through `w = 0` where it equals `h`.
pub(crate) fn sin_over(w: Complex64, h: f64) -> Complex64 {
    let x = w * h;
    if x.norm() < 1e-4 {
        let x2 = x * x;
        Complex64::from(h) * (Complex64::from(1.0) - x2 / 6.0 + x2 * x2 / 120.0)
    } else {
        x.sin() / w
    }
}
