//! Composite five-point Gauss–Legendre rule.

use num_complex::Complex64;

const NODES: [f64; 5] = [
    -0.906_179_845_938_664,
    -0.538_469_310_105_683_1,
    0.0,
    0.538_469_310_105_683_1,
    0.906_179_845_938_664,
];
const WEIGHTS: [f64; 5] = [
    0.236_926_885_056_189_1,
    0.478_628_670_499_366_5,
    0.568_888_888_888_888_9,
    0.478_628_670_499_366_5,
    0.236_926_885_056_189_1,
];

/// `∫_a^b f` with `panels` equal panels.
pub fn integrate(f: impl Fn(f64) -> Complex64, a: f64, b: f64, panels: usize) -> Complex64 {
    let h = (b - a) / panels as f64;
    let mut total = Complex64::new(0.0, 0.0);
    for p in 0..panels {
        let mid = a + (p as f64 + 0.5) * h;
        for (x, w) in NODES.iter().zip(WEIGHTS) {
            total += f(mid + 0.5 * h * x) * w;
        }
    }
    total * (0.5 * h)
}

/// `∫` over consecutive segments of `breaks`, `panels` per segment. The
/// integrand may jump at any breakpoint.
pub fn integrate_segments(f: impl Fn(f64) -> Complex64, breaks: &[f64], panels: usize) -> Complex64 {
    breaks
        .windows(2)
        .filter(|w| w[1] > w[0])
        .map(|w| integrate(&f, w[0], w[1], panels))
        .sum()
}

/// Real-valued convenience wrapper around [`integrate_segments`].
pub fn integrate_real(f: impl Fn(f64) -> f64, breaks: &[f64], panels: usize) -> f64 {
    integrate_segments(|z| Complex64::new(f(z), 0.0), breaks, panels).re
}
