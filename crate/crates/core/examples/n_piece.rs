//! Coefficients with more than three pieces. Splitting a constant region
//! must not change the spectrum; a genuinely five-piece coefficient is
//! checked against the finite-difference eigenvalues.
//!
//!     cargo run --release --example n_piece

use ewape::eigensolver::compute_spectrum;
use ewape::model::{presets, PiecewiseWavenumber, SolverConfig};
use ewape::oracle::fd_matrix;

fn main() -> ewape::Result<()> {
    let cfg = SolverConfig::default();
    let m = 40;

    let three = presets::alpha1();
    let five = PiecewiseWavenumber::new(vec![2.0, 1.0, 1.0, 1.0, 2.0], vec![1.0 / 3.0, 4.0 / 9.0, 5.0 / 9.0, 2.0 / 3.0])?;
    let a = compute_spectrum(&three, m, &cfg)?;
    let b = compute_spectrum(&five, m, &cfg)?;
    let diff = a.modes.iter().zip(&b.modes).map(|(p, q)| (p.lambda - q.lambda).abs()).fold(0.0, f64::max);
    println!("split middle piece of alpha1: max |lambda difference| over {m} modes = {diff:.1e}");

    // Interfaces on multiples of π/64 sit on grid points of every N + 1 = 2^k
    // grid, which keeps the difference error a clean multiple of h².
    let pw = PiecewiseWavenumber::new(
        vec![1.5, 3.0, 0.5, 2.5, 1.0],
        vec![10.0 / 64.0, 26.0 / 64.0, 35.0 / 64.0, 51.0 / 64.0],
    )?;
    let exact = compute_spectrum(&pw, 10, &cfg)?;
    println!("\nfive pieces {:?}: error of FD eigenvalues", pw.alphas());
    println!("{:>3} {:>20} {:>10} {:>10} {:>10} {:>6}", "j", "lambda", "N=511", "N=1023", "N=2047", "ratio");
    let fd: Vec<Vec<f64>> = [511, 1023, 2047]
        .iter()
        .map(|&n| fd_matrix(&pw, n).eigenvalues())
        .collect::<ewape::Result<_>>()?;
    for (k, mode) in exact.modes.iter().enumerate() {
        let e: Vec<f64> = fd.iter().map(|v| (v[k] - mode.lambda).abs()).collect();
        println!(
            "{:>3} {:>20.12e} {:>10.2e} {:>10.2e} {:>10.2e} {:>6.2}",
            mode.index,
            mode.lambda,
            e[0],
            e[1],
            e[2],
            e[1] / e[2]
        );
    }
    Ok(())
}
