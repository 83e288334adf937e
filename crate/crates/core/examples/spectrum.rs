//! Eigenvalues of L = d²/dz² + α² for the three standard coefficients, with
//! the per-mode solver diagnostics.
//!
//!     cargo run --release --example spectrum [m]

use ewape::eigensolver::{compute_spectrum, SeedSource};
use ewape::model::{presets, SolverConfig};

fn main() -> ewape::Result<()> {
    let m: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(100);
    let cfg = SolverConfig::default();

    for name in ["alpha1", "alpha2", "alpha3"] {
        let pw = presets::by_name(name).unwrap();
        let start = std::time::Instant::now();
        let res = compute_spectrum(&pw, m, &cfg)?;
        let ms = start.elapsed().as_secs_f64() * 1e3;

        let positive = res.modes.iter().filter(|v| v.lambda > 0.0).count();
        let from_matrix = res
            .diagnostics
            .iter()
            .filter(|d| d.seed_source == SeedSource::RestrictedMatrix)
            .count();
        let worst = res.diagnostics.iter().map(|d| d.det_residual).fold(0.0, f64::max);
        let iters: usize = res.diagnostics.iter().map(|d| d.secant_iters).sum();

        println!("{name}: alphas {:?}, rhos {:?}", pw.alphas(), pw.rhos());
        println!(
            "  {m} eigenpairs in {ms:.1} ms, {positive} positive, cutoff J = {}, {from_matrix} matrix seeds",
            res.cutoff_j
        );
        println!("  mean secant iterations {:.2}, worst residual {worst:.1e}", iters as f64 / m as f64);
        for mode in res.modes.iter().take(6) {
            println!("  lambda_{:<3} = {:>22.15e}", mode.index, mode.lambda);
        }
        let last = &res.modes[m - 1];
        println!("  lambda_{:<3} = {:>22.15e}\n", last.index, last.lambda);
    }
    Ok(())
}
