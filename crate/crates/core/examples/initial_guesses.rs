//! How the secant iterations are seeded: the sine-approximation error picks a
//! cutoff J, the J×J Galerkin matrix seeds the low modes and Rayleigh
//! quotients of sin(jz) seed the rest.
//!
//!     cargo run --release --example initial_guesses

use ewape::eigensolver::{
    compute_spectrum, cutoff_index, rayleigh_guess, restricted_seeds, sine_approx_error,
};
use ewape::model::{presets, SolverConfig};

fn main() -> ewape::Result<()> {
    let cfg = SolverConfig::default();
    let pw = presets::alpha3();
    let m = 30;

    let j_cut = cutoff_index(&pw, m, cfg.cutoff_threshold);
    println!("alpha3, threshold {}: cutoff J = {j_cut}", cfg.cutoff_threshold);
    let matrix = restricted_seeds(&pw, j_cut)?;
    let exact = compute_spectrum(&pw, m, &cfg)?;

    println!(
        "{:>3} {:>10} {:>12} {:>12} {:>12} {:>10}",
        "j", "sine err", "rayleigh", "matrix", "converged", "seed err"
    );
    for (j, mode) in (1..=m).zip(&exact.modes) {
        let ray = rayleigh_guess(&pw, j);
        let mat = matrix.get(j - 1).copied();
        let seed = mat.unwrap_or(ray);
        println!(
            "{j:>3} {:>10.2e} {ray:>12.5} {:>12} {:>12.5} {:>10.2e}",
            sine_approx_error(&pw, j),
            mat.map_or("-".to_string(), |v| format!("{v:.5}")),
            mode.lambda,
            (seed - mode.lambda).abs()
        );
    }
    Ok(())
}
