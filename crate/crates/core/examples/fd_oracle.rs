//! The finite-difference oracle on its own: eigenvalues of the three-point
//! matrix converge to the computed spectrum at second order, and the dense
//! propagator tends to the expansion as the grid is refined.
//!
//!     cargo run --release --example fd_oracle

use ewape::eigensolver::compute_spectrum;
use ewape::expansion::{solve_on_grid, InitialCondition};
use ewape::model::{presets, SolverConfig};
use ewape::oracle::{fd_matrix, relative_error, restrict, schur_solve};

fn main() -> ewape::Result<()> {
    let cfg = SolverConfig::default();
    for name in ["alpha1", "alpha2", "alpha3"] {
        let pw = presets::by_name(name).unwrap();
        let exact = compute_spectrum(&pw, 10, &cfg)?;
        let errs: Vec<Vec<f64>> = [511usize, 1023, 2047]
            .iter()
            .map(|&n| {
                let d = fd_matrix(&pw, n).eigenvalues()?;
                Ok(exact.modes.iter().enumerate().map(|(k, v)| (d[k] - v.lambda).abs()).collect())
            })
            .collect::<ewape::Result<_>>()?;
        let ratios: Vec<String> = (0..10)
            .map(|k| format!("{:.2}", ((errs[0][k] / errs[1][k]) + (errs[1][k] / errs[2][k])) / 2.0))
            .collect();
        println!("{name}: error ratio per grid doubling, j = 1..10: {}", ratios.join(" "));
    }

    let pw = presets::alpha3();
    let ic = InitialCondition::sine(2)?;
    let fine = solve_on_grid(&pw, &ic, 2047, 1.0, &cfg, None)?.solution;
    println!("\nalpha3, sin(2z), r = 1: difference propagator vs expansion");
    for n in [127, 255, 511, 1023] {
        let fd = schur_solve(&pw, &ic, n, 1.0, cfg.sign())?;
        let on_grid = restrict(&fine, n)?;
        println!("  N = {n:>4}: relative difference {:.2e}", relative_error(&fd, &on_grid)?);
    }
    Ok(())
}
