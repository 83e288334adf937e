//! Decay of the first column of the change-of-basis matrix G (mode j
//! against sin z). Symmetric coefficients leave every other entry zero.
//!
//!     cargo run --release --example decay_study

use ewape::cli::{first_column, DECAY_FIRST_ROW};
use ewape::expansion::fit_decay;
use ewape::model::{presets, PiecewiseWavenumber, SolverConfig};

fn main() -> ewape::Result<()> {
    let cfg = SolverConfig::default();
    let n = 127;
    let cases = [
        ("alpha1", presets::alpha1()),
        ("alpha2", presets::alpha2()),
        ("alpha3", presets::alpha3()),
        ("constant 2", PiecewiseWavenumber::constant(2.0)?),
    ];
    for (name, pw) in cases {
        let col = first_column(&pw, n, &cfg)?;
        let fit = fit_decay(&col, DECAY_FIRST_ROW);
        let slope = fit.slope.map_or("undefined".into(), |s| format!("{s:.3}"));
        println!(
            "{name:<11} slope {slope:>9}  zeros {:>3}  alternating {}",
            fit.zero_rows.len(),
            fit.alternating_zeros
        );
        let head: Vec<String> = col.iter().take(8).map(|g| format!("{:.1e}", g.norm())).collect();
        println!("            |G_j1|, j = 1..8: {}", head.join(" "));
    }
    Ok(())
}
