//! One propagation problem solved two ways: the truncated eigenfunction
//! expansion and the dense spectral propagator of the difference matrix,
//! both checked against a fine-grid reference.
//!
//!     cargo run --release --example solve

use ewape::expansion::{solve_on_grid, InitialCondition};
use ewape::model::{presets, SolverConfig};
use ewape::oracle::{relative_error, schur_solve, ReferenceSolver};

fn main() -> ewape::Result<()> {
    let pw = presets::alpha2();
    let cfg = SolverConfig::default();
    let n = 255;
    let n_ref = 4095;
    let reference = ReferenceSolver::new(&pw, n_ref)?;

    for ic in [InitialCondition::sine(2)?, InitialCondition::default_characteristic()] {
        println!("{ic:?}");
        for r in [0.01, 0.1, 1.0] {
            let t = std::time::Instant::now();
            let eig = solve_on_grid(&pw, &ic, n, r, &cfg, None)?;
            let t_eig = t.elapsed().as_secs_f64() * 1e3;

            let t = std::time::Instant::now();
            let schur = schur_solve(&pw, &ic, n, r, cfg.sign())?;
            let t_schur = t.elapsed().as_secs_f64() * 1e3;

            let exact = reference.solve(&ic, r, cfg.sign());
            println!(
                "  r = {r:<5} eigexp {:>3} terms {t_eig:>7.2} ms err {:.1e} | schur {t_schur:>7.2} ms err {:.1e}",
                eig.terms,
                relative_error(&eig.solution, &exact)?,
                relative_error(&schur, &exact)?
            );
        }
    }
    Ok(())
}
