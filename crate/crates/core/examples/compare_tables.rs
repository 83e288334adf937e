//! Timing and accuracy tables over r_f ∈ {0.01, 0.1, 1} and
//! N ∈ {127, 255, 511} for every standard coefficient and both initial
//! conditions, against an N_ref = 8191 reference.
//!
//!     cargo run --release --example compare_tables [cache-dir]

use std::path::PathBuf;

use ewape::cli::{compare, Overrides, ScenarioSet};

fn main() -> ewape::Result<()> {
    let cache = std::env::args().nth(1).map(PathBuf::from);
    for preset in ["alpha1", "alpha2", "alpha3"] {
        for ic in ["sine:2", "char:0.7853981633974483,1.5707963267948966"] {
            let o = Overrides {
                preset: Some(preset.into()),
                ic: Some(ic.into()),
                r_f: Some(vec![0.01, 0.1, 1.0]),
                n: Some(vec![127, 255, 511]),
                n_ref: Some(8191),
                cache_dir: cache.clone(),
                ..Default::default()
            };
            let (n_ref, rows) = compare(&ScenarioSet::load(None, &o)?, 1)?;
            let ic_name = if ic.starts_with("sine") { "sin(2z)" } else { "characteristic" };
            println!("{preset}, {ic_name} (reference N = {n_ref})");
            println!(
                "{:>5} {:>4} | {:>9} {:>5} {:>8} | {:>9} {:>8}",
                "r_f", "N", "eig ms", "terms", "eig err", "schur ms", "schur err"
            );
            for r in rows {
                println!(
                    "{:>5} {:>4} | {:>9.3} {:>5} {:>8.1e} | {:>9.3} {:>8.1e}",
                    r.r_f, r.n, r.eigexp_time_ms, r.eigexp_terms, r.eigexp_error, r.schur_ref_time_ms, r.schur_ref_error
                );
            }
            println!();
        }
    }
    Ok(())
}
