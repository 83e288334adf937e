//! Driving the command layer from a scenario file, as the `ewape` binary
//! does. Outputs land in a temporary directory.
//!
//!     cargo run --release --example scenario_file

use ewape::cli::{cmd_decay, cmd_solve, cmd_spectrum, Overrides, ScenarioSet};

const SCENARIO: &str = r#"
preset = "alpha1"
r_f = 0.1
N = 255
method = "eigexp"

[ic]
kind = "char"
params = [0.7853981633974483, 1.5707963267948966]

[solver]
truncation_tol = 5e-7

[reference]
n_ref = 4095
"#;

fn main() -> ewape::Result<()> {
    let out = std::env::temp_dir().join("ewape-scenario-example");
    let o = Overrides {
        out: Some(out.clone()),
        ..Default::default()
    };
    let set = ScenarioSet::from_toml(SCENARIO, &o)?;
    let sc = set.single()?;

    let spectrum = cmd_spectrum(sc)?;
    let solved = cmd_solve(sc)?;
    let decay = cmd_decay(sc)?;

    println!("{} eigenpairs, largest lambda {:.6}", spectrum.modes.len(), spectrum.modes[0].lambda);
    println!("{}", serde_json::to_string(&solved.summary).unwrap());
    println!("{}", serde_json::to_string(&decay).unwrap());
    for name in ["spectrum.csv", "solution.csv", "summary.json", "decay.csv", "decay.json"] {
        println!("wrote {}", out.join(name).display());
    }
    Ok(())
}
