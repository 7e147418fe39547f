//! Runs a TOML experiment through the same code path as `dimtrunc sweep`.

use dimtrunc::cli::{cmd_bounds, cmd_sweep};
use dimtrunc::experiment::ExperimentSpec;

const TEXT: &str = r#"
name = "rfolded-uniform"
measure = { kind = "Uniform01" }
sequence = { kind = "PowerLaw", decay = 2.0 }
target = { kind = "RFoldedWiener", r = 2 }
k_grid = [1, 2, 4, 8, 16]

[mc]
samples = 5000
ref_level = 20000
seed = 4
"#;

fn main() -> dimtrunc::Result<()> {
    let exp = ExperimentSpec::parse(TEXT)?;
    print!("{}", cmd_bounds(&exp, 1)?.to_csv());
    println!();
    print!("{}", cmd_sweep(&exp, 1)?.table.to_csv());
    Ok(())
}
