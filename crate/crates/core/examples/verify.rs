//! Runs a subset of the acceptance battery and prints one line per check.

use dimtrunc::verify::{run_battery, VerifyOptions};

fn main() {
    let opts = VerifyOptions {
        only: Some(vec![1, 2, 3, 4, 5, 10, 12]),
        ..VerifyOptions::default()
    };
    let results = run_battery(&opts, |r| println!("{}", r.line()));
    let failed = results.iter().filter(|r| !r.passed).count();
    std::process::exit(if failed == 0 { 0 } else { 1 });
}
