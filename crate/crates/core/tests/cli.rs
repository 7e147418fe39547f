use std::path::Path;
use std::process::{Command, Output};

fn dimtrunc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dimtrunc"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

const SWEEP: &str = r#"
name = "frac"
measure = { kind = "UniformSym" }
sequence = { kind = "PowerLaw", decay = 2.0 }
target = { kind = "FractionalWiener", beta = 0.5 }
k_grid = [1, 2, 4, 8]
outputs = ["table", "json", "plotdata"]

[mc]
samples = 5000
ref_level = 5000
seed = 11
"#;

#[test]
fn sweep_output_does_not_depend_on_workers() {
    let dir = tempfile::tempdir().unwrap();
    let exp = write(dir.path(), "frac.toml", SWEEP);
    let a = dir.path().join("w1");
    let b = dir.path().join("w8");
    for (out, w) in [(&a, "1"), (&b, "8")] {
        let o = dimtrunc(&["sweep", "--experiment", &exp, "--out", out.to_str().unwrap(), "--workers", w]);
        assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    }
    for f in ["frac.sweep.csv", "frac.sweep.json", "frac.estimate.plot.csv", "frac.bound.plot.csv"] {
        let x = std::fs::read(a.join(f)).unwrap();
        let y = std::fs::read(b.join(f)).unwrap();
        assert!(!x.is_empty());
        assert_eq!(x, y, "{f} differs between worker counts");
    }
    let csv = std::fs::read_to_string(a.join("frac.sweep.csv")).unwrap();
    assert!(csv.starts_with("# version: dimtrunc "));
    assert!(csv.contains("# seed: 11\n# samples: 5000\n# ref_level: 5000\n"));
    assert!(csv.contains("\n# fit_slope: "));
}

#[test]
fn seed_override_changes_output() {
    let dir = tempfile::tempdir().unwrap();
    let exp = write(dir.path(), "frac.toml", SWEEP);
    let a = dimtrunc(&["sweep", "--experiment", &exp]);
    let b = dimtrunc(&["sweep", "--experiment", &exp, "--seed", "12"]);
    assert_eq!(a.status.code(), Some(0));
    assert_ne!(a.stdout, b.stdout);
    assert!(String::from_utf8_lossy(&b.stdout).contains("# seed: 12\n"));
}

#[test]
fn constants_and_bounds_commands() {
    let dir = tempfile::tempdir().unwrap();
    let exp = write(
        dir.path(),
        "u.toml",
        "measure = { kind = \"Uniform01\" }\nsequence = { kind = \"PowerLaw\", decay = 2.0 }\ntarget = { kind = \"RFoldedWiener\", r = 2 }\nk_grid = [1, 2, 4, 8]\n[constants]\nm_max = 4\nr_max = 2\n",
    );
    let o = dimtrunc(&["constants", "--experiment", &exp]);
    assert_eq!(o.status.code(), Some(0));
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.contains("measure,quantity,order,value,lo,hi,kind\n"));
    assert!(text.contains("Uniform01,C,4,0.2,0.2,0.2,Exact\n"));

    let o = dimtrunc(&["bounds", "--experiment", &exp, "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 4);
    let values: Vec<f64> = rows.iter().map(|r| r["value"].as_f64().unwrap()).collect();
    assert!(values.windows(2).all(|w| w[1] <= w[0]));
    assert!(rows.iter().all(|r| r["formula_id"] == "RFOLD_B"));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.toml", "measure = { kind = \"Cauchy\" }\n");
    assert_eq!(dimtrunc(&["bounds", "--experiment", &bad]).status.code(), Some(2));
    assert_eq!(dimtrunc(&["sweep"]).status.code(), Some(2));
    assert_eq!(dimtrunc(&["sweep", "--format", "xml"]).status.code(), Some(2));

    let refused = write(
        dir.path(),
        "refused.toml",
        "measure = { kind = \"Exponential\", scale = 1.0 }\nsequence = { kind = \"PowerLaw\", decay = 2.0 }\ntarget = { kind = \"RFoldedWiener\", r = 3 }\nk_grid = [1]\n",
    );
    let o = dimtrunc(&["bounds", "--experiment", &refused]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("Unbounded"));

    let overflow = write(
        dir.path(),
        "overflow.toml",
        "measure = { kind = \"Exponential\", scale = 1.0 }\nsequence = { kind = \"FiniteList\", values = [40.0] }\ntarget = { kind = \"Hermite\", weight = { kind = \"GeometricDecay\", q = 0.5 } }\nk_grid = [0]\n[mc]\nsamples = 200\n[bounds]\nhermite_mode = \"SplitExp\"\n",
    );
    let out = dir.path().join("never");
    let o = dimtrunc(&["bounds", "--experiment", &overflow, "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(4));
    assert!(!out.exists(), "failed runs must not write output");
}

#[test]
fn verify_passes_and_negative_control_fails() {
    let o = dimtrunc(&["verify", "--only", "1,2,3"]);
    assert_eq!(o.status.code(), Some(0));
    let text = String::from_utf8(o.stdout).unwrap();
    assert_eq!(text.lines().filter(|l| l.starts_with("PASS")).count(), 3);

    let o = dimtrunc(&["verify", "--only", "1,3", "--tamper", "3:0.5"]);
    assert_eq!(o.status.code(), Some(1));
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.lines().any(|l| l.starts_with("FAIL  3 tail-bracket")));
    assert!(text.lines().any(|l| l.starts_with("PASS  1 ")));
}
