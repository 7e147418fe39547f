use dimtrunc::verify::{run_battery, VerifyOptions};

#[test]
fn acceptance() {
    let opts = VerifyOptions::default();
    let results = run_battery(&opts, |r| println!("{}", r.line()));
    assert_eq!(results.len(), 13);
    let failed: Vec<_> = results.iter().filter(|r| !r.passed).map(|r| r.id).collect();
    println!("{}/{} criteria passed", results.len() - failed.len(), results.len());
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
