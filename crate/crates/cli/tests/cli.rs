use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_skewgor")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn gor_case_v() {
    let o = run(&["gor", "--form", "123 456", "--report", "text"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("Hilbert series: 1 + 6z + 6z^2 + z^3"), "{s}");
    assert!(s.contains("socle dimension: 1"));
    assert!(s.contains("e4e5e6 - e1e2e3"));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["gor", "--bogus"]).status.code(), Some(2));
    assert_eq!(run(&["gor", "--form", "12"]).status.code(), Some(2));
    assert_eq!(run(&["gor"]).status.code(), Some(2));
    assert_eq!(run(&["dual", "--entry", "nosuch"]).status.code(), Some(2));
    assert_eq!(run(&["hilbert", "--ideal", "x^2"]).status.code(), Some(2));
}

#[test]
fn dual_series_of_case_iv() {
    let o = run(&["dual", "--entry", "caseIV", "--cutoff-z", "8"]);
    assert!(stdout(&o).contains("1/A^!(z) = 1 - 6z + 6z^2 - 2z^3 + O(z^9)"));
}

#[test]
fn json_output_parses() {
    let o = run(&["hilbert", "--entry", "caseXII", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["hilbert"], serde_json::json!([1, 8, 8, 1]));
}

#[test]
fn betti_of_case_xii() {
    let o = run(&["betti", "--entry", "caseXII", "--cutoff-h", "4"]);
    assert!(stdout(&o).contains("1/P(x,y) = 1 - 8xy + 8x^2y^2 - x^3y^3 - x^3y^4 - x^4y^4"));
}

#[test]
fn census_samples() {
    let o = run(&["census", "--entry", "case63", "--mode", "sample", "--sample", "2000", "--seed", "7"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    let passing: usize = s.split_whitespace().next().unwrap().parse().unwrap();
    assert!(passing > 0, "{s}");
    assert!(s.contains("/ 2000 quadratic"));
}

#[test]
fn verify_catalog_entry() {
    let ok = run(&["verify", "--suite", "catalog", "--entry", "caseIV", "--cutoff-z", "10"]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(stdout(&ok).contains("7 passed, 0 failed"));
    // the published case-77 census is not reproduced
    let bad = run(&["verify", "--suite", "catalog", "--entry", "case77", "--mode", "sample", "--sample", "500"]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(stdout(&bad).contains("FAIL case77 census"));
}

#[test]
fn reports_are_reproducible() {
    let args = ["verify", "--suite", "catalog", "--entry", "I78", "--cutoff-h", "3", "--format", "json"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn catalog_lists_entries() {
    let s = stdout(&run(&["catalog"]));
    assert_eq!(s.lines().count(), 25);
    assert!(s.contains("skewI78"));
    let e = stdout(&run(&["catalog", "R33"]));
    assert!(e.contains("characteristic: 47"));
    assert!(!stdout(&run(&["catalog", "--unverified"])).is_empty());
}

#[test]
fn input_file() {
    let dir = std::env::temp_dir().join(format!("skewgor-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("iii.entry");
    std::fs::write(&path, "name = mine\nkind = trivector\npayload = 143 253\n").unwrap();
    let s = stdout(&run(&["hilbert", "--input", path.to_str().unwrap()]));
    assert!(s.contains("algebra: 1 5 5 1"), "{s}");
    std::fs::remove_dir_all(&dir).unwrap();
}
