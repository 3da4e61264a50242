use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn ct3(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ct3")).args(args).env_remove("CT3_CACHE_DIR").output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&o.stdout)))
}

#[test]
fn compute_ca1_example_value() {
    let o = ct3(&["compute", "--type", "index1", "--phi", "x*y+x^7+z^2+u^3", "--f", "y", "--bound", "11"]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout.clone()).unwrap();
    assert!(text.starts_with(r#"{"upper_bound":"4/5","witness":{"weight":[1,5,3,2],"index":1"#), "{text}");
    let v = json(&o);
    assert_eq!(v["certificate"], "L3");
    assert_eq!(v["exact"], false);
}

#[test]
fn compute_brieskorn_and_clamped() {
    let v = json(&ct3(&["compute", "--type", "sm", "--f", "x^2+y^3+z^6", "--bound", "8"]));
    assert_eq!((v["upper_bound"].as_str(), v["exact"].as_bool()), (Some("5/6"), Some(true)));
    let v = json(&ct3(&["compute", "--type", "sm", "--f", "z", "--bound", "5"]));
    assert_eq!(v["upper_bound"], "1");
}

#[test]
fn compute_exit_codes() {
    assert_eq!(code(&ct3(&["compute", "--type", "sm", "--f", "x+"])), 2);
    assert_eq!(code(&ct3(&["compute", "--type", "nodal", "--f", "x"])), 2);
    let not_invariant = ct3(&[
        "compute", "--type", "cA/n", "--phi", "x*y+z^4+u^3", "--action", "1/2(1,1,1,0)", "--d", "2", "--f", "x+u",
    ]);
    assert_eq!(code(&not_invariant), 3);
    let o = ct3(&["compute", "--type", "index1", "--phi", "x^2+y^2+z^2+u^2", "--f", "x", "--bound", "4"]);
    assert_eq!(code(&o), 4);
    assert!(String::from_utf8_lossy(&o.stderr).contains("no certified weight"));
}

#[test]
fn verify_props() {
    let o = ct3(&["verify", "sm-lower", "--max", "25"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["counterexamples"].as_array().unwrap().len(), 0);
    assert!(v["checked"].as_u64().unwrap() > 10_000);
    for p in ["sm-not-ab1", "ca-split", "assumption-a", "boundindex"] {
        assert_eq!(code(&ct3(&["verify", p])), 0, "{p}");
    }
    assert_eq!(code(&ct3(&["verify", "delta", "--n-max", "6", "--a-max", "30"])), 0);
    assert_eq!(code(&ct3(&["verify", "discrepancy-id", "--a-max", "20"])), 0);
    assert_eq!(code(&ct3(&["verify", "sm-upper"])), 2);
}

#[test]
fn classify_cd_is_empty() {
    let o = ct3(&["classify", "--family", "cD", "--interval", "2", "--a-max", "25"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    let fams = v["families"].as_array().unwrap();
    assert_eq!(fams.len(), 2);
    assert!(fams.iter().all(|f| f["survivors"].as_array().unwrap().is_empty()));
    assert_eq!(v["interval"], serde_json::json!(["1/2", "1"]));
}

#[test]
fn classify_expectations_and_errors() {
    let ok = ct3(&["classify", "--family", "cA", "--interval", "2", "--a-max", "12", "--expect", "half-plus"]);
    assert_eq!(code(&ok), 0);
    // Thresholds in (1/3, 1/2) are never of the form 1/2 + 1/t.
    let off = ct3(&["classify", "--family", "sm", "--interval", "3", "--a-max", "20", "--expect", "half-plus"]);
    assert_eq!(code(&off), 1);
    assert!(!json(&off)["unexpected"].as_array().unwrap().is_empty());
    assert_eq!(code(&ct3(&["classify", "--all", "--interval", "1"])), 2);
    assert_eq!(code(&ct3(&["classify", "--all", "--interval", "1/2,1/3"])), 2);
}

#[test]
fn formats() {
    let o = ct3(&["classify", "--family", "sm", "--interval", "2", "--a-max", "8", "--format", "csv"]);
    let text = String::from_utf8(o.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("family,ct,m,params"));
    assert!(lines.all(|l| l.starts_with("sm,")));
    let o = ct3(&["brieskorn", "2", "3", "5", "--format", "table"]);
    assert!(String::from_utf8(o.stdout).unwrap().contains("not-applicable"));
    let o = ct3(&["families", "--family", "cA", "--a-max", "5", "--d-max", "2"]);
    let text = String::from_utf8(o.stdout).unwrap();
    let first: Value = serde_json::from_str(text.lines().next().unwrap()).unwrap();
    assert_eq!(first["family"], "cA");
    assert!(text.lines().any(|l| l == r#"{"family":"cA","r1":3,"r2":5,"a":4,"d":2,"weight":[3,5,4,1],"index":1}"#));
}

fn cached(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ct3")).args(args).env("CT3_CACHE_DIR", dir).output().unwrap()
}

fn entries(dir: &Path) -> Vec<std::path::PathBuf> {
    fs::read_dir(dir).unwrap().map(|e| e.unwrap().path()).collect()
}

#[test]
fn cache_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["classify", "--family", "cA", "--interval", "2", "--a-max", "10"];
    let first = cached(dir.path(), &args);
    let files = entries(dir.path());
    assert_eq!(files.len(), 1);
    assert!(files[0].extension().is_some_and(|e| e == "json"));
    let second = cached(dir.path(), &args);
    assert_eq!(first.stdout, second.stdout);

    // A hit is served from disk.
    let mut entry: Value = serde_json::from_slice(&fs::read(&files[0]).unwrap()).unwrap();
    entry["stdout"] = "cached\n".into();
    fs::write(&files[0], entry.to_string()).unwrap();
    assert_eq!(cached(dir.path(), &args).stdout, b"cached\n");

    // Entries from another version are ignored and replaced.
    entry["version"] = "0.0.0/0".into();
    fs::write(&files[0], entry.to_string()).unwrap();
    assert_eq!(cached(dir.path(), &args).stdout, first.stdout);

    // Different bounds give a different key.
    cached(dir.path(), &["classify", "--family", "cA", "--interval", "2", "--a-max", "9"]);
    assert_eq!(entries(dir.path()).len(), 2);
}

#[test]
fn cache_flag_and_whitespace() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let a = ct3(&["--cache-dir", d, "compute", "--type", "sm", "--f", "x^2 + y^3 + z^6", "--bound", "8"]);
    let b = ct3(&["compute", "--type", "sm", "--f", "x^2+y^3+z^6", "--bound", "8", "--cache-dir", d]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(entries(dir.path()).len(), 1);
}
