use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn aco(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_aco"))
        .args(args)
        .output()
        .expect("spawn aco")
}

fn ok(args: &[&str]) -> String {
    let out = aco(args);
    assert!(
        out.status.success(),
        "aco {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn run_writes_tables() {
    let dir = tempfile::tempdir().unwrap();
    let stdout = ok(&[
        "run",
        "--function",
        "sphere",
        "--dim",
        "3",
        "--trials",
        "4",
        "--iterations",
        "50",
        "--optimizer",
        "pso",
        "--seed",
        "5",
        "--out",
        path(dir.path()),
    ]);
    assert!(stdout.starts_with("sphere pso d=3 trials=4"), "{stdout}");
    assert!(dir.path().join("trials.csv").exists());
    assert!(dir.path().join("aggregate.csv").exists());
}

#[test]
fn config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("exp.json");
    fs::write(
        &cfg,
        r#"{"function": "griewank", "dim": 3, "trials": 2, "max_iterations": 20, "optimizer": "de"}"#,
    )
    .unwrap();
    let stdout = ok(&["run", "--config", path(&cfg), "--trials", "3"]);
    assert!(stdout.starts_with("griewank de d=3 trials=3"), "{stdout}");
}

#[test]
fn explicit_metric_makes_custom_aco() {
    let dir = tempfile::tempdir().unwrap();
    ok(&[
        "run",
        "--optimizer",
        "aco",
        "--metric",
        "canberra",
        "--dim",
        "2",
        "--trials",
        "2",
        "--iterations",
        "20",
        "--out",
        path(dir.path()),
    ]);
    let agg = fs::read_to_string(dir.path().join("aggregate.csv")).unwrap();
    assert!(agg
        .lines()
        .nth(1)
        .unwrap()
        .starts_with("sphere,aco-custom,"));
    let trials = fs::read_to_string(dir.path().join("trials.csv")).unwrap();
    assert!(trials
        .lines()
        .nth(1)
        .unwrap()
        .contains(",bhs,weight,canberra,"));
}

#[test]
fn study_with_function_subset() {
    let dir = tempfile::tempdir().unwrap();
    let stdout = ok(&[
        "study",
        "evaporation",
        "--functions",
        "sphere,ackley",
        "--trials",
        "2",
        "--iterations",
        "10",
        "--xi-list",
        "0.3,0.6",
        "--format",
        "json",
        "--out",
        path(dir.path()),
    ]);
    assert!(stdout.contains("argmin xi = "), "{stdout}");
    let v: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("study.json")).unwrap()).unwrap();
    assert_eq!(v["rows"].as_array().unwrap().len(), 2);
    assert!(dir.path().join("evaporation.svg").exists());
}

#[test]
fn selmap_writes_files() {
    let dir = tempfile::tempdir().unwrap();
    let stdout = ok(&["selmap", "--out", path(dir.path())]);
    assert_eq!(stdout.lines().count(), 6);
    assert!(dir.path().join("selection_map.svg").exists());
    assert!(dir.path().join("selmap_sus_fitval.csv").exists());
}

#[test]
fn bad_input_exits_nonzero() {
    assert!(!aco(&["run", "--function", "nope"]).status.success());
    assert!(!aco(&["run", "--trials", "0"]).status.success());
    let out = aco(&["run", "--xi=-1", "--trials", "1"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("xi"));
}
