use std::process::{Command, Output};

use serde_json::Value;

const GOLDEN: &str = r#"{"initial": {"A": {"circle": 1, "t": 0.2}, "B": {"circle": 1, "t": 0.6}},
                         "final": {"A": {"circle": 2, "t": 0.9}, "B": {"circle": 3, "t": 0.4}}}"#;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wedge-planner"))
        .args(args)
        .env_remove("WEDGE_PLANNER_RHO")
        .env_remove("WEDGE_PLANNER_SAMPLES")
        .output()
        .unwrap()
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn plan_from_file_writes_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let query = dir.path().join("q.json");
    std::fs::write(&query, GOLDEN).unwrap();
    let svg = dir.path().join("out.svg");
    let traj = dir.path().join("out.jsonl");
    let out = run(&[
        "plan",
        "--query",
        query.to_str().unwrap(),
        "--samples",
        "50",
        "--svg",
        svg.to_str().unwrap(),
        "--trajectory",
        traj.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let doc = stdout_json(&out);
    assert_eq!(doc["segments"].as_array().unwrap().len(), 13);
    assert_eq!(doc["domain"], "U");
    assert!(std::fs::read_to_string(&svg).unwrap().contains("<svg"));
    assert_eq!(std::fs::read_to_string(&traj).unwrap().lines().count(), 50);
}

#[test]
fn plan_output_is_byte_stable() {
    let a = run(&["plan", "--inline", GOLDEN]);
    let b = run(&["plan", "--inline", GOLDEN]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn samples_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let traj = dir.path().join("t.jsonl");
    let out = Command::new(env!("CARGO_BIN_EXE_wedge-planner"))
        .args(["plan", "--inline", GOLDEN, "--trajectory", traj.to_str().unwrap()])
        .env("WEDGE_PLANNER_SAMPLES", "7")
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(std::fs::read_to_string(&traj).unwrap().lines().count(), 7);
}

#[test]
fn domain_tags() {
    let out = run(&["domain", "--inline", GOLDEN]);
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "U");
    let nodes = r#"{"initial": {"A": {"circle": 1, "t": 0.5}, "B": {"vertex": true}},
                    "final": {"A": {"circle": 2, "t": 0.5}, "B": {"circle": 3, "t": 0.5}}}"#;
    let out = run(&["domain", "--inline", nodes]);
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "W");
}

#[test]
fn input_errors_exit_2() {
    let collide = GOLDEN.replace("\"t\": 0.6", "\"t\": 0.2");
    let out = run(&["plan", "--inline", &collide]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("collision"));

    for bad in ["{", "{\"initial\": 1}", &GOLDEN.replace("\"circle\": 3", "\"circle\": 0")] {
        assert_eq!(run(&["plan", "--inline", bad]).status.code(), Some(2), "{bad}");
    }
    assert_eq!(run(&["plan", "--query", "/nonexistent/q.json"]).status.code(), Some(2));
    assert_eq!(run(&["topology", "--k", "2"]).status.code(), Some(2));
    assert_eq!(run(&["plan", "--inline", GOLDEN, "--rho", "-1"]).status.code(), Some(2));
}

#[test]
fn topology_summary() {
    let out = run(&["topology", "--k", "3"]);
    assert!(out.status.success());
    let s = stdout_json(&out);
    assert_eq!((s["V"].as_u64(), s["E"].as_u64(), s["F"].as_u64()), (Some(42), Some(90), Some(30)));
    assert_eq!(s["b1"], 19);
    assert_eq!(s["tc"], 3);
    let s = stdout_json(&run(&["topology", "--circles", "1", "--k", "4"]));
    assert_eq!((s["b1"].as_u64(), s["tc"].as_u64()), (Some(1), Some(2)));
}

#[test]
fn verify_passes_and_catches_faults() {
    let out = run(&["verify", "--trials", "300", "--seed", "7", "--continuity-trials", "30"]);
    assert!(out.status.success());
    let r = stdout_json(&out);
    assert_eq!(r["ok"], true);
    assert!(!r["vertex_crossing"]["violations"].as_array().unwrap().is_empty());

    let out = run(&["verify", "--trials", "300", "--seed", "7", "--continuity-trials", "5", "--inject-fault", "skip-step3"]);
    assert_eq!(out.status.code(), Some(1));
    let r = stdout_json(&out);
    let checks: Vec<&str> = r["validity"]["failures"]
        .as_array()
        .unwrap()
        .iter()
        .map(|f| f["check"].as_str().unwrap())
        .collect();
    assert!(checks.contains(&"reversal"));
}
