use serde_json::Value;

use wedge_planner::wire::{parse_query, PlanDocument, WireState};
use wedge_planner::*;

fn fixture() -> Value {
    serde_json::from_str(include_str!("fixtures/golden_plan.json")).unwrap()
}

fn golden_plan() -> Plan {
    let q = parse_query(&fixture()["query"].to_string()).unwrap();
    plan(&q.initial, &q.target).unwrap()
}

fn state(v: &Value) -> Configuration {
    serde_json::from_value::<WireState>(v.clone()).unwrap().to_configuration("fixture").unwrap()
}

#[test]
fn stage_lengths_match_fixture() {
    let f = fixture();
    let p = golden_plan();
    let doc = PlanDocument::from_plan(&p);
    assert_eq!(doc.segments.len(), 13);
    assert_eq!(doc.domain, f["domain"]);
    assert_eq!(doc.initial_node, f["initial_node"]);
    assert_eq!(doc.final_node, f["final_node"]);
    for (got, want) in doc.stages.iter().zip(f["stages"].as_array().unwrap()) {
        assert_eq!(got.name, want["name"]);
        assert_eq!(got.segments as u64, want["segments"].as_u64().unwrap());
        assert!((got.arc_length - want["arc_length"].as_f64().unwrap()).abs() <= 1e-9, "{}", got.name);
    }
    assert!((p.total_arc_length - f["total_arc_length"].as_f64().unwrap()).abs() <= 1e-9);
}

#[test]
fn retracted_endpoints_match_fixture() {
    let f = fixture();
    let p = golden_plan();
    let pre = &p.stages.preliminary[0];
    assert!(config_distance(&pre.end, &state(&f["retracted_initial"])) <= 1e-9);
    let last = &p.stages.closing[0];
    assert!(config_distance(&last.start, &state(&f["retracted_final"])) <= 1e-9);
}

#[test]
fn zigzag_legs_are_half_circles() {
    let p = golden_plan();
    for seg in &p.stages.step2 {
        assert_eq!(seg.arc_length(), 0.5);
    }
}

#[test]
fn dense_sampling_is_fine_grained() {
    let p = golden_plan();
    let n = 10_000;
    let traj = p.sample(n).unwrap();
    assert_eq!(traj.samples.len(), n);
    assert!(traj.validate().ok);
    assert!(traj.max_step_distance() <= 1.2 * p.total_arc_length / n as f64);
}
