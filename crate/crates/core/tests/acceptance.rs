//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use rand::Rng;
use serde_json::Value;

use wedge_planner::chain::MoveKind;
use wedge_planner::discrete_topology::wedge_of_circles;
use wedge_planner::planner::Fault;
use wedge_planner::probes::{
    random_configuration, run_validity_suite_with, trial_rng, ContinuityProbe, Locus, ProbeMode,
};
use wedge_planner::retraction::{cylinder_move, square_move};
use wedge_planner::trajectory::Robot;
use wedge_planner::wire::parse_query;
use wedge_planner::*;

type Outcome = Result<String, String>;
type Check = fn() -> Outcome;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok { Ok(()) } else { Err(msg()) }
}

const BOUQUET: usize = 19;

fn topology() -> Outcome {
    let chain = build_chain();
    let edges = chain.semicircle_edges().len();
    ensure(edges == 30 && chain.nodes.len() == 12, || format!("chain graph {edges} edges"))?;
    ensure(chain.betti_number() == BOUQUET, || format!("chain b1 = {}", chain.betti_number()))?;
    let mut slowest = Duration::ZERO;
    for k in 3..=8 {
        let start = Instant::now();
        let s = build_complex(&subdivide(k).map_err(|e| e.to_string())?);
        let took = start.elapsed();
        slowest = slowest.max(took);
        ensure(s.b1 == Some(BOUQUET), || format!("k = {k}: complex b1 = {:?}", s.b1))?;
        ensure(took < Duration::from_secs(1), || format!("k = {k} took {took:?}"))?;
    }
    ensure(farber_tc(BOUQUET) == 3, || "farber_tc(19) != 3".into())?;
    Ok(format!("chain 30-12+1 = 19, complex b1 = 19 for k = 3..8 (slowest {slowest:.2?}), TC = 3"))
}

fn zigzag() -> Outcome {
    let cycle = zigzag_cycle();
    let nodes = cycle.nodes();
    ensure(nodes.len() == 12, || format!("{} nodes", nodes.len()))?;
    let mut distinct = nodes.clone();
    distinct.sort_by_key(|n| n.name());
    distinct.dedup();
    ensure(distinct.len() == 12, || "repeated node".into())?;
    let legs = &cycle.legs;
    for (k, leg) in legs.iter().enumerate() {
        let next = &legs[(k + 1) % legs.len()];
        ensure(leg.to == next.from, || format!("leg {k} does not chain"))?;
        ensure(leg.kind != next.kind, || format!("legs {k} and {} share a move kind", k + 1))?;
        let seg = leg.segment();
        let (mover, still) = match leg.mover {
            Robot::A => (seg.a, seg.b),
            Robot::B => (seg.b, seg.a),
        };
        ensure(mover.displacement == 0.5 && still.is_still(), || format!("leg {k} is not a ccw half-circle"))?;
        let fixed = match leg.mover {
            Robot::A => seg.start.b(),
            Robot::B => seg.start.a(),
        };
        ensure(fixed.pole_of(0.0).is_some(), || format!("leg {k}: co-robot off its pole"))?;
        let expect = match leg.kind {
            MoveKind::VertexToPole => leg.from.is_j_point() && !leg.to.is_j_point(),
            MoveKind::PoleToVertex => !leg.from.is_j_point() && leg.to.is_j_point(),
        };
        ensure(expect, || format!("leg {k} has the wrong kind"))?;
        ensure(nodes[(k + 6) % 12] == nodes[k].swapped(), || format!("swap of node {k} is not a 6-shift"))?;
    }
    Ok("12 nodes, closed, alternating, ccw half-circles, swap = 6-shift".into())
}

fn validity() -> Outcome {
    let start = Instant::now();
    let trials = 10_000;
    let report = probes::run_validity_suite(trials, 7);
    let took = start.elapsed();
    if let Some(f) = report.failures.first() {
        return Err(format!("{} failures, first: trial {} {} {}", report.failures.len(), f.trial, f.check, f.detail));
    }
    ensure(took < Duration::from_secs(30), || format!("took {took:?}"))?;

    // Spot-check the worst endpoint error on a subset.
    let planner = Planner::default();
    let mut worst = 0.0f64;
    for trial in 0..1000 {
        let mut rng = trial_rng(7, trial);
        let q = probes::random_query(&mut rng);
        let p = planner.plan(&q.initial, &q.target).map_err(|e| e.to_string())?;
        let first = p.segments().next().map(|s| s.start).unwrap_or(q.initial);
        worst = worst.max(config_distance(&first, &q.initial));
        worst = worst.max(config_distance(&p.state_at(1.0), &q.target));
    }
    ensure(worst <= 1e-9, || format!("endpoint error {worst:e}"))?;
    Ok(format!("{trials} queries, 0 failures in {took:.2?}, endpoint error <= {worst:.1e}"))
}

fn retraction_contract() -> Outcome {
    let mut rng = trial_rng(11, 0);
    let mut fixed = 0;
    for _ in 0..5000 {
        let s = random_configuration(&mut rng);
        if classify_network(&s, 0.0).in_network() {
            let m = retract(&s);
            let d = config_distance(&m.end, &s);
            ensure(d <= 1e-12, || format!("network state {s} moved by {d:e}"))?;
            fixed += 1;
        }
    }
    ensure(fixed > 500, || format!("only {fixed} network states sampled"))?;

    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let c = CircleId::ALL[rng.random_range(0..3)];
        let p = PhysPoint::on_circle(c, rng.random_range(1e-6..1.0 - 1e-6));
        let s = if rng.random_bool(0.5) {
            Configuration::new(PhysPoint::Vertex, p)
        } else {
            Configuration::new(p, PhysPoint::Vertex)
        }
        .map_err(|e| e.to_string())?;
        worst = worst.max(config_distance(&cylinder_move(c, &s).end, &square_move(&s).end));
    }
    ensure(worst <= 1e-12, || format!("boundary disagreement {worst:e}"))?;

    for _ in 0..1000 {
        let c = CircleId::ALL[rng.random_range(0..3)];
        let (ta, tb) = (rng.random_range(1e-6..1.0), rng.random_range(1e-6..1.0));
        let Ok(s) = Configuration::new(PhysPoint::on_circle(c, ta), PhysPoint::on_circle(c, tb)) else {
            continue;
        };
        for k in 0..=100 {
            let x = evaluate_trace(&s, k as f64 / 100.0);
            let g = match x.to_chart() {
                Chart::Cylinder { g, .. } => g,
                Chart::Square { .. } => return Err(format!("trace of {s} left its circle")),
            };
            ensure(g > 0.0 && g < 1.0, || format!("trace of {s} has gap {g}"))?;
        }
    }
    Ok(format!("{fixed} network states fixed, boundary agreement {worst:.1e}, same-circle gaps in (0,1)"))
}

fn golden() -> Outcome {
    let text = include_str!("fixtures/golden_plan.json");
    let fixture: Value = serde_json::from_str(text).map_err(|e| e.to_string())?;
    let q = parse_query(&fixture["query"].to_string()).map_err(|e| e.to_string())?;
    let p = plan(&q.initial, &q.target).map_err(|e| e.to_string())?;
    ensure(p.segment_count() == fixture["segments"].as_u64().unwrap() as usize, || {
        format!("{} segments", p.segment_count())
    })?;
    ensure(p.domain.to_string() == fixture["domain"], || format!("domain {}", p.domain))?;
    ensure(p.initial_node.name() == fixture["initial_node"] && p.target_node.name() == fixture["final_node"], || {
        format!("nodes {} {}", p.initial_node, p.target_node)
    })?;
    for (k, ((name, segs), expect)) in p.stages.iter().zip(fixture["stages"].as_array().unwrap()).enumerate() {
        let len = p.stage_arc_length(k);
        let want = expect["arc_length"].as_f64().unwrap();
        ensure(name == expect["name"] && segs.len() as u64 == expect["segments"].as_u64().unwrap(), || {
            format!("stage {name} has {} segments", segs.len())
        })?;
        ensure((len - want).abs() <= 1e-9, || format!("stage {name}: {len} vs {want}"))?;
    }
    ensure(p.validate(1e-3).ok, || "golden plan fails validation".into())?;
    Ok(format!("13 segments [1,1,9,1,1], total arc {:.9}", p.total_arc_length))
}

fn continuity() -> Outcome {
    let mut parts = Vec::new();
    for region in [DomainTag::U, DomainTag::V, DomainTag::W] {
        let r = ContinuityProbe::new(region, 1e-4, 1e-3, 500, 5).run().map_err(|e| e.to_string())?;
        ensure(r.max_modulus <= 0.05 && r.violations.is_empty(), || {
            format!("{region}: modulus {} with {} violations", r.max_modulus, r.violations.len())
        })?;
        parts.push(format!("{region} {:.1e}", r.max_modulus));
    }

    let moduli: Vec<f64> = [1e-5, 1e-4, 1e-3]
        .iter()
        .map(|&d| ContinuityProbe::new(DomainTag::U, d, 1e-2, 300, 5).run().map(|r| r.max_modulus))
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    for w in moduli.windows(2) {
        let ratio = w[1] / w[0];
        ensure((10.0 / 3.0..=30.0).contains(&ratio), || format!("moduli {moduli:?} not linear in delta"))?;
    }

    let straddle = ContinuityProbe {
        mode: ProbeMode::StraddleVertex,
        ..ContinuityProbe::new(DomainTag::U, 1e-4, 1e-3, 100, 5)
    }
    .run()
    .map_err(|e| e.to_string())?;
    let crossings = straddle.violations.iter().filter(|v| v.locus == Locus::VertexCrossing).count();
    Ok(format!(
        "max modulus {}; scaling {:.2e}/{:.2e}/{:.2e}; reported {crossings}/{} vertex-crossing jumps (up to {:.2})",
        parts.join(", "),
        moduli[0],
        moduli[1],
        moduli[2],
        straddle.trials,
        straddle.max_modulus
    ))
}

fn negative_controls() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_wedge-planner");
    let colliding = r#"{"initial": {"A": {"circle": 2, "t": 0.3}, "B": {"circle": 2, "t": 0.3}},
                        "final": {"A": {"circle": 1, "t": 0.5}, "B": {"circle": 3, "t": 0.5}}}"#;
    let out = Command::new(bin).args(["plan", "--inline", colliding]).output().map_err(|e| e.to_string())?;
    ensure(out.status.code() == Some(2), || format!("collision input exited {:?}", out.status.code()))?;

    for fault in ["skip-preliminary", "skip-step1", "skip-step3", "skip-final"] {
        let out = Command::new(bin)
            .args(["verify", "--trials", "200", "--seed", "3", "--continuity-trials", "10", "--inject-fault", fault])
            .output()
            .map_err(|e| e.to_string())?;
        ensure(out.status.code() == Some(1), || format!("{fault} exited {:?}", out.status.code()))?;
    }
    let planner = Planner { fault: Some(Fault::SkipStep3), ..Planner::default() };
    let r = run_validity_suite_with(&planner, 200, 3);
    ensure(r.count("reversal") > 0, || "skip-step3 not flagged by the reversal check".into())?;

    let s = build_complex(&wedge_of_circles(1, 4).map_err(|e| e.to_string())?);
    ensure(s.b1 == Some(1) && s.tc == Some(2), || format!("single circle: b1 {:?} tc {:?}", s.b1, s.tc))?;
    Ok("collision exit 2, four stage faults exit 1, single circle b1 = 1 TC = 2".into())
}

fn main() -> ExitCode {
    let criteria: [(&str, Check); 7] = [
        ("topology triple agreement", topology),
        ("zigzag structure", zigzag),
        ("planner validity sweep", validity),
        ("retraction contract", retraction_contract),
        ("golden scenario", golden),
        ("continuity", continuity),
        ("negative controls", negative_controls),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let took = start.elapsed();
        match outcome {
            Ok(detail) => println!("[PASS] {}. {name}: {detail} ({took:.2?})", k + 1),
            Err(detail) => {
                failed += 1;
                println!("[FAIL] {}. {name}: {detail} ({took:.2?})", k + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 { ExitCode::SUCCESS } else { ExitCode::FAILURE }
}
