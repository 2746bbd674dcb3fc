//! Seeded randomized checks over many planning queries.
//!
//! Trial `k` of a run with seed `s` draws from a ChaCha stream `(s, k)`, so
//! results do not depend on how trials are spread across threads.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::chain::ChainNode;
use crate::configuration::{classify_network, config_distance, Chart, Configuration};
use crate::error::{Error, Result};
use crate::geometry::{CircleId, PhysPoint, POLE, RHO};
use crate::planner::{DomainTag, Plan, Planner, Query};
use crate::retraction::retract;
use crate::trajectory::{reverse, PathSegment, Violation};

/// Sampling spacing along every segment for the collision scan.
pub const ARC_STEP: f64 = 1e-3;
pub const MAX_TOTAL_ARC: f64 = 10.0;
pub const MAX_ZIGZAG_ARC: f64 = 5.5;

pub fn trial_rng(seed: u64, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64);
    rng
}

fn random_circle(rng: &mut impl Rng) -> CircleId {
    CircleId::ALL[rng.random_range(0..3)]
}

fn open_unit(rng: &mut impl Rng) -> f64 {
    loop {
        let t: f64 = rng.random();
        if t > 0.0 {
            return t;
        }
    }
}

/// A random state, mixing generic states with the special families the
/// planner treats separately (vertex robots, shared circles, network states, nodes).
pub fn random_configuration(rng: &mut impl Rng) -> Configuration {
    loop {
        let kind = rng.random_range(0..10);
        let (a, b) = match kind {
            0 => {
                let p = PhysPoint::on_circle(random_circle(rng), open_unit(rng));
                if rng.random_bool(0.5) { (PhysPoint::Vertex, p) } else { (p, PhysPoint::Vertex) }
            }
            1 => {
                let c = random_circle(rng);
                (PhysPoint::on_circle(c, open_unit(rng)), PhysPoint::on_circle(c, open_unit(rng)))
            }
            2 => {
                let i = random_circle(rng);
                let j = i.others()[rng.random_range(0..2)];
                let free = PhysPoint::on_circle(j, open_unit(rng));
                if rng.random_bool(0.5) {
                    (PhysPoint::pole(i), free)
                } else {
                    (free, PhysPoint::pole(i))
                }
            }
            3 => {
                let c = random_circle(rng);
                let x = open_unit(rng);
                (PhysPoint::on_circle(c, x), PhysPoint::on_circle(c, x + POLE))
            }
            4 => {
                let nodes = ChainNode::all();
                let s = nodes[rng.random_range(0..nodes.len())].state();
                (s.a(), s.b())
            }
            _ => (
                PhysPoint::on_circle(random_circle(rng), open_unit(rng)),
                PhysPoint::on_circle(random_circle(rng), open_unit(rng)),
            ),
        };
        if let Ok(s) = Configuration::new(a, b) {
            return s;
        }
    }
}

pub fn random_query(rng: &mut impl Rng) -> Query {
    Query {
        initial: random_configuration(rng),
        target: random_configuration(rng),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Failure {
    pub trial: usize,
    pub check: &'static str,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidityReport {
    pub trials: usize,
    pub seed: u64,
    pub failures: Vec<Failure>,
}

impl ValidityReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn count(&self, check: &str) -> usize {
        self.failures.iter().filter(|f| f.check == check).count()
    }
}

pub fn run_validity_suite(trials: usize, seed: u64) -> ValidityReport {
    run_validity_suite_with(&Planner::default(), trials, seed)
}

/// Runs every planner invariant on `trials` random queries.
pub fn run_validity_suite_with(planner: &Planner, trials: usize, seed: u64) -> ValidityReport {
    let failures = (0..trials)
        .into_par_iter()
        .flat_map_iter(|trial| {
            let q = random_query(&mut trial_rng(seed, trial));
            check_query(planner, &q)
                .into_iter()
                .map(move |(check, detail)| Failure { trial, check, detail })
        })
        .collect();
    ValidityReport { trials, seed, failures }
}

fn same_path(x: &[PathSegment], y: &[PathSegment]) -> bool {
    x.len() == y.len() && x.iter().zip(y).all(|(p, q)| p.same_geometry(q))
}

/// All invariant checks for one query, as `(check, detail)` pairs.
pub fn check_query(planner: &Planner, q: &Query) -> Vec<(&'static str, String)> {
    let mut out = Vec::new();
    let plan = match planner.plan(&q.initial, &q.target) {
        Ok(p) => p,
        Err(e) => return vec![("planner", format!("{e} for {} -> {}", q.initial, q.target))],
    };

    for v in plan.validate(ARC_STEP).violations {
        let check = match v {
            Violation::EndpointMismatch { .. } => "endpoint",
            Violation::Collision { .. } => "collision",
            Violation::ChainingBreak { .. } | Violation::MoveMismatch { .. } => "chaining",
        };
        out.push((check, format!("{v:?}")));
    }

    // Reference stages from a planner without injected faults.
    let reference = Planner { fault: None, ..*planner };
    match (reference.approach(&q.initial), reference.approach(&q.target)) {
        (Ok((pre_i, step1_i, _)), Ok((pre_f, step1_f, _))) => {
            if !same_path(&plan.stages.step3, &reverse(&step1_f)) {
                out.push(("reversal", "step3 is not the reversed approach of the final state".into()));
            }
            if !same_path(&plan.stages.closing, &reverse(&pre_f)) {
                out.push(("reversal", "final stage is not the reversed retraction".into()));
            }
            if !same_path(&plan.stages.preliminary, &pre_i) || !same_path(&plan.stages.step1, &step1_i) {
                out.push(("stages", "initial stages differ from the retraction and node approach".into()));
            }
        }
        (Err(e), _) | (_, Err(e)) => out.push(("planner", e.to_string())),
    }

    if classify_network(&q.initial, RHO).is_node()
        && (!plan.stages.preliminary.is_empty() || !plan.stages.step1.is_empty())
    {
        out.push(("node-stability", format!("node {} does not stay put", q.initial)));
    }

    let step2 = plan.stage_arc_length(2);
    if plan.total_arc_length > MAX_TOTAL_ARC || step2 > MAX_ZIGZAG_ARC {
        out.push((
            "length",
            format!("total {} zigzag {}", plan.total_arc_length, step2),
        ));
    }

    match planner.plan(&q.initial, &q.target) {
        Ok(again) if format!("{again:?}") == format!("{plan:?}") => {}
        _ => out.push(("determinism", "replanning produced a different plan".into())),
    }
    out
}

/// Structural loci where the planner's choices change.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Locus {
    VertexCrossing,
    Node,
    Antipodal,
    QuadrantBoundary,
}

/// Distances of a state to each decision locus, smallest first.
pub fn decision_distances(s: &Configuration) -> Vec<(Locus, f64)> {
    let mut d = vec![(Locus::VertexCrossing, s.a().dist_to_vertex().min(s.b().dist_to_vertex()))];
    match s.to_chart() {
        Chart::Cylinder { g, .. } => d.push((Locus::Antipodal, (g - POLE).abs())),
        Chart::Square { .. } => {
            let (da, db) = (s.a().dist_to_vertex(), s.b().dist_to_vertex());
            d.push((Locus::QuadrantBoundary, (POLE - da).min(POLE - db).min((da - db).abs())));
        }
    }
    let star = retract(s).end;
    d.push((
        Locus::VertexCrossing,
        star.a().dist_to_vertex().min(star.b().dist_to_vertex()),
    ));
    let node = ChainNode::all()
        .iter()
        .map(|n| config_distance(&star, &n.state()))
        .fold(f64::INFINITY, f64::min);
    d.push((Locus::Node, node));
    d.sort_by(|x, y| x.1.total_cmp(&y.1));
    d
}

fn margin_of(s: &Configuration) -> f64 {
    decision_distances(s)[0].1
}

/// Maximum over a time grid of the distance between two plans' trajectories.
pub fn sup_distance(p: &Plan, q: &Plan, grid: usize) -> f64 {
    (0..=grid)
        .map(|k| {
            let t = k as f64 / grid as f64;
            config_distance(&p.state_at(t), &q.state_at(t))
        })
        .fold(0.0, f64::max)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ProbeMode {
    /// Base queries keep every decision quantity at least `margin`.
    AwayFromLoci,
    /// One robot sits within `delta` of the vertex and the perturbation pushes
    /// it across onto another circle; `margin` still applies to the rest.
    StraddleVertex,
}

#[derive(Debug, Clone, Copy)]
pub struct ContinuityProbe {
    pub region: DomainTag,
    pub delta: f64,
    pub margin: f64,
    pub trials: usize,
    pub seed: u64,
    /// Modulus above which a trial is reported.
    pub threshold: f64,
    pub mode: ProbeMode,
    /// Time grid resolution for the sup-distance.
    pub grid: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ContinuityViolation {
    pub trial: usize,
    pub modulus: f64,
    pub locus: Locus,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ContinuityReport {
    pub region: DomainTag,
    pub mode: ProbeMode,
    pub delta: f64,
    pub margin: f64,
    pub trials: usize,
    pub max_modulus: f64,
    pub violations: Vec<ContinuityViolation>,
}

impl ContinuityProbe {
    pub fn new(region: DomainTag, delta: f64, margin: f64, trials: usize, seed: u64) -> Self {
        ContinuityProbe {
            region,
            delta,
            margin,
            trials,
            seed,
            threshold: 0.05,
            mode: ProbeMode::AwayFromLoci,
            grid: 2000,
        }
    }

    pub fn run(&self) -> Result<ContinuityReport> {
        if self.mode == ProbeMode::AwayFromLoci && self.delta >= self.margin && self.delta > 0.0 {
            return Err(Error::Input(format!(
                "perturbation {} must be smaller than the margin {}",
                self.delta, self.margin
            )));
        }
        let planner = Planner::default();
        let results: Vec<(f64, Option<Locus>)> = (0..self.trials)
            .into_par_iter()
            .map(|trial| {
                let mut rng = trial_rng(self.seed, trial);
                let (base, moved) = self.sample_pair(&mut rng);
                let p = planner.plan(&base.initial, &base.target).expect("valid query");
                let q = planner.plan(&moved.initial, &moved.target).expect("valid query");
                let modulus = sup_distance(&p, &q, self.grid);
                let locus = (modulus > self.threshold).then(|| nearest_locus(&base));
                (modulus, locus)
            })
            .collect();
        let max_modulus = results.iter().map(|r| r.0).fold(0.0, f64::max);
        let violations = results
            .iter()
            .enumerate()
            .filter_map(|(trial, (modulus, locus))| {
                locus.map(|locus| ContinuityViolation { trial, modulus: *modulus, locus })
            })
            .collect();
        Ok(ContinuityReport {
            region: self.region,
            mode: self.mode,
            delta: self.delta,
            margin: self.margin,
            trials: self.trials,
            max_modulus,
            violations,
        })
    }

    fn generic(&self, rng: &mut ChaCha8Rng) -> Configuration {
        loop {
            let a = PhysPoint::on_circle(random_circle(rng), open_unit(rng));
            let b = PhysPoint::on_circle(random_circle(rng), open_unit(rng));
            if let Ok(s) = Configuration::new(a, b) {
                if margin_of(&s) >= self.margin {
                    return s;
                }
            }
        }
    }

    fn node(rng: &mut ChaCha8Rng) -> Configuration {
        let nodes = ChainNode::all();
        nodes[rng.random_range(0..nodes.len())].state()
    }

    fn perturb(&self, s: &Configuration, rng: &mut ChaCha8Rng) -> Configuration {
        let mut jiggle = |p: PhysPoint| match p {
            PhysPoint::Vertex => p,
            PhysPoint::OnCircle { circle, t } => {
                PhysPoint::on_circle(circle, t + self.delta * rng.random_range(-1.0..=1.0))
            }
        };
        let (a, b) = (jiggle(s.a()), jiggle(s.b()));
        Configuration::new(a, b).unwrap_or(*s)
    }

    /// Base query and its perturbation, both inside the probe's region.
    fn sample_pair(&self, rng: &mut ChaCha8Rng) -> (Query, Query) {
        if self.mode == ProbeMode::StraddleVertex {
            let target = self.generic(rng);
            let i = random_circle(rng);
            let a = PhysPoint::on_circle(i, rng.random_range(self.margin.max(0.05)..0.45));
            let b0 = PhysPoint::on_circle(i.succ(), self.delta / 2.0);
            let b1 = PhysPoint::on_circle(i.pred(), 1.0 - self.delta / 2.0);
            let base = Query {
                initial: Configuration::new(a, b0).expect("different circles"),
                target,
            };
            let moved = Query {
                initial: Configuration::new(a, b1).expect("different circles"),
                target,
            };
            return (base, moved);
        }
        // Node endpoints are held fixed so the perturbed pair stays in the region.
        let (initial, target, pi, pf) = match self.region {
            DomainTag::U => (self.generic(rng), self.generic(rng), true, true),
            DomainTag::W => (Self::node(rng), Self::node(rng), false, false),
            DomainTag::V => {
                if rng.random_bool(0.5) {
                    (Self::node(rng), self.generic(rng), false, true)
                } else {
                    (self.generic(rng), Self::node(rng), true, false)
                }
            }
        };
        let moved = Query {
            initial: if pi { self.perturb(&initial, rng) } else { initial },
            target: if pf { self.perturb(&target, rng) } else { target },
        };
        (Query { initial, target }, moved)
    }
}

fn nearest_locus(q: &Query) -> Locus {
    let a = decision_distances(&q.initial)[0];
    let b = decision_distances(&q.target)[0];
    if a.1 <= b.1 { a.0 } else { b.0 }
}

/// Continuity probe away from decision loci with the default threshold.
pub fn continuity_probe(
    region: DomainTag,
    delta: f64,
    margin: f64,
    trials: usize,
    seed: u64,
) -> Result<ContinuityReport> {
    ContinuityProbe::new(region, delta, margin, trials, seed).run()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::planner::Fault;

    #[test]
    fn empty_suite_passes() {
        let r = run_validity_suite(0, 1);
        assert!(r.passed());
        assert_eq!(r.trials, 0);
    }

    #[test]
    fn small_suite_passes() {
        let r = run_validity_suite(300, 7);
        assert!(r.passed(), "{:?}", r.failures.first());
    }

    #[test]
    fn injected_fault_is_caught() {
        let planner = Planner {
            fault: Some(Fault::SkipStep3),
            ..Planner::default()
        };
        let r = run_validity_suite_with(&planner, 200, 7);
        assert!(r.count("reversal") > 0);
    }

    #[test]
    fn suite_is_deterministic() {
        let planner = Planner {
            fault: Some(Fault::SkipFinal),
            ..Planner::default()
        };
        let a = run_validity_suite_with(&planner, 100, 3);
        let b = run_validity_suite_with(&planner, 100, 3);
        assert_eq!(a, b);
        assert!(!a.passed());
    }

    #[test]
    fn random_states_are_valid() {
        let mut rng = trial_rng(9, 0);
        for _ in 0..1000 {
            let s = random_configuration(&mut rng);
            assert!(s.separation() >= RHO);
        }
    }

    #[test]
    fn w_region_without_perturbation_is_exact() {
        let r = continuity_probe(DomainTag::W, 0.0, 1e-3, 50, 1).unwrap();
        assert_eq!(r.max_modulus, 0.0);
        assert!(r.violations.is_empty());
    }

    #[test]
    fn delta_must_be_below_margin() {
        assert!(continuity_probe(DomainTag::U, 1e-2, 1e-3, 1, 1).is_err());
    }

    #[test]
    fn straddle_probe_reports_vertex_crossings() {
        let probe = ContinuityProbe {
            mode: ProbeMode::StraddleVertex,
            ..ContinuityProbe::new(DomainTag::U, 1e-4, 1e-3, 40, 2)
        };
        let r = probe.run().unwrap();
        assert!(!r.violations.is_empty());
        assert!(r.violations.iter().all(|v| v.locus == Locus::VertexCrossing));
    }
}
