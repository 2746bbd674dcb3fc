//! The motion planner: retract both endpoints onto the network, run each to its
//! chain node, follow the zigzag loop between the nodes, then undo the final
//! state's approach.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::chain::{node_of, zigzag_cycle, ChainNode, ZigzagCycle, ZigzagLeg};
use crate::configuration::{classify_network, Configuration, NetworkClass};
use crate::error::{Error, Result};
use crate::geometry::{CircleId, PhysPoint, POLE, RHO};
use crate::retraction::retract;
use crate::trajectory::{
    normalize_durations, reverse, sample_segments, validate_segments, PathSegment, RobotMove,
    SampledTrajectory, ValidationReport,
};

/// Which domain of continuity a query falls in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DomainTag {
    /// Neither endpoint is a node.
    U,
    /// Exactly one endpoint is a node.
    V,
    /// Both endpoints are nodes.
    W,
}

impl fmt::Display for DomainTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            DomainTag::U => "U",
            DomainTag::V => "V",
            DomainTag::W => "W",
        };
        f.write_str(s)
    }
}

/// Initial and final states of a planning request.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Query {
    pub initial: Configuration,
    pub target: Configuration,
}

/// The planner's output split by stage.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Stages {
    /// Retraction of the initial state onto the network.
    pub preliminary: Vec<PathSegment>,
    /// Network state to its chain node.
    pub step1: Vec<PathSegment>,
    /// Zigzag legs between the two nodes.
    pub step2: Vec<PathSegment>,
    /// Reverse of the final state's approach to its node.
    pub step3: Vec<PathSegment>,
    /// Reverse of the final state's retraction.
    pub closing: Vec<PathSegment>,
}

impl Stages {
    pub const NAMES: [&'static str; 5] = ["preliminary", "step1", "step2", "step3", "final"];

    pub fn by_index(&self, k: usize) -> &[PathSegment] {
        match k {
            0 => &self.preliminary,
            1 => &self.step1,
            2 => &self.step2,
            3 => &self.step3,
            _ => &self.closing,
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&'static str, &[PathSegment])> {
        (0..5).map(move |k| (Self::NAMES[k], self.by_index(k)))
    }
}

/// A planned path.
#[derive(Debug, Clone, PartialEq)]
pub struct Plan {
    pub query: Query,
    pub domain: DomainTag,
    pub initial_node: ChainNode,
    pub target_node: ChainNode,
    pub stages: Stages,
    pub total_arc_length: f64,
}

impl Plan {
    pub fn segments(&self) -> impl Iterator<Item = &PathSegment> {
        self.stages.iter().flat_map(|(_, s)| s.iter())
    }

    pub fn segment_count(&self) -> usize {
        self.segments().count()
    }

    pub fn stage_arc_length(&self, stage: usize) -> f64 {
        self.stages.by_index(stage).iter().map(PathSegment::arc_length).sum()
    }

    pub fn sample(&self, resolution: usize) -> Result<SampledTrajectory> {
        let segs: Vec<PathSegment> = self.segments().cloned().collect();
        sample_segments(&self.query.initial, &segs, resolution)
    }

    /// Endpoint, chaining and collision checks with samples every `arc_step`.
    pub fn validate(&self, arc_step: f64) -> ValidationReport {
        let segs: Vec<PathSegment> = self.segments().cloned().collect();
        validate_segments(&self.query.initial, &self.query.target, &segs, arc_step)
    }

    /// State at plan time `time ∈ [0, 1]`.
    pub fn state_at(&self, time: f64) -> Configuration {
        let mut acc = 0.0;
        let mut last = None;
        for seg in self.segments() {
            if seg.duration > 0.0 && time <= acc + seg.duration {
                return seg.state_at((time - acc) / seg.duration);
            }
            acc += seg.duration;
            last = Some(seg);
        }
        last.map(|s| s.end).unwrap_or(self.query.initial)
    }
}

/// Deliberate planner defects used to check that the validity suite notices them.
#[doc(hidden)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fault {
    SkipPreliminary,
    SkipStep1,
    SkipStep3,
    SkipFinal,
}

#[derive(Debug, Clone, Copy)]
pub struct Planner {
    /// Tolerance for pole, vertex and node tests.
    pub rho: f64,
    #[doc(hidden)]
    pub fault: Option<Fault>,
}

impl Default for Planner {
    fn default() -> Self {
        Planner { rho: RHO, fault: None }
    }
}

impl Planner {
    pub fn with_rho(rho: f64) -> Self {
        Planner { rho, fault: None }
    }

    pub fn plan(&self, initial: &Configuration, target: &Configuration) -> Result<Plan> {
        let cycle = zigzag_cycle();
        let (pre_i, step1_i, node_i) = self.approach(initial)?;
        let (pre_f, step1_f, node_f) = self.approach(target)?;

        let mut stages = Stages {
            preliminary: pre_i,
            step1: step1_i,
            step2: cycle
                .legs_between(node_i, node_f)
                .iter()
                .map(ZigzagLeg::segment)
                .collect(),
            step3: reverse(&step1_f),
            closing: reverse(&pre_f),
        };
        match self.fault {
            Some(Fault::SkipPreliminary) => stages.preliminary.clear(),
            Some(Fault::SkipStep1) => stages.step1.clear(),
            Some(Fault::SkipStep3) => stages.step3.clear(),
            Some(Fault::SkipFinal) => stages.closing.clear(),
            None => {}
        }

        let mut all: Vec<PathSegment> = Vec::new();
        let mut bounds = [0usize; 5];
        for (k, (_, segs)) in stages.iter().enumerate() {
            all.extend_from_slice(segs);
            bounds[k] = all.len();
        }
        normalize_durations(&mut all);
        let mut it = all.into_iter();
        let mut take = |n: usize| -> Vec<PathSegment> { it.by_ref().take(n).collect() };
        let counts = [
            bounds[0],
            bounds[1] - bounds[0],
            bounds[2] - bounds[1],
            bounds[3] - bounds[2],
            bounds[4] - bounds[3],
        ];
        let stages = Stages {
            preliminary: take(counts[0]),
            step1: take(counts[1]),
            step2: take(counts[2]),
            step3: take(counts[3]),
            closing: take(counts[4]),
        };
        let total_arc_length = stages.iter().flat_map(|(_, s)| s).map(PathSegment::arc_length).sum();

        Ok(Plan {
            query: Query {
                initial: *initial,
                target: *target,
            },
            domain: classify_domain(initial, target, self.rho),
            initial_node: node_i,
            target_node: node_f,
            stages,
            total_arc_length,
        })
    }

    /// Retraction and node approach for one endpoint.
    pub fn approach(&self, s: &Configuration) -> Result<(Vec<PathSegment>, Vec<PathSegment>, ChainNode)> {
        let pre = retract(s);
        let star = pre.end;
        let nc = classify_network(&star, self.rho);
        let node = node_of(&nc)?;
        let step1 = step1_to_node(&nc, &star)?;
        let pre = if pre.is_stationary() { Vec::new() } else { vec![pre.segment()] };
        Ok((pre, step1, node))
    }

    /// The zigzag loop used for the main step.
    pub fn cycle(&self) -> ZigzagCycle {
        zigzag_cycle()
    }
}

/// Plans with the default tolerance.
pub fn plan(initial: &Configuration, target: &Configuration) -> Result<Plan> {
    Planner::default().plan(initial, target)
}

/// Path from a network state to its chain node.
///
/// Cross states send the free robot to its pole the short way round; diagonal
/// states rotate both robots counterclockwise until one reaches the vertex and
/// the other a pole. A state already at its node yields no segments; a state
/// within tolerance of one yields a single snapping segment.
pub fn step1_to_node(nc: &NetworkClass, state: &Configuration) -> Result<Vec<PathSegment>> {
    let node = node_of(nc)?;
    let target = node.state();
    if *state == target {
        return Ok(Vec::new());
    }
    let (a, b) = match *nc {
        NetworkClass::Diagonal { i, x } => {
            let d = if x < POLE { POLE - x } else { 1.0 - x };
            (RobotMove::along(i, d), RobotMove::along(i, d))
        }
        _ => (
            shortest_move(&state.a(), &target.a())?,
            shortest_move(&state.b(), &target.b())?,
        ),
    };
    Ok(vec![PathSegment::with_end(*state, target, a, b)])
}

/// Shorter arc between two points sharing a circle.
fn shortest_move(from: &PhysPoint, to: &PhysPoint) -> Result<RobotMove> {
    let circle: CircleId = match (from.circle(), to.circle()) {
        (None, None) => return Ok(RobotMove::STILL),
        (Some(c), None) | (None, Some(c)) => c,
        (Some(c1), Some(c2)) if c1 == c2 => c1,
        (Some(c1), Some(c2)) => return Err(Error::WrongCircle { found: c1, requested: c2 }),
    };
    let d = (to.param_on(circle)? - from.param_on(circle)?).rem_euclid(1.0);
    let d = if d > 0.5 { d - 1.0 } else { d };
    Ok(RobotMove::along(circle, d))
}

/// Region of the query pair, with node membership tested within `rho`.
pub fn classify_domain(initial: &Configuration, target: &Configuration, rho: f64) -> DomainTag {
    let ni = classify_network(initial, rho).is_node();
    let nf = classify_network(target, rho).is_node();
    match (ni, nf) {
        (false, false) => DomainTag::U,
        (true, true) => DomainTag::W,
        _ => DomainTag::V,
    }
}
