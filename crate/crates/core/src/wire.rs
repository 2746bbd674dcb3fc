//! JSON query and plan documents, and JSONL trajectory export.
//!
//! A position is `{"vertex": true}` or `{"circle": 1|2|3, "t": x}` with
//! `0 < x < 1`. Numbers in emitted documents carry 12 significant digits.

use serde::{Deserialize, Serialize};

use crate::configuration::Configuration;
use crate::error::{Error, Result};
use crate::geometry::{CircleId, PhysPoint};
use crate::planner::{Plan, Query};
use crate::trajectory::{PathSegment, RobotMove, SampledTrajectory};

/// Rounds to 12 significant digits.
pub fn round12(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return 0.0;
    }
    format!("{x:.11e}").parse().unwrap_or(x)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Pos {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertex: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub circle: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<f64>,
}

impl Pos {
    pub fn from_point(p: &PhysPoint) -> Self {
        match *p {
            PhysPoint::Vertex => Pos {
                vertex: Some(true),
                circle: None,
                t: None,
            },
            PhysPoint::OnCircle { circle, t } => Pos {
                vertex: None,
                circle: Some(circle.index() as i64),
                t: Some(round12(t)),
            },
        }
    }

    pub fn to_point(&self, label: &str) -> Result<PhysPoint> {
        match (self.vertex, self.circle, self.t) {
            (Some(true), None, None) => Ok(PhysPoint::Vertex),
            (None, Some(c), Some(t)) => {
                let circle = CircleId::new(c).map_err(|e| Error::Input(format!("{label}: {e}")))?;
                if !(t.is_finite() && t > 0.0 && t < 1.0) {
                    return Err(Error::Input(format!(
                        "{label}: t = {t} must lie strictly inside (0, 1); use {{\"vertex\": true}} for the vertex"
                    )));
                }
                Ok(PhysPoint::on_circle(circle, t))
            }
            _ => Err(Error::Input(format!(
                "{label}: expected {{\"vertex\": true}} or {{\"circle\": 1|2|3, \"t\": number}}"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WireState {
    #[serde(rename = "A")]
    pub a: Pos,
    #[serde(rename = "B")]
    pub b: Pos,
}

impl WireState {
    pub fn from_configuration(s: &Configuration) -> Self {
        WireState {
            a: Pos::from_point(&s.a()),
            b: Pos::from_point(&s.b()),
        }
    }

    pub fn to_configuration(&self, label: &str) -> Result<Configuration> {
        let a = self.a.to_point(&format!("{label}.A"))?;
        let b = self.b.to_point(&format!("{label}.B"))?;
        Configuration::new(a, b).map_err(|e| match e {
            Error::Collision(what) => Error::Collision(format!("{label}: {what}")),
            other => other,
        })
    }
}

/// Planning request as read from `--query` / `--inline`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QueryDocument {
    pub initial: WireState,
    #[serde(rename = "final")]
    pub target: WireState,
}

impl QueryDocument {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Input(format!("malformed query: {e}")))
    }

    pub fn from_query(q: &Query) -> Self {
        QueryDocument {
            initial: WireState::from_configuration(&q.initial),
            target: WireState::from_configuration(&q.target),
        }
    }

    pub fn to_query(&self) -> Result<Query> {
        Ok(Query {
            initial: self.initial.to_configuration("initial")?,
            target: self.target.to_configuration("final")?,
        })
    }
}

/// Parses and validates a query in one go.
pub fn parse_query(text: &str) -> Result<Query> {
    QueryDocument::parse(text)?.to_query()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RobotEntry {
    pub from: Pos,
    pub to: Pos,
    pub circle: Option<i64>,
    pub displacement: f64,
}

impl RobotEntry {
    fn new(from: &PhysPoint, to: &PhysPoint, m: &RobotMove) -> Self {
        RobotEntry {
            from: Pos::from_point(from),
            to: Pos::from_point(to),
            circle: m.circle.map(|c| c.index() as i64),
            displacement: round12(m.displacement),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SegmentEntry {
    pub stage: String,
    pub duration: f64,
    pub arc_length: f64,
    #[serde(rename = "A")]
    pub a: RobotEntry,
    #[serde(rename = "B")]
    pub b: RobotEntry,
}

impl SegmentEntry {
    fn new(stage: &str, seg: &PathSegment) -> Self {
        SegmentEntry {
            stage: stage.to_string(),
            duration: round12(seg.duration),
            arc_length: round12(seg.arc_length()),
            a: RobotEntry::new(&seg.start.a(), &seg.end.a(), &seg.a),
            b: RobotEntry::new(&seg.start.b(), &seg.end.b(), &seg.b),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StageEntry {
    pub name: String,
    pub segments: usize,
    pub arc_length: f64,
}

/// Plan as emitted on stdout by `plan`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlanDocument {
    pub domain: String,
    pub initial: WireState,
    #[serde(rename = "final")]
    pub target: WireState,
    pub initial_node: String,
    pub final_node: String,
    pub stages: Vec<StageEntry>,
    pub segments: Vec<SegmentEntry>,
    pub total_arc_length: f64,
}

impl PlanDocument {
    pub fn from_plan(plan: &Plan) -> Self {
        let stages = plan
            .stages
            .iter()
            .map(|(name, segs)| StageEntry {
                name: name.to_string(),
                segments: segs.len(),
                arc_length: round12(segs.iter().map(PathSegment::arc_length).sum()),
            })
            .collect();
        let segments = plan
            .stages
            .iter()
            .flat_map(|(name, segs)| segs.iter().map(move |s| SegmentEntry::new(name, s)))
            .collect();
        PlanDocument {
            domain: plan.domain.to_string(),
            initial: WireState::from_configuration(&plan.query.initial),
            target: WireState::from_configuration(&plan.query.target),
            initial_node: plan.initial_node.name(),
            final_node: plan.target_node.name(),
            stages,
            segments,
            total_arc_length: round12(plan.total_arc_length),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plan documents serialize")
    }

    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Input(format!("malformed plan document: {e}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrajectoryLine {
    pub time: f64,
    #[serde(rename = "A")]
    pub a: Pos,
    #[serde(rename = "B")]
    pub b: Pos,
}

/// One JSON object per sample, newline-terminated.
pub fn trajectory_jsonl(traj: &SampledTrajectory) -> String {
    let mut out = String::new();
    for (time, s) in &traj.samples {
        let line = TrajectoryLine {
            time: round12(*time),
            a: Pos::from_point(&s.a()),
            b: Pos::from_point(&s.b()),
        };
        out.push_str(&serde_json::to_string(&line).expect("trajectory lines serialize"));
        out.push('\n');
    }
    out
}
