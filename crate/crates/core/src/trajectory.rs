//! Piecewise constant-velocity paths in the configuration space.

use crate::configuration::{config_distance, Configuration};
use crate::error::{Error, Result};
use crate::geometry::{gamma_distance, move_on_circle, CircleId, PhysPoint};

/// Endpoints closer than this count as chained.
pub const CHAIN_TOL: f64 = 1e-12;

/// Minimum robot separation inside a segment (endpoints are exempt).
pub const COLLISION_TOL: f64 = 1e-6;

/// Which robot.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Robot {
    A,
    B,
}

/// One robot's motion during a segment.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RobotMove {
    /// Circle travelled along; `None` iff the robot is stationary.
    pub circle: Option<CircleId>,
    /// Signed arc length, positive counterclockwise.
    pub displacement: f64,
}

impl RobotMove {
    pub const STILL: RobotMove = RobotMove {
        circle: None,
        displacement: 0.0,
    };

    pub fn along(circle: CircleId, displacement: f64) -> Self {
        if displacement == 0.0 {
            RobotMove::STILL
        } else {
            RobotMove {
                circle: Some(circle),
                displacement,
            }
        }
    }

    pub fn is_still(&self) -> bool {
        self.circle.is_none()
    }

    pub fn reversed(&self) -> Self {
        RobotMove {
            circle: self.circle,
            displacement: -self.displacement,
        }
    }

    fn apply(&self, p: &PhysPoint, s: f64) -> PhysPoint {
        match self.circle {
            None => *p,
            Some(c) => p.advanced(c, s * self.displacement),
        }
    }

    fn check_start(&self, p: &PhysPoint) -> Result<()> {
        if let Some(c) = self.circle {
            move_on_circle(p, c, 0.0)?;
        }
        Ok(())
    }
}

/// Both robots moving simultaneously at constant speed.
#[derive(Debug, Clone, PartialEq)]
pub struct PathSegment {
    pub start: Configuration,
    pub end: Configuration,
    pub a: RobotMove,
    pub b: RobotMove,
    /// Share of the plan's unit time interval; before normalization this holds
    /// the segment's span (longest single-robot arc).
    pub duration: f64,
}

impl PathSegment {
    /// Segment whose end is obtained by applying the moves to `start`.
    pub fn new(start: Configuration, a: RobotMove, b: RobotMove) -> Result<Self> {
        a.check_start(&start.a())?;
        b.check_start(&start.b())?;
        let end = Configuration::new(a.apply(&start.a(), 1.0), b.apply(&start.b(), 1.0))?;
        Ok(Self::with_end(start, end, a, b))
    }

    /// Segment with an explicitly given end state. Used where the end is a
    /// known exact state (a node, a pole) and the moves reach it up to rounding.
    pub fn with_end(start: Configuration, end: Configuration, a: RobotMove, b: RobotMove) -> Self {
        let span = a.displacement.abs().max(b.displacement.abs());
        PathSegment {
            start,
            end,
            a,
            b,
            duration: span,
        }
    }

    /// Sum of both robots' arc lengths.
    pub fn arc_length(&self) -> f64 {
        self.a.displacement.abs() + self.b.displacement.abs()
    }

    /// Longest single-robot arc; segment time is proportional to it.
    pub fn span(&self) -> f64 {
        self.a.displacement.abs().max(self.b.displacement.abs())
    }

    /// State at local parameter `s ∈ [0, 1]`; exact at both ends.
    pub fn state_at(&self, s: f64) -> Configuration {
        if s <= 0.0 {
            self.start
        } else if s >= 1.0 {
            self.end
        } else {
            Configuration::new_unchecked(
                self.a.apply(&self.start.a(), s),
                self.b.apply(&self.start.b(), s),
            )
        }
    }

    pub fn reversed(&self) -> Self {
        PathSegment {
            start: self.end,
            end: self.start,
            a: self.a.reversed(),
            b: self.b.reversed(),
            duration: self.duration,
        }
    }

    /// Same path, ignoring the time share.
    pub fn same_geometry(&self, other: &PathSegment) -> bool {
        self.start == other.start && self.end == other.end && self.a == other.a && self.b == other.b
    }

    fn move_error(&self) -> f64 {
        let a = self.a.apply(&self.start.a(), 1.0);
        let b = self.b.apply(&self.start.b(), 1.0);
        gamma_distance(&a, &self.end.a()).max(gamma_distance(&b, &self.end.b()))
    }
}

/// Time-reversal of a path.
pub fn reverse(segments: &[PathSegment]) -> Vec<PathSegment> {
    segments.iter().rev().map(PathSegment::reversed).collect()
}

/// Concatenates paths, requiring each to start where the previous one ended.
pub fn concat(lists: &[Vec<PathSegment>]) -> Result<Vec<PathSegment>> {
    let mut out: Vec<PathSegment> = Vec::new();
    for seg in lists.iter().flatten() {
        if let Some(prev) = out.last() {
            let gap = config_distance(&prev.end, &seg.start);
            if gap > CHAIN_TOL {
                return Err(Error::Chaining {
                    index: out.len(),
                    gap,
                });
            }
        }
        out.push(seg.clone());
    }
    Ok(out)
}

/// Rescales durations so they sum to 1 (all zero for a motionless path).
pub fn normalize_durations(segments: &mut [PathSegment]) {
    let total: f64 = segments.iter().map(PathSegment::span).sum();
    for seg in segments.iter_mut() {
        seg.duration = if total > 0.0 { seg.span() / total } else { 0.0 };
    }
}

/// Uniform-in-time samples of a path.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledTrajectory {
    pub step: f64,
    pub samples: Vec<(f64, Configuration)>,
}

/// Samples `resolution` equally spaced times in `[0, 1]`. Durations must be normalized.
pub fn sample_segments(
    initial: &Configuration,
    segments: &[PathSegment],
    resolution: usize,
) -> Result<SampledTrajectory> {
    if resolution < 2 {
        return Err(Error::Input(format!("resolution must be at least 2, got {resolution}")));
    }
    let step = 1.0 / (resolution - 1) as f64;
    let mut samples = Vec::with_capacity(resolution);
    let mut idx = 0;
    let mut seg_start_time = 0.0;
    for k in 0..resolution {
        let time = if k + 1 == resolution { 1.0 } else { k as f64 * step };
        let state = if segments.is_empty() {
            *initial
        } else if k + 1 == resolution {
            segments[segments.len() - 1].end
        } else {
            while idx + 1 < segments.len() && time >= seg_start_time + segments[idx].duration {
                seg_start_time += segments[idx].duration;
                idx += 1;
            }
            let seg = &segments[idx];
            let s = if seg.duration > 0.0 {
                ((time - seg_start_time) / seg.duration).clamp(0.0, 1.0)
            } else {
                1.0
            };
            seg.state_at(s)
        };
        samples.push((time, state));
    }
    Ok(SampledTrajectory { step, samples })
}

impl SampledTrajectory {
    /// Largest distance between consecutive samples.
    pub fn max_step_distance(&self) -> f64 {
        self.samples
            .windows(2)
            .map(|w| config_distance(&w[0].1, &w[1].1))
            .fold(0.0, f64::max)
    }

    /// Checks every sample for a collision, allowing the first and last sample
    /// to be as close as the input states are.
    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        let n = self.samples.len();
        for (k, (time, state)) in self.samples.iter().enumerate() {
            let d = state.separation();
            let endpoint = k == 0 || k + 1 == n;
            if d <= 0.0 || (!endpoint && d < COLLISION_TOL) {
                violations.push(Violation::Collision {
                    segment: k,
                    s: *time,
                    separation: d,
                });
            }
        }
        ValidationReport::from(violations)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    EndpointMismatch { endpoint: &'static str, error: f64 },
    ChainingBreak { index: usize, gap: f64 },
    MoveMismatch { segment: usize, error: f64 },
    /// `segment` indexes the sample for a sampled trajectory.
    Collision { segment: usize, s: f64, separation: f64 },
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ValidationReport {
    pub ok: bool,
    pub violations: Vec<Violation>,
}

impl From<Vec<Violation>> for ValidationReport {
    fn from(violations: Vec<Violation>) -> Self {
        ValidationReport {
            ok: violations.is_empty(),
            violations,
        }
    }
}

/// Validates a path against its intended endpoints. Every segment is sampled
/// at arc spacing `arc_step`; samples strictly inside a segment must keep the
/// robots at least [`COLLISION_TOL`] apart unless the segment's own endpoints
/// are already that close.
pub fn validate_segments(
    initial: &Configuration,
    target: &Configuration,
    segments: &[PathSegment],
    arc_step: f64,
) -> ValidationReport {
    let mut violations = Vec::new();
    let (first, last) = match (segments.first(), segments.last()) {
        (Some(f), Some(l)) => (f.start, l.end),
        _ => (*initial, *initial),
    };
    let e0 = config_distance(&first, initial);
    if e0 > 1e-9 {
        violations.push(Violation::EndpointMismatch { endpoint: "initial", error: e0 });
    }
    let e1 = config_distance(&last, target);
    if e1 > 1e-9 {
        violations.push(Violation::EndpointMismatch { endpoint: "final", error: e1 });
    }

    for (k, seg) in segments.iter().enumerate() {
        if k > 0 {
            let gap = config_distance(&segments[k - 1].end, &seg.start);
            if gap > CHAIN_TOL {
                violations.push(Violation::ChainingBreak { index: k, gap });
            }
        }
        let err = seg.move_error();
        if err > 1e-9 {
            violations.push(Violation::MoveMismatch { segment: k, error: err });
        }

        let endpoint_sep = seg.start.separation().min(seg.end.separation());
        let floor = if endpoint_sep >= COLLISION_TOL { COLLISION_TOL } else { 0.0 };
        let n = ((seg.span() / arc_step).ceil() as usize).max(1);
        for m in 0..=n {
            let s = m as f64 / n as f64;
            let d = seg.state_at(s).separation();
            let interior = m > 0 && m < n;
            if d <= 0.0 || (interior && d < floor) {
                violations.push(Violation::Collision { segment: k, s, separation: d });
                break;
            }
        }
    }
    ValidationReport::from(violations)
}
