//! The physical track: three circles of unit length glued at a single vertex.
//!
//! A point on a circle is addressed by its arc parameter `t ∈ (0, 1)`, measured
//! counterclockwise from the vertex. The vertex itself has its own variant so
//! that "is this robot at the vertex" is an exact test; `t = 0` and `t = 1` never
//! survive construction. The pole of every circle sits at `t = 1/2`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Snap tolerance for positions and the default classification tolerance.
pub const RHO: f64 = 1e-9;

/// Arc parameter of the pole on every circle.
pub const POLE: f64 = 0.5;

/// One of the three circles of the track.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u8", into = "u8")]
pub struct CircleId(u8);

impl CircleId {
    pub const ONE: CircleId = CircleId(1);
    pub const TWO: CircleId = CircleId(2);
    pub const THREE: CircleId = CircleId(3);
    pub const ALL: [CircleId; 3] = [Self::ONE, Self::TWO, Self::THREE];

    pub fn new(index: i64) -> Result<Self> {
        match index {
            1..=3 => Ok(CircleId(index as u8)),
            _ => Err(Error::CircleIndex(index)),
        }
    }

    pub fn index(self) -> u8 {
        self.0
    }

    /// Cyclic successor: 1 → 2 → 3 → 1.
    pub fn succ(self) -> Self {
        CircleId(self.0 % 3 + 1)
    }

    pub fn pred(self) -> Self {
        CircleId((self.0 + 1) % 3 + 1)
    }

    /// The two circles different from `self`, in successor order.
    pub fn others(self) -> [CircleId; 2] {
        [self.succ(), self.pred()]
    }
}

impl TryFrom<u8> for CircleId {
    type Error = Error;

    fn try_from(value: u8) -> Result<Self> {
        CircleId::new(value as i64)
    }
}

impl From<CircleId> for u8 {
    fn from(c: CircleId) -> u8 {
        c.0
    }
}

impl fmt::Display for CircleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A position on the track.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PhysPoint {
    Vertex,
    OnCircle { circle: CircleId, t: f64 },
}

impl PhysPoint {
    /// Builds a point from an arbitrary real parameter, reducing it mod 1 and
    /// snapping to the vertex within [`RHO`].
    pub fn on_circle(circle: CircleId, t: f64) -> Self {
        debug_assert!(t.is_finite(), "arc parameter must be finite");
        let t = t.rem_euclid(1.0);
        if !(RHO..=1.0 - RHO).contains(&t) {
            PhysPoint::Vertex
        } else {
            PhysPoint::OnCircle { circle, t }
        }
    }

    pub fn pole(circle: CircleId) -> Self {
        PhysPoint::OnCircle { circle, t: POLE }
    }

    pub fn is_vertex(&self) -> bool {
        matches!(self, PhysPoint::Vertex)
    }

    /// The circle carrying this point; `None` for the vertex, which lies on all three.
    pub fn circle(&self) -> Option<CircleId> {
        match *self {
            PhysPoint::Vertex => None,
            PhysPoint::OnCircle { circle, .. } => Some(circle),
        }
    }

    pub fn lies_on(&self, circle: CircleId) -> bool {
        self.circle().is_none_or(|c| c == circle)
    }

    /// Arc parameter on `circle`; the vertex reads as 0 on every circle.
    pub fn param_on(&self, circle: CircleId) -> Result<f64> {
        match *self {
            PhysPoint::Vertex => Ok(0.0),
            PhysPoint::OnCircle { circle: c, t } if c == circle => Ok(t),
            PhysPoint::OnCircle { circle: c, .. } => Err(Error::WrongCircle {
                found: c,
                requested: circle,
            }),
        }
    }

    /// Distance to the vertex along the track, `min(t, 1 - t)`.
    pub fn dist_to_vertex(&self) -> f64 {
        match *self {
            PhysPoint::Vertex => 0.0,
            PhysPoint::OnCircle { t, .. } => t.min(1.0 - t),
        }
    }

    /// The circle whose pole this point is within `tol` of.
    pub fn pole_of(&self, tol: f64) -> Option<CircleId> {
        match *self {
            PhysPoint::OnCircle { circle, t } if (t - POLE).abs() <= tol => Some(circle),
            _ => None,
        }
    }

    /// Moves along `circle` without checking that the point lies on it.
    pub(crate) fn advanced(&self, circle: CircleId, signed_dist: f64) -> Self {
        let t0 = match *self {
            PhysPoint::Vertex => 0.0,
            PhysPoint::OnCircle { t, .. } => t,
        };
        PhysPoint::on_circle(circle, t0 + signed_dist)
    }
}

impl fmt::Display for PhysPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PhysPoint::Vertex => write!(f, "vertex"),
            PhysPoint::OnCircle { circle, t } => write!(f, "c{circle}@{t}"),
        }
    }
}

/// Path-metric distance on the track.
pub fn gamma_distance(p: &PhysPoint, q: &PhysPoint) -> f64 {
    match (*p, *q) {
        (PhysPoint::OnCircle { circle: c1, t: t1 }, PhysPoint::OnCircle { circle: c2, t: t2 })
            if c1 == c2 =>
        {
            let d = (t1 - t2).abs();
            d.min(1.0 - d)
        }
        _ => p.dist_to_vertex() + q.dist_to_vertex(),
    }
}

/// Moves `p` along `circle` by `signed_dist`; positive is counterclockwise.
pub fn move_on_circle(p: &PhysPoint, circle: CircleId, signed_dist: f64) -> Result<PhysPoint> {
    let t0 = p.param_on(circle)?;
    Ok(PhysPoint::on_circle(circle, t0 + signed_dist))
}

/// The point half a circle away from `p` on `circle`.
pub fn antipode_on(circle: CircleId, p: &PhysPoint) -> Result<PhysPoint> {
    move_on_circle(p, circle, 0.5)
}
