//! States of the two-robot system and their chart coordinates.
//!
//! A [`Configuration`] is an ordered pair of distinct track positions. Pairs on
//! different circles live in one of six [`Chart::Square`]s; pairs on a common
//! circle live in one of three [`Chart::Cylinder`]s, parameterized by A's
//! position and the counterclockwise gap from A to B.

use std::fmt;

use crate::error::{Error, Result};
use crate::geometry::{gamma_distance, CircleId, PhysPoint, POLE, RHO};

/// Ordered collision-free pair of robot positions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Configuration {
    a: PhysPoint,
    b: PhysPoint,
}

impl Configuration {
    /// Fails when the robots are closer than [`RHO`] along the track.
    pub fn new(a: PhysPoint, b: PhysPoint) -> Result<Self> {
        let d = gamma_distance(&a, &b);
        if d < RHO {
            return Err(Error::Collision(format!("A = {a}, B = {b}")));
        }
        Ok(Configuration { a, b })
    }

    /// For samples along a path that are validated separately.
    pub(crate) fn new_unchecked(a: PhysPoint, b: PhysPoint) -> Self {
        Configuration { a, b }
    }

    pub fn a(&self) -> PhysPoint {
        self.a
    }

    pub fn b(&self) -> PhysPoint {
        self.b
    }

    /// The state with the robots' roles exchanged.
    pub fn swapped(&self) -> Self {
        Configuration { a: self.b, b: self.a }
    }

    /// Track distance between the two robots.
    pub fn separation(&self) -> f64 {
        gamma_distance(&self.a, &self.b)
    }

    pub fn to_chart(&self) -> Chart {
        match (self.a, self.b) {
            (PhysPoint::OnCircle { circle: i, t: x }, PhysPoint::OnCircle { circle: j, t: y }) => {
                if i == j {
                    Chart::Cylinder {
                        i,
                        a: x,
                        g: (y - x).rem_euclid(1.0),
                    }
                } else {
                    Chart::Square { i, j, x, y }
                }
            }
            (PhysPoint::Vertex, PhysPoint::OnCircle { circle: j, t: y }) => Chart::Square {
                i: j.succ(),
                j,
                x: 0.0,
                y,
            },
            (PhysPoint::OnCircle { circle: i, t: x }, PhysPoint::Vertex) => Chart::Square {
                i,
                j: i.succ(),
                x,
                y: 0.0,
            },
            (PhysPoint::Vertex, PhysPoint::Vertex) => unreachable!("both robots at the vertex"),
        }
    }

    pub fn from_chart(chart: &Chart) -> Result<Self> {
        match *chart {
            Chart::Square { i, j, x, y } => {
                if i == j {
                    return Err(Error::Chart(format!("square needs two circles, got {i} twice")));
                }
                Configuration::new(PhysPoint::on_circle(i, x), PhysPoint::on_circle(j, y))
            }
            Chart::Cylinder { i, a, g } => {
                if !(g > 0.0 && g < 1.0) {
                    return Err(Error::Chart(format!("cylinder gap {g} outside (0, 1)")));
                }
                Configuration::new(PhysPoint::on_circle(i, a), PhysPoint::on_circle(i, a + g))
            }
        }
    }
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(A = {}, B = {})", self.a, self.b)
    }
}

/// L∞ distance over the two robots.
pub fn config_distance(s1: &Configuration, s2: &Configuration) -> f64 {
    gamma_distance(&s1.a, &s2.a).max(gamma_distance(&s1.b, &s2.b))
}

/// Chart coordinates of a state.
///
/// On a square a coordinate of 0 (or 1) means that robot is at the vertex. The
/// two triangles of the flat picture for circle `i` are the halves `g < 1/2`
/// and `g > 1/2` of cylinder `i`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Chart {
    Square { i: CircleId, j: CircleId, x: f64, y: f64 },
    Cylinder { i: CircleId, a: f64, g: f64 },
}

/// Where a state sits relative to the network the retraction lands on.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum NetworkClass {
    /// A at pole `i`, B on circle `j` at `y` (neither vertex nor pole).
    CrossVertical { i: CircleId, j: CircleId, y: f64 },
    /// B at pole `j`, A on circle `i` at `x`.
    CrossHorizontal { i: CircleId, j: CircleId, x: f64 },
    /// Both on circle `i`, antipodal, A at `x`, neither at the vertex.
    Diagonal { i: CircleId, x: f64 },
    /// A at pole `i`, B at pole `j`.
    CrossCenter { i: CircleId, j: CircleId },
    /// A at pole `i`, B at the vertex.
    JVertical { i: CircleId },
    /// B at pole `j`, A at the vertex.
    JHorizontal { j: CircleId },
    NotInNetwork,
}

impl NetworkClass {
    /// Nodes are the pole-pole and pole-vertex states.
    pub fn is_node(&self) -> bool {
        matches!(
            self,
            NetworkClass::CrossCenter { .. }
                | NetworkClass::JVertical { .. }
                | NetworkClass::JHorizontal { .. }
        )
    }

    pub fn in_network(&self) -> bool {
        !matches!(self, NetworkClass::NotInNetwork)
    }
}

/// Classifies `s` with poles, the vertex and antipodality all tested within `rho`.
pub fn classify_network(s: &Configuration, rho: f64) -> NetworkClass {
    let pole_a = s.a.pole_of(rho);
    let pole_b = s.b.pole_of(rho);
    let a_at_vertex = s.a.dist_to_vertex() <= rho;
    let b_at_vertex = s.b.dist_to_vertex() <= rho;

    match (pole_a, pole_b) {
        (Some(i), Some(j)) if i != j => return NetworkClass::CrossCenter { i, j },
        (Some(i), _) if b_at_vertex => return NetworkClass::JVertical { i },
        (_, Some(j)) if a_at_vertex => return NetworkClass::JHorizontal { j },
        _ => {}
    }

    match (s.a, s.b) {
        (PhysPoint::OnCircle { circle: i, t: x }, PhysPoint::OnCircle { circle: j, t: y }) => {
            if i != j {
                if pole_a.is_some() {
                    NetworkClass::CrossVertical { i, j, y }
                } else if pole_b.is_some() {
                    NetworkClass::CrossHorizontal { i, j, x }
                } else {
                    NetworkClass::NotInNetwork
                }
            } else if ((y - x).rem_euclid(1.0) - POLE).abs() <= rho {
                NetworkClass::Diagonal { i, x }
            } else {
                NetworkClass::NotInNetwork
            }
        }
        _ => NetworkClass::NotInNetwork,
    }
}
