//! Deformation retraction of the configuration space onto the network.
//!
//! Every state moves in a straight line (in chart coordinates) to a network
//! state during one unit of abstract time:
//!
//! * **Same circle.** With `α`, `β` the robots' distances to the vertex and
//!   `Δ = 1/2 - g` the missing gap, A moves by `-Δ·α/(α+β)` and B by
//!   `+Δ·β/(α+β)`. The gap grows or shrinks linearly to exactly `1/2`. A robot
//!   at the vertex stays put.
//! * **Different circles.** Each robot's distance to the vertex is scaled by the
//!   same factor `1/(2·max(α, β))`, pushing the state radially away from the
//!   removed corner of the square until one robot sits at its pole.
//!
//! Both rules leave network states fixed and agree on states where one robot is
//! at the vertex, so together they define a continuous homotopy.

use crate::configuration::{Chart, Configuration};
use crate::geometry::{CircleId, PhysPoint, POLE};
use crate::trajectory::{PathSegment, RobotMove};

/// Straight-line motion from a state to its image on the network.
#[derive(Debug, Clone, PartialEq)]
pub struct RetractionMove {
    pub start: Configuration,
    pub end: Configuration,
    pub a: RobotMove,
    pub b: RobotMove,
}

impl RetractionMove {
    /// Signed speed of A over the unit-duration move.
    pub fn a_velocity(&self) -> f64 {
        self.a.displacement
    }

    pub fn b_velocity(&self) -> f64 {
        self.b.displacement
    }

    pub fn is_stationary(&self) -> bool {
        self.a.is_still() && self.b.is_still()
    }

    pub fn at(&self, tau: f64) -> Configuration {
        self.segment().state_at(tau)
    }

    pub fn segment(&self) -> PathSegment {
        PathSegment::with_end(self.start, self.end, self.a, self.b)
    }
}

/// Retraction move of `s` onto the network.
pub fn retract(s: &Configuration) -> RetractionMove {
    match s.to_chart() {
        Chart::Cylinder { i, .. } => cylinder_move(i, s),
        Chart::Square { .. } => square_move(s),
    }
}

/// State reached after fraction `tau` of the retraction.
pub fn evaluate_trace(s: &Configuration, tau: f64) -> Configuration {
    retract(s).at(tau.clamp(0.0, 1.0))
}

/// Same-circle rule applied to a state whose robots both lie on `circle`
/// (either may be at the vertex).
pub fn cylinder_move(circle: CircleId, s: &Configuration) -> RetractionMove {
    let (pa, pb) = (s.a(), s.b());
    let ta = pa.param_on(circle).expect("A on the cylinder's circle");
    let tb = pb.param_on(circle).expect("B on the cylinder's circle");
    let alpha = pa.dist_to_vertex();
    let beta = pb.dist_to_vertex();
    let gap = (tb - ta).rem_euclid(1.0);
    let delta = POLE - gap;
    let da = -delta * alpha / (alpha + beta);
    let db = delta * beta / (alpha + beta);

    let a = if pa.is_vertex() { RobotMove::STILL } else { RobotMove::along(circle, da) };
    let b = if pb.is_vertex() { RobotMove::STILL } else { RobotMove::along(circle, db) };
    let end = Configuration::new_unchecked(
        if a.is_still() { pa } else { pa.advanced(circle, da) },
        if b.is_still() { pb } else { pb.advanced(circle, db) },
    );
    RetractionMove { start: *s, end, a, b }
}

/// Different-circle rule. A robot at the vertex never moves.
pub fn square_move(s: &Configuration) -> RetractionMove {
    let (pa, pb) = (s.a(), s.b());
    let alpha = pa.dist_to_vertex();
    let beta = pb.dist_to_vertex();
    let scale = POLE / alpha.max(beta);

    let push = |p: PhysPoint, dv: f64, reaches_pole: bool| -> (PhysPoint, RobotMove) {
        match p {
            PhysPoint::Vertex => (p, RobotMove::STILL),
            PhysPoint::OnCircle { circle, t } => {
                let toward_pole = if t < POLE { 1.0 } else { -1.0 };
                let d = toward_pole * (scale - 1.0) * dv;
                let end = if reaches_pole { PhysPoint::pole(circle) } else { p.advanced(circle, d) };
                (end, RobotMove::along(circle, d))
            }
        }
    };
    let (ea, a) = push(pa, alpha, alpha >= beta);
    let (eb, b) = push(pb, beta, beta >= alpha);
    RetractionMove {
        start: *s,
        end: Configuration::new_unchecked(ea, eb),
        a,
        b,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::configuration::{classify_network, config_distance, NetworkClass};
    use crate::geometry::RHO;

    fn c(i: i64, t: f64) -> PhysPoint {
        PhysPoint::on_circle(CircleId::new(i).unwrap(), t)
    }

    fn cfg(a: PhysPoint, b: PhysPoint) -> Configuration {
        Configuration::new(a, b).unwrap()
    }

    #[test]
    fn same_circle_example() {
        // α = 0.2, β = 0.4, Δ = 0.1: A moves -0.1/3, B moves +0.2/3.
        let m = retract(&cfg(c(1, 0.2), c(1, 0.6)));
        let expect = cfg(c(1, 0.2 - 0.1 / 3.0), c(1, 0.6 + 0.2 / 3.0));
        assert!(config_distance(&m.end, &expect) < 1e-12);
        assert!((m.end.a().param_on(CircleId::ONE).unwrap() - 0.1667).abs() < 1e-4);
        let gap = m.end.b().param_on(CircleId::ONE).unwrap() - m.end.a().param_on(CircleId::ONE).unwrap();
        assert!((gap - 0.5).abs() < 1e-15);
        assert!(matches!(classify_network(&m.end, RHO), NetworkClass::Diagonal { .. }));
    }

    #[test]
    fn different_circle_example() {
        // u = 0.4, v = -0.1, scale 1.25: A's distance 0.1 -> 0.125, B reaches its pole.
        let m = retract(&cfg(c(2, 0.9), c(3, 0.4)));
        assert!(config_distance(&m.end, &cfg(c(2, 0.875), c(3, 0.5))) < 1e-12);
        assert_eq!(m.end.b(), PhysPoint::pole(CircleId::THREE));
        assert!((m.a_velocity() + 0.025).abs() < 1e-12);
        assert!((m.b_velocity() - 0.1).abs() < 1e-12);
    }

    #[test]
    fn network_state_is_fixed() {
        let s = cfg(c(1, 0.5), c(2, 0.3));
        let m = retract(&s);
        assert!(m.is_stationary());
        assert_eq!(m.end, s);
    }

    #[test]
    fn trace_examples() {
        let s = cfg(c(2, 0.9), c(3, 0.4));
        assert_eq!(evaluate_trace(&s, 0.0), s);
        let mid = evaluate_trace(&s, 0.5);
        assert!(config_distance(&mid, &cfg(c(2, 0.8875), c(3, 0.45))) < 1e-12);
        let end = evaluate_trace(&cfg(c(1, 0.2), c(1, 0.6)), 1.0);
        assert!(config_distance(&end, &cfg(c(1, 0.2 - 0.1 / 3.0), c(1, 0.6 + 0.2 / 3.0))) < 1e-12);
    }

    #[test]
    fn vertex_robot_stays_put() {
        let s = cfg(PhysPoint::Vertex, c(2, 0.8));
        let m = retract(&s);
        assert!(m.a.is_still());
        assert_eq!(m.end, cfg(PhysPoint::Vertex, c(2, 0.5)));
        let cyl = cylinder_move(CircleId::TWO, &s);
        assert!(config_distance(&cyl.end, &m.end) < 1e-12);
    }

    #[test]
    fn robot_may_wrap_through_vertex() {
        // B at 0.95 is pushed past the vertex onto the start of circle 1.
        let m = retract(&cfg(c(1, 0.9), c(1, 0.95)));
        let tb = m.end.b().param_on(CircleId::ONE).unwrap();
        assert!(tb < 0.5);
        for k in 0..=100 {
            let st = m.at(k as f64 / 100.0);
            assert!(st.separation() >= 0.05 - 1e-12);
        }
    }
}
