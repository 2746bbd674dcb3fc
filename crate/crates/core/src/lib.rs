//! Collision-free motion planning for two robots on a wedge of three circles.
//!
//! The configuration space of two distinguishable robots on the track is
//! retracted onto a one-dimensional network, which is a chain of fifteen
//! circles. Plans follow a fixed counterclockwise zigzag loop through the
//! chain's twelve nodes, so the planner needs exactly three domains of
//! continuity. A brute-force discrete complex checks the underlying topology
//! independently (first Betti number 19, topological complexity 3).
//!
//! ```
//! use wedge_planner::{plan, CircleId, Configuration, PhysPoint};
//!
//! let on = |c, t| PhysPoint::on_circle(c, t);
//! let start = Configuration::new(on(CircleId::ONE, 0.2), on(CircleId::ONE, 0.6))?;
//! let goal = Configuration::new(on(CircleId::TWO, 0.9), on(CircleId::THREE, 0.4))?;
//!
//! let p = plan(&start, &goal)?;
//! assert_eq!(p.segment_count(), 13);
//! assert!(p.validate(1e-3).ok);
//! # Ok::<(), wedge_planner::Error>(())
//! ```
//!
//! The guide under `book/` walks through each piece; its code listings are
//! compiled and run as doc-tests of this crate.

pub mod chain;
pub mod configuration;
pub mod discrete_topology;
pub mod error;
pub mod geometry;
pub mod planner;
pub mod probes;
pub mod retraction;
pub mod svg;
pub mod trajectory;
pub mod wire;

pub use chain::{build_chain, node_of, zigzag_cycle, ChainCircle, ChainNode, ZigzagCycle, ZigzagLeg};
pub use configuration::{classify_network, config_distance, Chart, Configuration, NetworkClass};
pub use discrete_topology::{build_complex, farber_tc, subdivide, DiscreteComplexSummary};
pub use error::{Error, Result};
pub use geometry::{antipode_on, gamma_distance, move_on_circle, CircleId, PhysPoint, POLE, RHO};
pub use planner::{classify_domain, plan, step1_to_node, DomainTag, Plan, Planner, Query};
pub use retraction::{evaluate_trace, retract, RetractionMove};
pub use trajectory::{PathSegment, Robot, RobotMove, SampledTrajectory};

#[cfg(doctest)]
mod book {
    macro_rules! chapter {
        ($name:ident, $file:literal) => {
            #[doc = include_str!(concat!("../../../book/src/", $file))]
            mod $name {}
        };
    }
    chapter!(introduction, "introduction.md");
    chapter!(track, "track.md");
    chapter!(configuration_space, "configuration-space.md");
    chapter!(retraction, "retraction.md");
    chapter!(chain, "chain.md");
    chapter!(planner, "planner.md");
    chapter!(topology, "topology.md");
    chapter!(continuity, "continuity.md");
    chapter!(cli, "cli.md");
}
