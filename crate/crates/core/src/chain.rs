//! The network as a chain of fifteen circles, and the zigzag loop through its nodes.
//!
//! The network is a graph whose twelve nodes are the pole-pole states `c(i,j)`
//! (A at pole `i`, B at pole `j`) and the pole-vertex states `v(i)` (A at pole
//! `i`, B at the vertex) and `h(j)` (B at pole `j`, A at the vertex). Each of
//! the fifteen chain circles passes through exactly two nodes:
//!
//! | circle            | states                           | nodes            |
//! |-------------------|----------------------------------|------------------|
//! | `Vertical(i,j)`   | A at pole `i`, B anywhere on `j` | `v(i)`, `c(i,j)` |
//! | `Horizontal(i,j)` | B at pole `j`, A anywhere on `i` | `h(j)`, `c(i,j)` |
//! | `Connecting(i)`   | antipodal pair on circle `i`     | `h(i)`, `v(i)`   |
//!
//! The zigzag loop visits all twelve nodes using one half of every border
//! (vertical or horizontal) circle. Each leg moves a single robot half a circle
//! counterclockwise while the other waits at a pole.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use crate::configuration::{Configuration, NetworkClass};
use crate::error::{Error, Result};
use crate::geometry::{CircleId, PhysPoint, POLE};
use crate::trajectory::{PathSegment, Robot, RobotMove};

/// A node of the chain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ChainNode {
    /// Pole-pole state: A at pole `a`, B at pole `b`.
    Center { a: CircleId, b: CircleId },
    /// A at pole `i`, B at the vertex.
    Vertical(CircleId),
    /// B at pole `j`, A at the vertex.
    Horizontal(CircleId),
}

impl ChainNode {
    pub fn all() -> Vec<ChainNode> {
        let mut nodes = Vec::with_capacity(12);
        for i in CircleId::ALL {
            for j in i.others() {
                nodes.push(ChainNode::Center { a: i, b: j });
            }
        }
        nodes.extend(CircleId::ALL.map(ChainNode::Vertical));
        nodes.extend(CircleId::ALL.map(ChainNode::Horizontal));
        nodes
    }

    pub fn state(&self) -> Configuration {
        let (a, b) = match *self {
            ChainNode::Center { a, b } => (PhysPoint::pole(a), PhysPoint::pole(b)),
            ChainNode::Vertical(i) => (PhysPoint::pole(i), PhysPoint::Vertex),
            ChainNode::Horizontal(j) => (PhysPoint::Vertex, PhysPoint::pole(j)),
        };
        Configuration::new(a, b).expect("node states are collision-free")
    }

    /// The node obtained by exchanging the robots.
    pub fn swapped(&self) -> ChainNode {
        match *self {
            ChainNode::Center { a, b } => ChainNode::Center { a: b, b: a },
            ChainNode::Vertical(i) => ChainNode::Horizontal(i),
            ChainNode::Horizontal(j) => ChainNode::Vertical(j),
        }
    }

    pub fn is_j_point(&self) -> bool {
        !matches!(self, ChainNode::Center { .. })
    }

    /// Short name such as `c12`, `v3`, `h1`.
    pub fn name(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for ChainNode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChainNode::Center { a, b } => write!(f, "c{a}{b}"),
            ChainNode::Vertical(i) => write!(f, "v{i}"),
            ChainNode::Horizontal(j) => write!(f, "h{j}"),
        }
    }
}

/// One circle of the chain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ChainCircle {
    Vertical { i: CircleId, j: CircleId },
    Horizontal { i: CircleId, j: CircleId },
    Connecting(CircleId),
}

impl ChainCircle {
    pub fn all() -> Vec<ChainCircle> {
        let mut out = Vec::with_capacity(15);
        for i in CircleId::ALL {
            for j in i.others() {
                out.push(ChainCircle::Vertical { i, j });
                out.push(ChainCircle::Horizontal { i, j });
            }
        }
        out.extend(CircleId::ALL.map(ChainCircle::Connecting));
        out
    }

    pub fn is_border(&self) -> bool {
        !matches!(self, ChainCircle::Connecting(_))
    }

    /// The two nodes splitting this circle into semicircles.
    pub fn nodes(&self) -> [ChainNode; 2] {
        match *self {
            ChainCircle::Vertical { i, j } => [ChainNode::Vertical(i), ChainNode::Center { a: i, b: j }],
            ChainCircle::Horizontal { i, j } => [ChainNode::Horizontal(j), ChainNode::Center { a: i, b: j }],
            ChainCircle::Connecting(i) => [ChainNode::Horizontal(i), ChainNode::Vertical(i)],
        }
    }
}

/// Incidence structure of the chain.
#[derive(Debug, Clone)]
pub struct Chain {
    pub circles: Vec<ChainCircle>,
    pub nodes: Vec<ChainNode>,
    adjacency: BTreeMap<ChainNode, Vec<ChainCircle>>,
}

impl Chain {
    pub fn circles_through(&self, node: ChainNode) -> &[ChainCircle] {
        self.adjacency.get(&node).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Graph with the nodes as vertices and two semicircle edges per circle.
    pub fn semicircle_edges(&self) -> Vec<(ChainNode, ChainNode)> {
        self.circles
            .iter()
            .flat_map(|c| {
                let [p, q] = c.nodes();
                [(p, q), (p, q)]
            })
            .collect()
    }

    /// `m - n + k` of the semicircle graph.
    pub fn betti_number(&self) -> usize {
        let edges = self.semicircle_edges();
        let mut neighbours: BTreeMap<ChainNode, Vec<ChainNode>> = BTreeMap::new();
        for &(p, q) in &edges {
            neighbours.entry(p).or_default().push(q);
            neighbours.entry(q).or_default().push(p);
        }
        let mut seen = BTreeSet::new();
        let mut components = 0;
        for &start in &self.nodes {
            if !seen.insert(start) {
                continue;
            }
            components += 1;
            let mut queue = VecDeque::from([start]);
            while let Some(n) = queue.pop_front() {
                for &m in neighbours.get(&n).into_iter().flatten() {
                    if seen.insert(m) {
                        queue.push_back(m);
                    }
                }
            }
        }
        edges.len() + components - self.nodes.len()
    }

    /// Nodes in the order met when walking the ring of border circles,
    /// starting at `v(1)` along `Vertical(1, 2)`.
    pub fn border_ring(&self) -> Vec<ChainNode> {
        let start = ChainNode::Vertical(CircleId::ONE);
        let mut via = ChainCircle::Vertical { i: CircleId::ONE, j: CircleId::TWO };
        let mut ring = vec![start];
        let mut at = start;
        loop {
            let [p, q] = via.nodes();
            at = if p == at { q } else { p };
            if at == start {
                break;
            }
            ring.push(at);
            via = *self
                .circles_through(at)
                .iter()
                .find(|c| c.is_border() && **c != via)
                .expect("every node lies on two border circles");
        }
        ring
    }
}

pub fn build_chain() -> Chain {
    let circles = ChainCircle::all();
    let nodes = ChainNode::all();
    let mut adjacency: BTreeMap<ChainNode, Vec<ChainCircle>> = BTreeMap::new();
    for c in &circles {
        for n in c.nodes() {
            adjacency.entry(n).or_default().push(*c);
        }
    }
    Chain {
        circles,
        nodes,
        adjacency,
    }
}

/// `m_VP` leaves a pole-vertex state, `m_PV` leaves a pole-pole state.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MoveKind {
    VertexToPole,
    PoleToVertex,
}

/// One half-circle step of the zigzag loop.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZigzagLeg {
    pub from: ChainNode,
    pub to: ChainNode,
    pub kind: MoveKind,
    pub mover: Robot,
    pub circle: CircleId,
    pub t_from: f64,
    pub t_to: f64,
}

impl ZigzagLeg {
    /// The leg leaving `node`.
    fn leaving(node: ChainNode) -> ZigzagLeg {
        match node {
            // The stationary robot holds pole m; the vertex robot enters succ(m).
            ChainNode::Vertical(m) => ZigzagLeg {
                from: node,
                to: ChainNode::Center { a: m, b: m.succ() },
                kind: MoveKind::VertexToPole,
                mover: Robot::B,
                circle: m.succ(),
                t_from: 0.0,
                t_to: POLE,
            },
            ChainNode::Horizontal(m) => ZigzagLeg {
                from: node,
                to: ChainNode::Center { a: m.succ(), b: m },
                kind: MoveKind::VertexToPole,
                mover: Robot::A,
                circle: m.succ(),
                t_from: 0.0,
                t_to: POLE,
            },
            // At c(i,j), A moves iff j = succ(i).
            ChainNode::Center { a, b } if b == a.succ() => ZigzagLeg {
                from: node,
                to: ChainNode::Horizontal(b),
                kind: MoveKind::PoleToVertex,
                mover: Robot::A,
                circle: a,
                t_from: POLE,
                t_to: 1.0,
            },
            ChainNode::Center { a, b } => ZigzagLeg {
                from: node,
                to: ChainNode::Vertical(a),
                kind: MoveKind::PoleToVertex,
                mover: Robot::B,
                circle: b,
                t_from: POLE,
                t_to: 1.0,
            },
        }
    }

    pub fn segment(&self) -> PathSegment {
        let step = RobotMove::along(self.circle, self.t_to - self.t_from);
        let (a, b) = match self.mover {
            Robot::A => (step, RobotMove::STILL),
            Robot::B => (RobotMove::STILL, step),
        };
        PathSegment::with_end(self.from.state(), self.to.state(), a, b)
    }
}

/// The twelve legs of the zigzag loop, starting at `v(1)`.
#[derive(Debug, Clone)]
pub struct ZigzagCycle {
    pub legs: Vec<ZigzagLeg>,
}

impl ZigzagCycle {
    pub fn nodes(&self) -> Vec<ChainNode> {
        self.legs.iter().map(|l| l.from).collect()
    }

    pub fn position(&self, node: ChainNode) -> usize {
        self.legs
            .iter()
            .position(|l| l.from == node)
            .expect("every node is on the cycle")
    }

    /// Consecutive legs leading counterclockwise from `from` to `to`; empty if equal.
    pub fn legs_between(&self, from: ChainNode, to: ChainNode) -> Vec<ZigzagLeg> {
        let n = self.legs.len();
        let (i, j) = (self.position(from), self.position(to));
        let count = (j + n - i) % n;
        (0..count).map(|k| self.legs[(i + k) % n]).collect()
    }
}

pub fn zigzag_cycle() -> ZigzagCycle {
    let start = ChainNode::Vertical(CircleId::ONE);
    let mut legs = Vec::with_capacity(12);
    let mut at = start;
    loop {
        let leg = ZigzagLeg::leaving(at);
        legs.push(leg);
        at = leg.to;
        if at == start {
            break;
        }
    }
    ZigzagCycle { legs }
}

/// Node a network state is sent to before traversing the zigzag loop.
pub fn node_of(nc: &NetworkClass) -> Result<ChainNode> {
    Ok(match *nc {
        NetworkClass::CrossVertical { i, j, .. }
        | NetworkClass::CrossHorizontal { i, j, .. }
        | NetworkClass::CrossCenter { i, j } => ChainNode::Center { a: i, b: j },
        NetworkClass::Diagonal { i, x } => {
            if x < POLE {
                ChainNode::Vertical(i)
            } else {
                ChainNode::Horizontal(i)
            }
        }
        NetworkClass::JVertical { i } => ChainNode::Vertical(i),
        NetworkClass::JHorizontal { j } => ChainNode::Horizontal(j),
        NetworkClass::NotInNetwork => return Err(Error::NotInNetwork),
    })
}
