//! Discretized two-robot configuration complex of a subdivided graph.
//!
//! Cells are ordered pairs of graph cells (vertex or edge) whose closures are
//! disjoint: vertex-vertex pairs are 0-cells, vertex-edge and edge-vertex pairs
//! are 1-cells, edge-edge pairs are 2-cells. When every loop of the graph has at
//! least three edges, this cube complex is a deformation retract of the
//! two-point configuration space, so its Euler characteristic gives the first
//! Betti number of that space whenever it is connected and homotopy equivalent
//! to a graph.

use std::collections::VecDeque;

use serde::Serialize;

use crate::error::{Error, Result};

/// A finite multigraph given by its edge list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    pub n_vertices: usize,
    pub edges: Vec<(usize, usize)>,
}

impl Graph {
    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn adjacent(&self, u: usize, w: usize) -> bool {
        self.edges.iter().any(|&(p, q)| (p, q) == (u, w) || (p, q) == (w, u))
    }

    /// `m - n + k`.
    pub fn betti_number(&self) -> usize {
        self.n_edges() + components(self.n_vertices, &self.edges) - self.n_vertices
    }
}

fn components(n: usize, edges: &[(usize, usize)]) -> usize {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        let mut y = x;
        while parent[y] != r {
            let next = parent[y];
            parent[y] = r;
            y = next;
        }
        r
    }
    let mut count = n;
    for &(p, q) in edges {
        let (rp, rq) = (find(&mut parent, p), find(&mut parent, q));
        if rp != rq {
            parent[rp] = rq;
            count -= 1;
        }
    }
    count
}

/// Wedge of `circles` loops, each subdivided into `k` edges. Vertex 0 is the
/// wedge point; loop `c` uses vertices `1 + c(k-1) .. (c+1)(k-1)`.
pub fn wedge_of_circles(circles: usize, k: usize) -> Result<Graph> {
    if k < 3 {
        return Err(Error::Subdivision(k));
    }
    let mut edges = Vec::with_capacity(circles * k);
    for c in 0..circles {
        let inner = |m: usize| 1 + c * (k - 1) + m;
        edges.push((0, inner(0)));
        for m in 0..k - 2 {
            edges.push((inner(m), inner(m + 1)));
        }
        edges.push((inner(k - 2), 0));
    }
    Ok(Graph {
        n_vertices: circles * (k - 1) + 1,
        edges,
    })
}

/// The wedge of three circles with `k` edges per circle.
pub fn subdivide(k: usize) -> Result<Graph> {
    wedge_of_circles(3, k)
}

/// Farber's topological complexity of a connected graph from its first Betti number.
pub fn farber_tc(b1: usize) -> u8 {
    match b1 {
        0 => 1,
        1 => 2,
        _ => 3,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DiscreteComplexSummary {
    pub graph_vertices: usize,
    pub graph_edges: usize,
    #[serde(rename = "V")]
    pub vertices: usize,
    #[serde(rename = "E")]
    pub edges: usize,
    #[serde(rename = "F")]
    pub faces: usize,
    pub chi: i64,
    pub connected: bool,
    pub b1: Option<usize>,
    pub tc: Option<u8>,
}

/// The discretized configuration complex with its 1-skeleton.
#[derive(Debug, Clone)]
pub struct ConfigComplex {
    graph: Graph,
    /// 0-cell id of the ordered pair `(u, w)`, if `u != w`.
    index: Vec<Option<usize>>,
    pairs: Vec<(usize, usize)>,
    neighbours: Vec<Vec<usize>>,
    one_cells: usize,
    two_cells: usize,
}

impl ConfigComplex {
    pub fn build(graph: &Graph) -> Self {
        let n = graph.n_vertices;
        let mut index = vec![None; n * n];
        let mut pairs = Vec::new();
        for u in 0..n {
            for w in 0..n {
                if u != w {
                    index[u * n + w] = Some(pairs.len());
                    pairs.push((u, w));
                }
            }
        }

        let mut neighbours = vec![Vec::new(); pairs.len()];
        let mut one_cells = 0;
        for &(p, q) in &graph.edges {
            for v in 0..n {
                if v == p || v == q {
                    continue;
                }
                // Robot 1 on edge (p, q), robot 2 parked at v; and the mirror.
                for (s, t) in [((p, v), (q, v)), ((v, p), (v, q))] {
                    let (a, b) = (index[s.0 * n + s.1].unwrap(), index[t.0 * n + t.1].unwrap());
                    neighbours[a].push(b);
                    neighbours[b].push(a);
                    one_cells += 1;
                }
            }
        }

        let mut two_cells = 0;
        for (x, e) in graph.edges.iter().enumerate() {
            for (y, f) in graph.edges.iter().enumerate() {
                if x != y && e.0 != f.0 && e.0 != f.1 && e.1 != f.0 && e.1 != f.1 {
                    two_cells += 1;
                }
            }
        }

        ConfigComplex {
            graph: graph.clone(),
            index,
            pairs,
            neighbours,
            one_cells,
            two_cells,
        }
    }

    pub fn zero_cells(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    fn cell(&self, state: (usize, usize)) -> Option<usize> {
        let n = self.graph.n_vertices;
        if state.0 >= n || state.1 >= n {
            return None;
        }
        self.index[state.0 * n + state.1]
    }

    /// Breadth-first search over the 1-skeleton; `None` if either state is not a 0-cell
    /// or `t` cannot be reached.
    pub fn bfs_reachable(&self, s: (usize, usize), t: (usize, usize)) -> Option<usize> {
        let (s, t) = (self.cell(s)?, self.cell(t)?);
        let mut dist = vec![usize::MAX; self.pairs.len()];
        dist[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(x) = queue.pop_front() {
            if x == t {
                return Some(dist[x]);
            }
            for &y in &self.neighbours[x] {
                if dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    queue.push_back(y);
                }
            }
        }
        None
    }

    pub fn is_connected(&self) -> bool {
        if self.pairs.is_empty() {
            return false;
        }
        let mut seen = vec![false; self.pairs.len()];
        seen[0] = true;
        let mut queue = VecDeque::from([0]);
        let mut count = 1;
        while let Some(x) = queue.pop_front() {
            for &y in &self.neighbours[x] {
                if !seen[y] {
                    seen[y] = true;
                    count += 1;
                    queue.push_back(y);
                }
            }
        }
        count == self.pairs.len()
    }

    pub fn summary(&self) -> DiscreteComplexSummary {
        let (v, e, f) = (self.pairs.len(), self.one_cells, self.two_cells);
        let chi = v as i64 - e as i64 + f as i64;
        let connected = self.is_connected();
        let b1 = (connected && chi <= 1).then(|| (1 - chi) as usize);
        DiscreteComplexSummary {
            graph_vertices: self.graph.n_vertices,
            graph_edges: self.graph.n_edges(),
            vertices: v,
            edges: e,
            faces: f,
            chi,
            connected,
            b1,
            tc: b1.map(farber_tc),
        }
    }
}

pub fn build_complex(graph: &Graph) -> DiscreteComplexSummary {
    ConfigComplex::build(graph).summary()
}
