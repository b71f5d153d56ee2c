//! Balanced edge orientations from Eulerian circuits.
//!
//! An auxiliary vertex is joined to every odd-degree vertex, making the
//! graph even, and each component of the augmented graph is decomposed
//! into closed walks by Hierholzer's method. Orienting every edge along
//! its walk and discarding the auxiliary edges leaves each d-degree
//! vertex with in-degree d/2 (even d) or (d +/- 1)/2 (odd d).

use crate::graph::{EdgeId, Graph, VertexId};

/// An orientation of the edges of a [`Graph`] with near-balanced in-degrees.
#[derive(Debug, Clone)]
pub struct Orientation {
    /// `towards_second[e]` is true when edge `e = (u, v)` is oriented `u -> v`.
    towards_second: Vec<bool>,
    indeg: Vec<usize>,
}

impl Orientation {
    /// Head vertex of `e` in the orientation.
    pub fn head(&self, g: &Graph, e: EdgeId) -> VertexId {
        let (u, v) = g.endpoints(e);
        if self.towards_second[e] {
            v
        } else {
            u
        }
    }

    /// Tail vertex of `e` in the orientation.
    pub fn tail(&self, g: &Graph, e: EdgeId) -> VertexId {
        let (u, v) = g.endpoints(e);
        if self.towards_second[e] {
            u
        } else {
            v
        }
    }

    pub fn indegree(&self, v: VertexId) -> usize {
        self.indeg[v]
    }

    /// Incoming edge ids at `v`, ascending.
    pub fn incoming(&self, g: &Graph, v: VertexId) -> Vec<EdgeId> {
        g.incident(v)
            .iter()
            .filter(|&&(e, _)| self.head(g, e) == v)
            .map(|&(e, _)| e)
            .collect()
    }

    /// Outgoing edge ids at `v`, ascending.
    pub fn outgoing(&self, g: &Graph, v: VertexId) -> Vec<EdgeId> {
        g.incident(v)
            .iter()
            .filter(|&&(e, _)| self.tail(g, e) == v)
            .map(|&(e, _)| e)
            .collect()
    }
}

/// Computes the Eulerian orientation. Deterministic: each closed walk
/// starts at the lowest-id vertex that still has unused edges and always
/// follows the lowest-id unused edge (auxiliary edges sort after real ones).
pub fn eulerian_orientation(g: &Graph) -> Orientation {
    let n = g.vertex_count();
    let m = g.edge_count();
    let aux = n;

    // Augmented adjacency: per vertex, (edge id, neighbour), edge ids ascending.
    // Auxiliary edges get ids m, m+1, ... in ascending order of odd vertex.
    let mut adj: Vec<Vec<(usize, usize)>> =
        (0..=n).map(|v| if v < n { g.incident(v).to_vec() } else { Vec::new() }).collect();
    let mut aux_id = m;
    for v in 0..n {
        if g.degree(v) % 2 == 1 {
            adj[v].push((aux_id, aux));
            adj[aux].push((aux_id, v));
            aux_id += 1;
        }
    }

    let total_edges = aux_id;
    let mut used = vec![false; total_edges];
    let mut cursor = vec![0usize; n + 1];
    let mut towards_second = vec![false; m];
    let mut indeg = vec![0usize; n];

    let mut orient = |e: usize, from: usize, to: usize| {
        if e < m {
            let (u, v) = g.endpoints(e);
            debug_assert!((from, to) == (u, v) || (from, to) == (v, u));
            towards_second[e] = from == u;
            indeg[to] += 1;
        }
    };

    for start in 0..=n {
        loop {
            // Skip to the next unused edge at `start`, if any.
            while cursor[start] < adj[start].len() && used[adj[start][cursor[start]].0] {
                cursor[start] += 1;
            }
            if cursor[start] >= adj[start].len() {
                break;
            }
            // Walk greedily until stuck; all augmented degrees are even,
            // so the walk closes back at `start`.
            let mut at = start;
            loop {
                while cursor[at] < adj[at].len() && used[adj[at][cursor[at]].0] {
                    cursor[at] += 1;
                }
                if cursor[at] >= adj[at].len() {
                    debug_assert_eq!(at, start);
                    break;
                }
                let (e, next) = adj[at][cursor[at]];
                used[e] = true;
                orient(e, at, next);
                at = next;
            }
        }
    }

    Orientation { towards_second, indeg }
}
