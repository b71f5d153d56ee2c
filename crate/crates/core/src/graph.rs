//! Immutable simple undirected graphs with stable vertex and edge indices.

use std::fmt::Write as _;
use thiserror::Error;

pub type VertexId = usize;
pub type EdgeId = usize;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("line {line}: malformed header, expected \"n m\"")]
    MalformedHeader { line: usize },
    #[error("line {line}: malformed edge, expected \"u v\"")]
    MalformedEdge { line: usize },
    #[error("line {line}: endpoint {vertex} out of range (n = {n})")]
    EndpointOutOfRange { line: usize, vertex: usize, n: usize },
    #[error("line {line}: loop at vertex {vertex}")]
    Loop { line: usize, vertex: usize },
    #[error("line {line}: duplicate edge {u}-{v}")]
    DuplicateEdge { line: usize, u: usize, v: usize },
    #[error("expected {expected} edges, found {found}")]
    EdgeCountMismatch { expected: usize, found: usize },
    #[error("invalid parameter for {family}: {reason}")]
    InvalidParameter { family: String, reason: String },
}

/// A simple undirected graph. Edge ids are assigned in construction order
/// and never change. Isolated vertices are permitted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(VertexId, VertexId)>,
    /// Per vertex: (incident edge id, other endpoint), in edge-id order.
    adjacency: Vec<Vec<(EdgeId, VertexId)>>,
}

impl Graph {
    /// Builds a graph from an edge list, checking simplicity.
    pub fn new(n: usize, edges: Vec<(VertexId, VertexId)>) -> Result<Self, GraphError> {
        let mut seen = std::collections::HashSet::new();
        for (i, &(u, v)) in edges.iter().enumerate() {
            if u >= n || v >= n {
                let vertex = if u >= n { u } else { v };
                return Err(GraphError::EndpointOutOfRange { line: i + 2, vertex, n });
            }
            if u == v {
                return Err(GraphError::Loop { line: i + 2, vertex: u });
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(GraphError::DuplicateEdge { line: i + 2, u, v });
            }
        }
        let mut adjacency = vec![Vec::new(); n];
        for (id, &(u, v)) in edges.iter().enumerate() {
            adjacency[u].push((id, v));
            adjacency[v].push((id, u));
        }
        Ok(Graph { n, edges, adjacency })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    pub fn endpoints(&self, e: EdgeId) -> (VertexId, VertexId) {
        self.edges[e]
    }

    /// Incident edges of `v` as `(edge id, other endpoint)`, in edge-id order.
    pub fn incident(&self, v: VertexId) -> &[(EdgeId, VertexId)] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adjacency[v].len()
    }

    pub fn degree_histogram(&self) -> DegreeHistogram {
        let mut counts = std::collections::BTreeMap::new();
        for v in 0..self.n {
            *counts.entry(self.degree(v)).or_insert(0usize) += 1;
        }
        let max_degree = counts.keys().copied().max().unwrap_or(0);
        DegreeHistogram { counts, max_degree }
    }

    /// Connected components as sorted vertex lists, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<VertexId>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            let mut comp = vec![start];
            seen[start] = true;
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                for &(_, w) in &self.adjacency[v] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Connected and acyclic.
    pub fn is_tree(&self) -> bool {
        self.n >= 1 && self.is_connected() && self.edges.len() == self.n - 1
    }

    pub fn is_regular(&self, k: usize) -> bool {
        (0..self.n).all(|v| self.degree(v) == k)
    }

    /// Serializes to the edge-list file format.
    pub fn to_file_string(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{} {}", self.n, self.edges.len());
        for &(u, v) in &self.edges {
            let _ = writeln!(s, "{} {}", u, v);
        }
        s
    }

    /// Same graph with edge ids permuted: new edge `i` is old edge `perm[i]`.
    pub fn with_edge_order(&self, perm: &[EdgeId]) -> Result<Self, GraphError> {
        assert_eq!(perm.len(), self.edges.len());
        let edges = perm.iter().map(|&old| self.edges[old]).collect();
        Graph::new(self.n, edges)
    }
}

/// Degree counts: `counts[i]` is the number of vertices of degree exactly `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeHistogram {
    counts: std::collections::BTreeMap<usize, usize>,
    max_degree: usize,
}

impl DegreeHistogram {
    pub fn count(&self, degree: usize) -> usize {
        self.counts.get(&degree).copied().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.counts.iter().map(|(&d, &c)| (d, c))
    }
}

/// Parses the text format: line 1 is `n m`, then `m` lines `u v` with
/// 0-based endpoints. Lines starting with `#` are ignored.
pub fn parse_graph(text: &str) -> Result<Graph, GraphError> {
    let mut header: Option<(usize, usize, usize)> = None;
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut edge_lines: Vec<usize> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut it = line.split_whitespace();
        if header.is_none() {
            let n = it.next().and_then(|t| t.parse::<usize>().ok());
            let m = it.next().and_then(|t| t.parse::<usize>().ok());
            match (n, m, it.next()) {
                (Some(n), Some(m), None) => header = Some((n, m, lineno)),
                _ => return Err(GraphError::MalformedHeader { line: lineno }),
            }
        } else {
            let u = it.next().and_then(|t| t.parse::<usize>().ok());
            let v = it.next().and_then(|t| t.parse::<usize>().ok());
            match (u, v, it.next()) {
                (Some(u), Some(v), None) => {
                    edges.push((u, v));
                    edge_lines.push(lineno);
                }
                _ => return Err(GraphError::MalformedEdge { line: lineno }),
            }
        }
    }

    let (n, m, header_line) = header.ok_or(GraphError::MalformedHeader { line: 1 })?;
    if edges.len() != m {
        let _ = header_line;
        return Err(GraphError::EdgeCountMismatch { expected: m, found: edges.len() });
    }
    // Re-run simplicity checks with real line numbers for error reporting.
    let mut seen = std::collections::HashSet::new();
    for (i, &(u, v)) in edges.iter().enumerate() {
        let line = edge_lines[i];
        if u >= n || v >= n {
            let vertex = if u >= n { u } else { v };
            return Err(GraphError::EndpointOutOfRange { line, vertex, n });
        }
        if u == v {
            return Err(GraphError::Loop { line, vertex: u });
        }
        if !seen.insert((u.min(v), u.max(v))) {
            return Err(GraphError::DuplicateEdge { line, u, v });
        }
    }
    Graph::new(n, edges)
}
