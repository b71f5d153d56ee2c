//! Graph family generators with deterministic, documented numbering.

use crate::graph::{Graph, GraphError};

/// A named graph family with parameters.
///
/// Numbering conventions (fixed so traces are reproducible):
/// - `Cycle(n)`: vertices `0..n`, edge `i` joins `i` and `(i+1) % n`.
/// - `Path(n)`: vertices `0..n`, edge `i` joins `i` and `i+1`.
/// - `Star(n)`: centre `0`, edge `i` joins `0` and `i+1`.
/// - component families lay blocks out left to right, each block numbered
///   internally like its standalone generator.
/// - `Circulant(n, offsets)`: for each offset `d` in the order given, edges
///   `(i, (i+d) mod n)` for `i = 0..n`, skipping pairs already present.
/// - `Gadget24`: see [`gadget24`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Family {
    Cycle(usize),
    Path(usize),
    Star(usize),
    K2Components(usize),
    P3ComponentsPlusP2(usize),
    C3Components(usize),
    C4Components(usize),
    K4Components(usize),
    Circulant(usize, Vec<usize>),
    Gadget24,
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Cycle(_) => "cycle",
            Family::Path(_) => "path",
            Family::Star(_) => "star",
            Family::K2Components(_) => "k2_components",
            Family::P3ComponentsPlusP2(_) => "p3_components_plus_p2",
            Family::C3Components(_) => "c3_components",
            Family::C4Components(_) => "c4_components",
            Family::K4Components(_) => "k4_components",
            Family::Circulant(_, _) => "circulant",
            Family::Gadget24 => "gadget24",
        }
    }
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Family::Cycle(n) | Family::Path(n) | Family::Star(n) => {
                write!(f, "{}({})", self.name(), n)
            }
            Family::K2Components(c)
            | Family::P3ComponentsPlusP2(c)
            | Family::C3Components(c)
            | Family::C4Components(c)
            | Family::K4Components(c) => write!(f, "{}({})", self.name(), c),
            Family::Circulant(n, offsets) => {
                let list: Vec<String> = offsets.iter().map(|d| d.to_string()).collect();
                write!(f, "circulant({};{})", n, list.join(","))
            }
            Family::Gadget24 => write!(f, "gadget24"),
        }
    }
}

fn invalid(family: &str, reason: impl Into<String>) -> GraphError {
    GraphError::InvalidParameter { family: family.to_string(), reason: reason.into() }
}

/// Generates a member of `family`. Deterministic: equal parameters always
/// produce identical edge lists.
pub fn generate(family: &Family) -> Result<Graph, GraphError> {
    match family {
        Family::Cycle(n) => cycle(*n),
        Family::Path(n) => path(*n),
        Family::Star(n) => star(*n),
        Family::K2Components(c) => blocks("k2_components", *c, 2, &[(0, 1)]),
        Family::P3ComponentsPlusP2(x) => p3_components_plus_p2(*x),
        Family::C3Components(c) => blocks("c3_components", *c, 3, &[(0, 1), (1, 2), (2, 0)]),
        Family::C4Components(c) => {
            blocks("c4_components", *c, 4, &[(0, 1), (1, 2), (2, 3), (3, 0)])
        }
        Family::K4Components(c) => blocks(
            "k4_components",
            *c,
            4,
            &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)],
        ),
        Family::Circulant(n, offsets) => circulant(*n, offsets),
        Family::Gadget24 => Ok(gadget24()),
    }
}

pub fn cycle(n: usize) -> Result<Graph, GraphError> {
    if n < 3 {
        return Err(invalid("cycle", format!("need n >= 3, got {}", n)));
    }
    let edges = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::new(n, edges)
}

pub fn path(n: usize) -> Result<Graph, GraphError> {
    if n < 1 {
        return Err(invalid("path", "need n >= 1"));
    }
    let edges = (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect();
    Graph::new(n, edges)
}

pub fn star(n: usize) -> Result<Graph, GraphError> {
    if n < 2 {
        return Err(invalid("star", format!("need n >= 2, got {}", n)));
    }
    let edges = (1..n).map(|i| (0, i)).collect();
    Graph::new(n, edges)
}

fn blocks(
    family: &str,
    count: usize,
    block_n: usize,
    block_edges: &[(usize, usize)],
) -> Result<Graph, GraphError> {
    if count < 1 {
        return Err(invalid(family, format!("need at least 1 component, got {}", count)));
    }
    let mut edges = Vec::with_capacity(count * block_edges.len());
    for b in 0..count {
        let base = b * block_n;
        for &(u, v) in block_edges {
            edges.push((base + u, base + v));
        }
    }
    Graph::new(count * block_n, edges)
}

fn p3_components_plus_p2(x: usize) -> Result<Graph, GraphError> {
    // x P3 blocks first (vertices 3i..3i+2), then one P2 (3x, 3x+1).
    let n = 3 * x + 2;
    let mut edges = Vec::with_capacity(2 * x + 1);
    for i in 0..x {
        edges.push((3 * i, 3 * i + 1));
        edges.push((3 * i + 1, 3 * i + 2));
    }
    edges.push((3 * x, 3 * x + 1));
    Graph::new(n, edges)
}

fn circulant(n: usize, offsets: &[usize]) -> Result<Graph, GraphError> {
    if n < 3 {
        return Err(invalid("circulant", format!("need n >= 3, got {}", n)));
    }
    if offsets.is_empty() {
        return Err(invalid("circulant", "need at least one offset"));
    }
    let mut seen = std::collections::HashSet::new();
    let mut edges = Vec::new();
    for &d in offsets {
        if d == 0 || d % n == 0 {
            return Err(invalid("circulant", format!("offset {} is a loop modulo n", d)));
        }
        for i in 0..n {
            let j = (i + d) % n;
            let key = (i.min(j), i.max(j));
            if seen.insert(key) {
                edges.push((i, j));
            }
        }
    }
    Graph::new(n, edges)
}

/// The 24-vertex, 36-edge, 3-regular graph built from three copies of an
/// 8-vertex block joined pairwise by single edges.
///
/// Each block is a 5-cycle `v1 v2 v5 v3 v4` with an inner triangle
/// `u1 u2 u3` and spokes `u1-v3`, `u2-v1`, `u3-v2`. Block `b` occupies
/// vertices `8b..8b+8` in label order `v1 v2 v3 v4 v5 u1 u2 u3`, and its
/// eleven edges come first in the order:
/// cycle `(v1,v2) (v2,v5) (v5,v3) (v3,v4) (v4,v1)`,
/// triangle `(u1,u2) (u2,u3) (u3,u1)`,
/// spokes `(u1,v3) (u2,v1) (u3,v2)`.
/// The three connector edges are appended last, each joining the two
/// degree-two cycle vertices (`v4` towards the previous block, `v5`
/// towards the next): `e12 = (block0.v5, block1.v4)`,
/// `e13 = (block0.v4, block2.v5)`, `e23 = (block1.v5, block2.v4)`.
pub fn gadget24() -> Graph {
    // local labels: v1=0 v2=1 v3=2 v4=3 v5=4 u1=5 u2=6 u3=7
    const BLOCK: [(usize, usize); 11] = [
        (0, 1), // v1 v2
        (1, 4), // v2 v5
        (4, 2), // v5 v3
        (2, 3), // v3 v4
        (3, 0), // v4 v1
        (5, 6), // u1 u2
        (6, 7), // u2 u3
        (7, 5), // u3 u1
        (5, 2), // u1 v3
        (6, 0), // u2 v1
        (7, 1), // u3 v2
    ];
    let mut edges = Vec::with_capacity(36);
    for b in 0..3 {
        let base = 8 * b;
        for &(u, v) in BLOCK.iter() {
            edges.push((base + u, base + v));
        }
    }
    let v4 = |b: usize| 8 * b + 3;
    let v5 = |b: usize| 8 * b + 4;
    edges.push((v5(0), v4(1))); // e12
    edges.push((v4(0), v5(2))); // e13
    edges.push((v5(1), v4(2))); // e23
    Graph::new(24, edges).expect("gadget24 construction is fixed")
}

/// Edge ids of the gadget's three connector edges `(e12, e13, e23)`.
pub fn gadget24_connectors() -> (usize, usize, usize) {
    (33, 34, 35)
}

/// Parses strings like `cycle(5)`, `circulant(8;1,2)` or `gadget24`.
pub fn parse_family(text: &str) -> Result<Family, GraphError> {
    let text = text.trim();
    let (name, args) = match text.find('(') {
        Some(open) => {
            if !text.ends_with(')') {
                return Err(invalid(text, "unbalanced parentheses"));
            }
            (&text[..open], &text[open + 1..text.len() - 1])
        }
        None => (text, ""),
    };
    let int = |s: &str| -> Result<usize, GraphError> {
        s.trim()
            .parse::<usize>()
            .map_err(|_| invalid(name, format!("bad integer argument {:?}", s)))
    };
    match name {
        "cycle" => Ok(Family::Cycle(int(args)?)),
        "path" => Ok(Family::Path(int(args)?)),
        "star" => Ok(Family::Star(int(args)?)),
        "k2_components" => Ok(Family::K2Components(int(args)?)),
        "p3_components_plus_p2" => Ok(Family::P3ComponentsPlusP2(int(args)?)),
        "c3_components" => Ok(Family::C3Components(int(args)?)),
        "c4_components" => Ok(Family::C4Components(int(args)?)),
        "k4_components" => Ok(Family::K4Components(int(args)?)),
        "circulant" => {
            let (n, rest) = args
                .split_once(';')
                .ok_or_else(|| invalid("circulant", "expected circulant(n;d1,d2,...)"))?;
            let offsets = rest
                .split(',')
                .map(int)
                .collect::<Result<Vec<_>, _>>()?;
            Ok(Family::Circulant(int(n)?, offsets))
        }
        "gadget24" => Ok(Family::Gadget24),
        _ => Err(invalid(name, "unknown family")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_shape() {
        let g = cycle(4).unwrap();
        assert_eq!(g.vertex_count(), 4);
        assert_eq!(g.edge_count(), 4);
        assert!(g.is_regular(2));
        assert!(cycle(2).is_err());
    }

    #[test]
    fn star_histogram() {
        let g = star(7).unwrap();
        let h = g.degree_histogram();
        assert_eq!(h.count(1), 6);
        assert_eq!(h.count(6), 1);
    }

    #[test]
    fn path_edge_cases() {
        assert_eq!(path(1).unwrap().edge_count(), 0);
        assert_eq!(path(2).unwrap().edge_count(), 1);
        assert!(path(0).is_err());
    }

    #[test]
    fn component_families() {
        let g = generate(&Family::K2Components(3)).unwrap();
        assert_eq!(g.vertex_count(), 6);
        assert_eq!(g.edge_count(), 3);
        let g = generate(&Family::P3ComponentsPlusP2(2)).unwrap();
        assert_eq!(g.vertex_count(), 8);
        assert_eq!(g.edge_count(), 5);
        let g = generate(&Family::K4Components(2)).unwrap();
        assert_eq!(g.edge_count(), 12);
        assert!(g.is_regular(3));
    }

    #[test]
    fn circulant_c8_12() {
        let g = generate(&Family::Circulant(8, vec![1, 2])).unwrap();
        assert_eq!(g.vertex_count(), 8);
        assert_eq!(g.edge_count(), 16);
        assert!(g.is_regular(4));
    }

    #[test]
    fn gadget_is_3_regular_with_24_vertices() {
        let g = gadget24();
        assert_eq!(g.vertex_count(), 24);
        assert_eq!(g.edge_count(), 36);
        assert!(g.is_regular(3));
        assert!(g.is_connected());
    }

    #[test]
    fn generate_is_deterministic() {
        let a = generate(&Family::Circulant(9, vec![1, 3])).unwrap();
        let b = generate(&Family::Circulant(9, vec![1, 3])).unwrap();
        assert_eq!(a.edges(), b.edges());
    }

    #[test]
    fn degree_sum_is_twice_edge_count_for_all_families() {
        for fam in [
            Family::Cycle(6),
            Family::Path(5),
            Family::Star(8),
            Family::K2Components(3),
            Family::P3ComponentsPlusP2(2),
            Family::C3Components(2),
            Family::C4Components(2),
            Family::K4Components(2),
            Family::Circulant(9, vec![1, 3]),
            Family::Gadget24,
        ] {
            let g = generate(&fam).unwrap();
            let sum: usize = (0..g.vertex_count()).map(|v| g.degree(v)).sum();
            assert_eq!(sum, 2 * g.edge_count(), "{:?}", fam);
            let hist = g.degree_histogram();
            let hist_n: usize = hist.iter().map(|(_, c)| c).sum();
            let hist_sum: usize = hist.iter().map(|(d, c)| d * c).sum();
            assert_eq!(hist_n, g.vertex_count(), "{:?}", fam);
            assert_eq!(hist_sum, 2 * g.edge_count(), "{:?}", fam);
        }
    }

    #[test]
    fn family_parsing() {
        assert_eq!(parse_family("cycle(5)").unwrap(), Family::Cycle(5));
        assert_eq!(
            parse_family("circulant(8;1,2)").unwrap(),
            Family::Circulant(8, vec![1, 2])
        );
        assert_eq!(parse_family("gadget24").unwrap(), Family::Gadget24);
        assert!(parse_family("blancmange(3)").is_err());
    }
}
