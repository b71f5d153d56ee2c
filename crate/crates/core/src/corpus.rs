//! The default verification corpus: named tight examples plus seeded
//! random connected graphs and trees.

use crate::generate::{generate, Family};
use crate::graph::Graph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const RANDOM_CONNECTED_SEED: u64 = 0xD0_6E_11;
pub const RANDOM_TREE_SEED: u64 = 0x0007_EEE5;

#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub name: String,
    pub graph: Graph,
}

impl CorpusEntry {
    fn new(name: impl Into<String>, graph: Graph) -> Self {
        CorpusEntry { name: name.into(), graph }
    }
}

pub fn complete_graph(n: usize) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            edges.push((u, v));
        }
    }
    Graph::new(n, edges).expect("complete graph is simple")
}

/// The degree-2-between-hubs gadget exercising the pair-extraction
/// refinement: vertex 0 has degree 2, its neighbours have degree 4.
pub fn refinement_gadget() -> Graph {
    Graph::new(
        9,
        vec![(0, 1), (0, 2), (1, 3), (1, 4), (1, 5), (2, 6), (2, 7), (2, 8)],
    )
    .expect("fixed gadget")
}

/// Named tight examples and special graphs from the bound analyses.
/// All fit the default solver ceiling except the 24-vertex gadget,
/// which is excluded here.
pub fn tight_examples() -> Vec<CorpusEntry> {
    let gen = |f: &Family| generate(f).expect("valid family parameters");
    let mut out = vec![
        CorpusEntry::new("k2", gen(&Family::K2Components(1))),
        CorpusEntry::new("c3", gen(&Family::Cycle(3))),
        CorpusEntry::new("c4", gen(&Family::Cycle(4))),
        CorpusEntry::new("c5", gen(&Family::Cycle(5))),
        CorpusEntry::new("c6", gen(&Family::Cycle(6))),
        CorpusEntry::new("p2", gen(&Family::Path(2))),
        CorpusEntry::new("p3", gen(&Family::Path(3))),
        CorpusEntry::new("p6", gen(&Family::Path(6))),
        CorpusEntry::new("p7", gen(&Family::Path(7))),
    ];
    for n in [3usize, 5, 7, 9] {
        out.push(CorpusEntry::new(format!("star{}", n), gen(&Family::Star(n))));
    }
    for c in 1..=3 {
        out.push(CorpusEntry::new(
            format!("k2_components{}", c),
            gen(&Family::K2Components(c)),
        ));
    }
    for x in 0..=3 {
        out.push(CorpusEntry::new(
            format!("p3x{}_plus_p2", x),
            gen(&Family::P3ComponentsPlusP2(x)),
        ));
    }
    for c in 1..=3 {
        out.push(CorpusEntry::new(
            format!("c3_components{}", c),
            gen(&Family::C3Components(c)),
        ));
    }
    for c in 1..=3 {
        out.push(CorpusEntry::new(
            format!("c4_components{}", c),
            gen(&Family::C4Components(c)),
        ));
    }
    for c in 1..=2 {
        out.push(CorpusEntry::new(
            format!("k4_components{}", c),
            gen(&Family::K4Components(c)),
        ));
    }
    out.push(CorpusEntry::new("k5", complete_graph(5)));
    out.push(CorpusEntry::new("refinement_gadget", refinement_gadget()));
    out
}

/// Seeded random connected graphs with at most `max_edges` edges.
pub fn random_connected(count: usize, seed: u64, max_edges: usize) -> Vec<CorpusEntry> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    for i in 0..count {
        let n = rng.gen_range(3..=9usize);
        let all_pairs = n * (n - 1) / 2;
        let m_target = rng.gen_range(n - 1..=max_edges.min(all_pairs));
        let mut edges: Vec<(usize, usize)> = (1..n).map(|v| (rng.gen_range(0..v), v)).collect();
        let mut present: std::collections::HashSet<(usize, usize)> = edges
            .iter()
            .map(|&(u, v)| (u.min(v), u.max(v)))
            .collect();
        while edges.len() < m_target {
            let u = rng.gen_range(0..n);
            let v = rng.gen_range(0..n);
            if u == v {
                continue;
            }
            let key = (u.min(v), u.max(v));
            if present.insert(key) {
                edges.push((u, v));
            }
        }
        let graph = Graph::new(n, edges).expect("simple by construction");
        debug_assert!(graph.is_connected());
        out.push(CorpusEntry::new(format!("rand_conn_{:02}", i), graph));
    }
    out
}

/// Seeded random trees with at most `max_edges` edges.
pub fn random_trees(count: usize, seed: u64, max_edges: usize) -> Vec<CorpusEntry> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    for i in 0..count {
        let n = rng.gen_range(2..=max_edges + 1);
        let edges: Vec<(usize, usize)> = (1..n).map(|v| (rng.gen_range(0..v), v)).collect();
        let graph = Graph::new(n, edges).expect("simple by construction");
        out.push(CorpusEntry::new(format!("rand_tree_{:02}", i), graph));
    }
    out
}

/// The default manifest: all tight examples, 50 random connected graphs
/// with at most 14 edges, 20 random trees with at most 15 edges.
pub fn default_corpus() -> Vec<CorpusEntry> {
    let mut out = tight_examples();
    out.extend(random_connected(50, RANDOM_CONNECTED_SEED, 14));
    out.extend(random_trees(20, RANDOM_TREE_SEED, 15));
    out
}
