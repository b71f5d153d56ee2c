//! Toucher's Eulerian pairing strategy.
//!
//! Construction: orient the graph via [`crate::orientation::eulerian_orientation`],
//! give every vertex with two or more incoming edges a dedicated pair of its
//! incoming edges, then pool the single incoming edges of vertices of degree
//! one to three and pair those up across vertices, lowest edge id first. An
//! odd pool leaves one unpaired edge, which becomes the strategy's forced
//! first move. Because each edge is incoming at exactly one vertex, all pairs
//! are pairwise disjoint.
//!
//! Play: if the opponent's last move hit a pair whose partner is still free,
//! claim the partner; otherwise claim the lowest-id free edge.

use super::{lowest_free, Strategy, StrategyError};
use crate::game::{GameState, Player};
use crate::graph::{EdgeId, Graph};
use crate::orientation::eulerian_orientation;

/// Which side of the orientation backs the pairs. The incoming variant is
/// the default; the outgoing variant exists for the averaging argument that
/// combines the two per-variant guarantees.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairingVariant {
    Incoming,
    Outgoing,
}

#[derive(Clone, Debug)]
pub struct PairingToucher {
    variant: PairingVariant,
    pairs: Vec<(EdgeId, EdgeId)>,
    partner: Vec<Option<EdgeId>>,
    forced_first: Option<EdgeId>,
    moves_by: [usize; 2],
    last_move_by: [Option<EdgeId>; 2],
}

fn side(p: Player) -> usize {
    match p {
        Player::Toucher => 0,
        Player::Isolator => 1,
    }
}

impl PairingToucher {
    pub fn new(graph: &Graph) -> Self {
        Self::with_variant(graph, PairingVariant::Incoming)
    }

    pub fn with_variant(graph: &Graph, variant: PairingVariant) -> Self {
        let mut s = PairingToucher {
            variant,
            pairs: Vec::new(),
            partner: Vec::new(),
            forced_first: None,
            moves_by: [0; 2],
            last_move_by: [None; 2],
        };
        s.build(graph);
        s
    }

    fn build(&mut self, graph: &Graph) {
        let orientation = eulerian_orientation(graph);
        let dedicated = |v: usize| -> Vec<EdgeId> {
            match self.variant {
                PairingVariant::Incoming => orientation.incoming(graph, v),
                PairingVariant::Outgoing => orientation.outgoing(graph, v),
            }
        };
        self.pairs.clear();
        self.partner = vec![None; graph.edge_count()];
        let mut pool = Vec::new();
        for v in 0..graph.vertex_count() {
            let own = dedicated(v);
            if own.len() >= 2 {
                self.pairs.push((own[0], own[1]));
            } else if own.len() == 1 && (1..=3).contains(&graph.degree(v)) {
                pool.push(own[0]);
            }
        }
        pool.sort_unstable();
        for chunk in pool.chunks(2) {
            if let [a, b] = *chunk {
                self.pairs.push((a, b));
            }
        }
        self.forced_first = (pool.len() % 2 == 1).then(|| pool[pool.len() - 1]);
        for &(a, b) in &self.pairs {
            self.partner[a] = Some(b);
            self.partner[b] = Some(a);
        }
        self.moves_by = [0; 2];
        self.last_move_by = [None; 2];
    }

    /// The constructed pairs, for inspection and tests.
    pub fn pairs(&self) -> &[(EdgeId, EdgeId)] {
        &self.pairs
    }

    pub fn forced_first(&self) -> Option<EdgeId> {
        self.forced_first
    }
}

impl Strategy for PairingToucher {
    fn name(&self) -> String {
        match self.variant {
            PairingVariant::Incoming => "pairing".to_string(),
            PairingVariant::Outgoing => "pairing_outgoing".to_string(),
        }
    }

    fn begin(&mut self, state: &GameState<'_>) -> Result<(), StrategyError> {
        self.build(state.graph());
        Ok(())
    }

    fn choose(&self, state: &GameState<'_>) -> Result<EdgeId, StrategyError> {
        let me = state.whose_turn().map_err(|_| StrategyError::NoFreeEdge)?;
        if self.moves_by[side(me)] == 0 {
            if let Some(first) = self.forced_first {
                if state.is_free(first) {
                    return Ok(first);
                }
            }
        }
        if let Some(opp) = self.last_move_by[side(me.other())] {
            if let Some(p) = self.partner[opp] {
                if state.is_free(p) {
                    return Ok(p);
                }
            }
        }
        lowest_free(state)
    }

    fn observe(&mut self, _state_before: &GameState<'_>, player: Player, edge: EdgeId) {
        self.moves_by[side(player)] += 1;
        self.last_move_by[side(player)] = Some(edge);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::{play_match, TurnSchedule};
    use crate::generate::{cycle, generate, Family};
    use crate::strategy::RandomStrategy;

    fn k5() -> Graph {
        let mut edges = Vec::new();
        for u in 0..5 {
            for v in (u + 1)..5 {
                edges.push((u, v));
            }
        }
        Graph::new(5, edges).unwrap()
    }

    #[test]
    fn pairs_are_disjoint() {
        for g in [k5(), cycle(6).unwrap(), generate(&Family::Gadget24).unwrap()] {
            let s = PairingToucher::new(&g);
            let mut seen = std::collections::HashSet::new();
            for &(a, b) in s.pairs() {
                assert!(seen.insert(a), "edge {} in two pairs", a);
                assert!(seen.insert(b), "edge {} in two pairs", b);
            }
        }
    }

    #[test]
    fn k5_pairs_cover_every_vertex() {
        // All degrees 4, so every vertex owns a dedicated incoming pair and
        // the pairing covers all ten edges.
        let g = k5();
        let s = PairingToucher::new(&g);
        assert_eq!(s.pairs().len(), 5);
        assert_eq!(s.forced_first(), None);
    }

    #[test]
    fn c4_pairs_all_edges() {
        let g = cycle(4).unwrap();
        let s = PairingToucher::new(&g);
        assert_eq!(s.pairs().len(), 2);
        assert_eq!(s.forced_first(), None);
    }

    #[test]
    fn k2_forces_first_move() {
        let g = Graph::new(2, vec![(0, 1)]).unwrap();
        let strat = PairingToucher::new(&g);
        assert_eq!(strat.forced_first(), Some(0));
        let mut t = strat;
        let mut i = RandomStrategy::new(1);
        let (_, untouched, log) =
            play_match(&g, TurnSchedule::default(), &mut t, &mut i).unwrap();
        assert_eq!(untouched, 0);
        assert_eq!(log[0].edge, 0);
    }

    #[test]
    fn k5_touches_everyone_against_random() {
        let g = k5();
        for seed in 0..50 {
            let mut t = PairingToucher::new(&g);
            let mut i = RandomStrategy::new(seed);
            let (_, untouched, _) =
                play_match(&g, TurnSchedule::default(), &mut t, &mut i).unwrap();
            assert_eq!(untouched, 0, "seed {}", seed);
        }
    }

    #[test]
    fn dedicated_pairs_cover_high_degree_and_balanced_degree_3() {
        use crate::orientation::eulerian_orientation;
        let g = generate(&Family::Gadget24).unwrap();
        let o = eulerian_orientation(&g);
        let s = PairingToucher::new(&g);
        let in_pair: std::collections::HashSet<_> =
            s.pairs().iter().flat_map(|&(a, b)| [a, b]).collect();
        for v in 0..g.vertex_count() {
            let incoming = o.incoming(&g, v);
            if g.degree(v) >= 4 || (g.degree(v) == 3 && incoming.len() == 2) {
                let covered = incoming.iter().filter(|e| in_pair.contains(e)).count();
                assert!(covered >= 2, "vertex {} lacks a dedicated pair", v);
            }
        }
    }
}
