//! Isolator's leaf-priority strategy: claim edges joining two leaves first,
//! then edges with one leaf endpoint, then anything.

use super::{lowest_free, Strategy, StrategyError};
use crate::game::{GameState, Player};
use crate::graph::EdgeId;

#[derive(Clone, Debug, Default)]
pub struct LeafPriorityIsolator;

impl LeafPriorityIsolator {
    pub fn new() -> Self {
        LeafPriorityIsolator
    }
}

impl Strategy for LeafPriorityIsolator {
    fn name(&self) -> String {
        "leaf_priority".to_string()
    }

    fn begin(&mut self, _state: &GameState<'_>) -> Result<(), StrategyError> {
        Ok(())
    }

    fn choose(&self, state: &GameState<'_>) -> Result<EdgeId, StrategyError> {
        let g = state.graph();
        let leaf_ends = |e: EdgeId| {
            let (u, v) = g.endpoints(e);
            (g.degree(u) == 1) as usize + (g.degree(v) == 1) as usize
        };
        for want in [2usize, 1] {
            if let Some(e) = state.free_edges().find(|&e| leaf_ends(e) == want) {
                return Ok(e);
            }
        }
        lowest_free(state)
    }

    fn observe(&mut self, _state_before: &GameState<'_>, _player: Player, _edge: EdgeId) {}
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::TurnSchedule;
    use crate::generate::{cycle, generate, star, Family};

    #[test]
    fn takes_double_leaf_edges_first() {
        // K2 components plus a P3: the K2 edges are in X, P3 edges in Y.
        let g = generate(&Family::P3ComponentsPlusP2(1)).unwrap();
        // edges: (0,1),(1,2) from the P3 (one leaf endpoint each), (3,4) the P2
        let s = GameState::new(&g, TurnSchedule::isolator_first());
        assert_eq!(LeafPriorityIsolator::new().choose(&s).unwrap(), 2);
    }

    #[test]
    fn star_edges_are_class_y() {
        let g = star(5).unwrap();
        let s = GameState::new(&g, TurnSchedule::isolator_first());
        assert_eq!(LeafPriorityIsolator::new().choose(&s).unwrap(), 0);
    }

    #[test]
    fn falls_back_to_lowest_id_without_leaves() {
        let g = cycle(5).unwrap();
        let mut s = GameState::new(&g, TurnSchedule::default());
        s.apply_move(0).unwrap();
        assert_eq!(LeafPriorityIsolator::new().choose(&s).unwrap(), 1);
    }

    #[test]
    fn odd_k2_components_keep_the_degree_count_bound() {
        // three K2 components: d0 + d1/2 - 1 = 2 untouched guaranteed
        use crate::solver::{best_response_value, SolveOptions};
        use crate::strategy::AnyStrategy;
        let g = generate(&Family::K2Components(3)).unwrap();
        let strat = AnyStrategy::LeafPriority(LeafPriorityIsolator::new());
        let r = best_response_value(
            &g,
            &TurnSchedule::default(),
            Player::Isolator,
            &strat,
            &SolveOptions::default(),
        )
        .unwrap();
        assert!(r.value >= 2);
    }
}
