//! The max-Danger strategy: always claim the free edge whose endpoint
//! Dangers sum highest. Used by both players — Toucher to destroy the most
//! potential per move, Isolator to bank the most.

use super::{max_danger_edge, Strategy, StrategyError};
use crate::game::{GameState, Player};
use crate::graph::EdgeId;

#[derive(Clone, Debug, Default)]
pub struct MaxDangerStrategy;

impl MaxDangerStrategy {
    pub fn new() -> Self {
        MaxDangerStrategy
    }
}

impl Strategy for MaxDangerStrategy {
    fn name(&self) -> String {
        "max_danger".to_string()
    }

    fn begin(&mut self, _state: &GameState<'_>) -> Result<(), StrategyError> {
        Ok(())
    }

    fn choose(&self, state: &GameState<'_>) -> Result<EdgeId, StrategyError> {
        max_danger_edge(state, None).ok_or(StrategyError::NoFreeEdge)
    }

    fn observe(&mut self, _state_before: &GameState<'_>, _player: Player, _edge: EdgeId) {}
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::TurnSchedule;
    use crate::generate::{generate, path, star, Family};

    #[test]
    fn tie_break_is_lowest_id() {
        // fresh star(5): every edge ties at 1/2 + 1/16
        let g = star(5).unwrap();
        let s = GameState::new(&g, TurnSchedule::default());
        assert_eq!(MaxDangerStrategy::new().choose(&s).unwrap(), 0);

        let g = path(3).unwrap();
        let s = GameState::new(&g, TurnSchedule::default());
        assert_eq!(MaxDangerStrategy::new().choose(&s).unwrap(), 0);
    }

    #[test]
    fn prefers_the_hot_vertex() {
        // On P4, after Isolator owns edge 0, vertex 1 has danger 1/2 and
        // edge 1 scores 1/2 + 1/4 against edge 2's 1/4 + 1/2... both tie;
        // build a sharper case: star(4) where Isolator took two spokes.
        let g = star(4).unwrap();
        let mut s = GameState::new(
            &g,
            TurnSchedule::new(vec![Player::Isolator, Player::Isolator], Player::Toucher),
        );
        s.apply_move(0).unwrap();
        s.apply_move(1).unwrap();
        // centre now has danger 1/2; edge 2 is its only free edge.
        assert_eq!(MaxDangerStrategy::new().choose(&s).unwrap(), 2);
    }

    #[test]
    fn isolator_response_on_p3() {
        // After Toucher takes edge 0 of P3, only edge 1 remains.
        let g = path(3).unwrap();
        let mut s = GameState::new(&g, TurnSchedule::default());
        s.apply_move(0).unwrap();
        assert_eq!(MaxDangerStrategy::new().choose(&s).unwrap(), 1);
    }

    #[test]
    fn argmax_invariant_under_common_scaling() {
        // Scaling every Danger by one power of two cannot change the argmax;
        // check indirectly: the chosen edge on a graph is stable when we
        // recompute with scaled scores.
        let g = generate(&Family::C3Components(2)).unwrap();
        let state = GameState::new(&g, TurnSchedule::default());
        let chosen = MaxDangerStrategy::new().choose(&state).unwrap();
        let mut best: Option<(crate::dyadic::DyadicValue, usize)> = None;
        for e in state.free_edges() {
            let (x, y) = g.endpoints(e);
            let score = (state.danger(x).unwrap() + state.danger(y).unwrap()).scale_pow2(3);
            if best.as_ref().is_none_or(|(s, _)| score > *s) {
                best = Some((score, e));
            }
        }
        assert_eq!(best.unwrap().1, chosen);
    }
}
