//! Isolator's segment strategy on a single cycle.
//!
//! After Toucher's first move the cycle is split into a leftover segment of
//! 1..=16 edges ending at that move plus 16-edge segments; Isolator then
//! always answers in the segment Toucher just played, running the segment
//! machine there. Guarantees at least ceil(3(n-3)/16) untouched vertices.

use super::segment::{ring_of_component, CycleMachine};
use super::{max_danger_edge, Strategy, StrategyError};
use crate::game::{GameState, Player};
use crate::graph::EdgeId;

#[derive(Clone, Debug)]
pub struct CycleSegmentIsolator {
    n: usize,
    machine: Option<CycleMachine>,
    last_toucher_move: Option<EdgeId>,
}

impl CycleSegmentIsolator {
    pub fn new(n: usize) -> Self {
        CycleSegmentIsolator { n, machine: None, last_toucher_move: None }
    }
}

impl Strategy for CycleSegmentIsolator {
    fn name(&self) -> String {
        format!("cycle_segment({})", self.n)
    }

    fn begin(&mut self, state: &GameState<'_>) -> Result<(), StrategyError> {
        let g = state.graph();
        let inapplicable = |reason: &str| StrategyError::Inapplicable {
            strategy: format!("cycle_segment({})", self.n),
            reason: reason.to_string(),
        };
        if g.vertex_count() != self.n {
            return Err(inapplicable(&format!(
                "graph has {} vertices, expected {}",
                g.vertex_count(),
                self.n
            )));
        }
        let comps = g.components();
        if comps.len() != 1 {
            return Err(inapplicable("graph is not connected"));
        }
        let ring = ring_of_component(g, &comps[0])
            .ok_or_else(|| inapplicable("graph is not a cycle"))?;
        self.machine = Some(CycleMachine::new(ring));
        self.last_toucher_move = None;
        Ok(())
    }

    fn choose(&self, state: &GameState<'_>) -> Result<EdgeId, StrategyError> {
        if let (Some(machine), Some(last)) = (&self.machine, self.last_toucher_move) {
            if let Some(edge) = machine.respond(state, last) {
                return Ok(edge);
            }
        }
        max_danger_edge(state, None).ok_or(StrategyError::NoFreeEdge)
    }

    fn observe(&mut self, state_before: &GameState<'_>, player: Player, edge: EdgeId) {
        let Some(machine) = &mut self.machine else { return };
        match player {
            Player::Toucher => {
                machine.observe_toucher(edge);
                self.last_toucher_move = Some(edge);
            }
            Player::Isolator => machine.observe_own(state_before, edge),
        }
    }

    fn digest(&self, out: &mut Vec<u8>) {
        if let Some(machine) = &self.machine {
            machine.digest(out);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::{play_match, TurnSchedule};
    use crate::generate::{cycle, path};
    use crate::strategy::{MaxDangerStrategy, RandomStrategy};

    #[test]
    fn rejects_non_cycles() {
        let g = path(5).unwrap();
        let s = GameState::new(&g, TurnSchedule::default());
        assert!(CycleSegmentIsolator::new(5).begin(&s).is_err());
        let g = cycle(6).unwrap();
        let s = GameState::new(&g, TurnSchedule::default());
        assert!(CycleSegmentIsolator::new(5).begin(&s).is_err());
    }

    #[test]
    fn plays_legally_on_small_cycles() {
        for n in [3usize, 4, 5, 8] {
            let g = cycle(n).unwrap();
            for seed in 0..20 {
                let mut t = RandomStrategy::new(seed);
                let mut i = CycleSegmentIsolator::new(n);
                play_match(&g, TurnSchedule::default(), &mut t, &mut i).unwrap();
            }
        }
    }

    #[test]
    fn banks_three_on_c17_against_casual_opponents() {
        let g = cycle(17).unwrap();
        for seed in 0..30 {
            let mut t = RandomStrategy::new(seed);
            let mut i = CycleSegmentIsolator::new(17);
            let (_, untouched, _) =
                play_match(&g, TurnSchedule::default(), &mut t, &mut i).unwrap();
            assert!(untouched >= 3, "seed {} only {}", seed, untouched);
        }
        let mut t = MaxDangerStrategy::new();
        let mut i = CycleSegmentIsolator::new(17);
        let (_, untouched, _) = play_match(&g, TurnSchedule::default(), &mut t, &mut i).unwrap();
        assert!(untouched >= 3);
    }
}
