//! Exact best-response search against a fixed deterministic strategy.
//!
//! One side is replaced by the strategy; the other side is searched
//! exhaustively. Positions where the searching side moves are memoized on
//! (packed ownership, strategy digest): the digest covers whatever internal
//! strategy state the board does not determine, so equal keys really are
//! equal futures.

use super::{BestMove, FxBuild, SolveError, SolveOptions, SolveResult};
use crate::game::{GameState, Player, TurnSchedule};
use crate::graph::{EdgeId, Graph};
use crate::strategy::{AnyStrategy, Strategy};
use std::collections::HashMap;
use std::time::Instant;

struct BrSearch<'g> {
    state: GameState<'g>,
    packed: u64,
    fixed_player: Player,
    memo: HashMap<(u64, u32), u16, FxBuild>,
    digests: HashMap<Vec<u8>, u32, FxBuild>,
    digest_buf: Vec<u8>,
    nodes: u64,
    hits: u64,
    opts: SolveOptions,
}

impl<'g> BrSearch<'g> {
    fn apply(&mut self, e: EdgeId) {
        let player = self.state.apply_move(e).expect("legal move");
        let code = match player {
            Player::Toucher => 1u64,
            Player::Isolator => 2u64,
        };
        self.packed |= code << (2 * e);
    }

    fn undo(&mut self, e: EdgeId) {
        self.state.undo_move(e);
        self.packed &= !(3u64 << (2 * e));
    }

    fn digest_id(&mut self, strategy: &AnyStrategy) -> u32 {
        self.digest_buf.clear();
        strategy.digest(&mut self.digest_buf);
        if let Some(&id) = self.digests.get(&self.digest_buf) {
            return id;
        }
        let id = self.digests.len() as u32;
        self.digests.insert(self.digest_buf.clone(), id);
        id
    }

    fn run(&mut self, mut strategy: AnyStrategy) -> Result<u16, SolveError> {
        if self.state.is_terminal() {
            return Ok(self.state.untouched_count().expect("terminal") as u16);
        }
        let mover = self
            .state
            .schedule()
            .player_at(self.state.moves_made());
        if mover == self.fixed_player {
            let edge = strategy.choose(&self.state)?;
            if edge >= self.state.graph().edge_count() || !self.state.is_free(edge) {
                return Err(SolveError::StrategyIllegalMove {
                    edge,
                    ply: self.state.moves_made(),
                });
            }
            strategy.observe(&self.state, mover, edge);
            self.apply(edge);
            let v = self.run(strategy);
            self.undo(edge);
            return v;
        }

        let key = (self.packed, self.digest_id(&strategy));
        if let Some(&v) = self.memo.get(&key) {
            self.hits += 1;
            return Ok(v);
        }
        self.nodes += 1;
        if self.nodes > self.opts.node_budget {
            return Err(SolveError::NodeBudgetExceeded { budget: self.opts.node_budget });
        }
        let maximizing = mover == Player::Isolator;
        // hard bounds at this position: vertices already all-Isolator stay
        // untouched, vertices already touched stay touched
        let lo = self.state.isolated_so_far() as u16;
        let hi = self.state.not_yet_touched() as u16;
        let mut best: Option<u16> = None;
        let free: Vec<EdgeId> = self.state.free_edges().collect();
        for e in free {
            let mut branch = strategy.clone();
            branch.observe(&self.state, mover, e);
            self.apply(e);
            let v = self.run(branch)?;
            self.undo(e);
            best = Some(match best {
                None => v,
                Some(b) if maximizing => b.max(v),
                Some(b) => b.min(v),
            });
            let b = best.unwrap();
            if (maximizing && b >= hi) || (!maximizing && b <= lo) {
                break;
            }
        }
        let value = best.expect("non-terminal position has moves");
        if self.memo.len() >= self.opts.table_cap {
            return Err(SolveError::TableCapExceeded { cap: self.opts.table_cap });
        }
        self.memo.insert(key, value);
        Ok(value)
    }
}

/// Value of the game when `fixed_player` plays `strategy` and the other
/// side plays exhaustively optimally. `best_move` reports the root move:
/// the searcher's optimal choice, or the strategy's own reply when the
/// fixed side moves first.
pub fn best_response_value(
    graph: &Graph,
    schedule: &TurnSchedule,
    fixed_player: Player,
    strategy: &AnyStrategy,
    opts: &SolveOptions,
) -> Result<SolveResult, SolveError> {
    let start = Instant::now();
    let mut search = BrSearch {
        state: GameState::new(graph, schedule.clone()),
        packed: 0,
        fixed_player,
        memo: HashMap::default(),
        digests: HashMap::default(),
        digest_buf: Vec::new(),
        nodes: 0,
        hits: 0,
        opts: opts.clone(),
    };
    let mut strategy = strategy.clone();
    strategy.begin(&search.state)?;

    if search.state.is_terminal() {
        return Ok(SolveResult {
            value: graph.vertex_count(),
            best_move: None,
            nodes_expanded: 0,
            table_hits: 0,
            elapsed: start.elapsed(),
        });
    }

    let mover = schedule.player_at(0);
    let (value, best_move) = if mover == fixed_player {
        let edge = strategy.choose(&search.state)?;
        if !search.state.is_free(edge) {
            return Err(SolveError::StrategyIllegalMove { edge, ply: 0 });
        }
        strategy.observe(&search.state, mover, edge);
        search.apply(edge);
        let v = search.run(strategy)?;
        (v, Some(BestMove::Edge(edge)))
    } else {
        let maximizing = mover == Player::Isolator;
        let mut best: Option<(u16, EdgeId)> = None;
        let free: Vec<EdgeId> = search.state.free_edges().collect();
        for e in free {
            let mut branch = strategy.clone();
            branch.observe(&search.state, mover, e);
            search.apply(e);
            let v = search.run(branch)?;
            search.undo(e);
            let better = match best {
                None => true,
                Some((b, _)) => {
                    if maximizing {
                        v > b
                    } else {
                        v < b
                    }
                }
            };
            if better {
                best = Some((v, e));
            }
        }
        let (v, e) = best.expect("non-terminal");
        (v, Some(BestMove::Edge(e)))
    };

    Ok(SolveResult {
        value: value as usize,
        best_move,
        nodes_expanded: search.nodes,
        table_hits: search.hits,
        elapsed: start.elapsed(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{generate, path, Family};
    use crate::solver::solve_exact;
    use crate::strategy::{build_strategy, MaxDangerStrategy};

    #[test]
    fn fixed_toucher_bounds_value_from_above() {
        // an optimal Isolator against any fixed Toucher does at least as
        // well as against an optimal Toucher
        for fam in [Family::Path(5), Family::Star(5), Family::C3Components(1)] {
            let g = generate(&fam).unwrap();
            let sched = TurnSchedule::default();
            let opts = SolveOptions::default();
            let exact = solve_exact(&g, &sched, &opts).unwrap().value;
            let strat = AnyStrategy::MaxDanger(MaxDangerStrategy::new());
            let vs_fixed_t =
                best_response_value(&g, &sched, Player::Toucher, &strat, &opts).unwrap().value;
            let vs_fixed_i =
                best_response_value(&g, &sched, Player::Isolator, &strat, &opts).unwrap().value;
            assert!(vs_fixed_t >= exact, "{:?}", fam);
            assert!(vs_fixed_i <= exact, "{:?}", fam);
        }
    }

    #[test]
    fn pairing_on_k5_concedes_nothing() {
        let mut edges = Vec::new();
        for u in 0..5 {
            for v in (u + 1)..5 {
                edges.push((u, v));
            }
        }
        let g = Graph::new(5, edges).unwrap();
        let strat = build_strategy("pairing", &g).unwrap();
        let r = best_response_value(
            &g,
            &TurnSchedule::default(),
            Player::Toucher,
            &strat,
            &SolveOptions::default(),
        )
        .unwrap();
        assert_eq!(r.value, 0);
    }

    #[test]
    fn max_danger_isolator_on_p6_keeps_one() {
        let g = path(6).unwrap();
        let strat = AnyStrategy::MaxDanger(MaxDangerStrategy::new());
        let r = best_response_value(
            &g,
            &TurnSchedule::default(),
            Player::Isolator,
            &strat,
            &SolveOptions::default(),
        )
        .unwrap();
        assert!(r.value >= 1);
    }
}
