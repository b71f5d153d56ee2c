//! Game state, turn scheduling, the Danger potential, and match driving.

use crate::dyadic::DyadicValue;
use crate::graph::{EdgeId, Graph, VertexId};
use serde::Serialize;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Player {
    Toucher,
    Isolator,
}

impl Player {
    pub fn other(self) -> Player {
        match self {
            Player::Toucher => Player::Isolator,
            Player::Isolator => Player::Toucher,
        }
    }

    pub fn letter(self) -> char {
        match self {
            Player::Toucher => 'T',
            Player::Isolator => 'I',
        }
    }
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Ownership {
    Free,
    Owned(Player),
}

/// Assigns a player to every move index: an explicit prefix, then strict
/// alternation starting from a given player.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TurnSchedule {
    prefix: Vec<Player>,
    alternating_from: Player,
}

impl TurnSchedule {
    pub fn new(prefix: Vec<Player>, alternating_from: Player) -> Self {
        TurnSchedule { prefix, alternating_from }
    }

    /// The standard game: no prefix, Toucher first, strict alternation.
    pub fn toucher_first() -> Self {
        TurnSchedule { prefix: Vec::new(), alternating_from: Player::Toucher }
    }

    pub fn isolator_first() -> Self {
        TurnSchedule { prefix: Vec::new(), alternating_from: Player::Isolator }
    }

    pub fn player_at(&self, move_index: usize) -> Player {
        if let Some(&p) = self.prefix.get(move_index) {
            return p;
        }
        let rest = move_index - self.prefix.len();
        if rest.is_multiple_of(2) {
            self.alternating_from
        } else {
            self.alternating_from.other()
        }
    }

    /// Number of moves assigned to `player` among the first `count` moves.
    pub fn moves_for(&self, player: Player, count: usize) -> usize {
        (0..count).filter(|&i| self.player_at(i) == player).count()
    }
}

impl Default for TurnSchedule {
    fn default() -> Self {
        TurnSchedule::toucher_first()
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GameError {
    #[error("edge {0} out of range")]
    EdgeOutOfRange(EdgeId),
    #[error("edge {0} is already claimed")]
    EdgeAlreadyClaimed(EdgeId),
    #[error("vertex {0} out of range")]
    VertexOutOfRange(VertexId),
    #[error("state is terminal")]
    Terminal,
    #[error("state is not terminal")]
    NotTerminal,
}

/// Per-edge ownership over a graph, plus derived per-vertex counters that
/// make Danger queries O(1).
#[derive(Debug, Clone)]
pub struct GameState<'g> {
    graph: &'g Graph,
    schedule: TurnSchedule,
    ownership: Vec<Ownership>,
    moves_made: usize,
    free_deg: Vec<u16>,
    toucher_cnt: Vec<u16>,
}

impl<'g> GameState<'g> {
    pub fn new(graph: &'g Graph, schedule: TurnSchedule) -> Self {
        let free_deg = (0..graph.vertex_count())
            .map(|v| graph.degree(v) as u16)
            .collect();
        GameState {
            graph,
            schedule,
            ownership: vec![Ownership::Free; graph.edge_count()],
            moves_made: 0,
            free_deg,
            toucher_cnt: vec![0; graph.vertex_count()],
        }
    }

    pub fn graph(&self) -> &'g Graph {
        self.graph
    }

    pub fn schedule(&self) -> &TurnSchedule {
        &self.schedule
    }

    pub fn moves_made(&self) -> usize {
        self.moves_made
    }

    pub fn ownership(&self, e: EdgeId) -> Ownership {
        self.ownership[e]
    }

    pub fn is_free(&self, e: EdgeId) -> bool {
        self.ownership[e] == Ownership::Free
    }

    pub fn is_terminal(&self) -> bool {
        self.moves_made == self.graph.edge_count()
    }

    pub fn free_edges(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.ownership
            .iter()
            .enumerate()
            .filter(|(_, o)| **o == Ownership::Free)
            .map(|(e, _)| e)
    }

    /// The player to move. Errors on a terminal state.
    pub fn whose_turn(&self) -> Result<Player, GameError> {
        if self.is_terminal() {
            return Err(GameError::Terminal);
        }
        Ok(self.schedule.player_at(self.moves_made))
    }

    /// Claims `e` for the scheduled player.
    pub fn apply_move(&mut self, e: EdgeId) -> Result<Player, GameError> {
        if e >= self.graph.edge_count() {
            return Err(GameError::EdgeOutOfRange(e));
        }
        if self.ownership[e] != Ownership::Free {
            return Err(GameError::EdgeAlreadyClaimed(e));
        }
        let player = self.whose_turn()?;
        self.ownership[e] = Ownership::Owned(player);
        self.moves_made += 1;
        let (u, v) = self.graph.endpoints(e);
        self.free_deg[u] -= 1;
        self.free_deg[v] -= 1;
        if player == Player::Toucher {
            self.toucher_cnt[u] += 1;
            self.toucher_cnt[v] += 1;
        }
        Ok(player)
    }

    /// Reverts the most recent claim of `e`. The caller must undo moves in
    /// reverse order of application.
    pub fn undo_move(&mut self, e: EdgeId) {
        let Ownership::Owned(player) = self.ownership[e] else {
            panic!("undo of unclaimed edge {}", e);
        };
        self.ownership[e] = Ownership::Free;
        self.moves_made -= 1;
        debug_assert_eq!(self.schedule.player_at(self.moves_made), player);
        let (u, v) = self.graph.endpoints(e);
        self.free_deg[u] += 1;
        self.free_deg[v] += 1;
        if player == Player::Toucher {
            self.toucher_cnt[u] -= 1;
            self.toucher_cnt[v] -= 1;
        }
    }

    /// Number of free edges incident to `v`.
    pub fn free_degree(&self, v: VertexId) -> usize {
        self.free_deg[v] as usize
    }

    pub fn touched_by_toucher(&self, v: VertexId) -> bool {
        self.toucher_cnt[v] > 0
    }

    /// The Danger of `v`: zero once Toucher holds an incident edge,
    /// otherwise `2^-k` where `k` counts the free incident edges.
    /// Degree-0 vertices have Danger 1.
    pub fn danger(&self, v: VertexId) -> Result<DyadicValue, GameError> {
        if v >= self.graph.vertex_count() {
            return Err(GameError::VertexOutOfRange(v));
        }
        if self.toucher_cnt[v] > 0 {
            Ok(DyadicValue::ZERO)
        } else {
            Ok(DyadicValue::pow2_neg(self.free_deg[v] as u32))
        }
    }

    pub fn total_danger(&self) -> DyadicValue {
        let mut total = DyadicValue::ZERO;
        for v in 0..self.graph.vertex_count() {
            total += self.danger(v).expect("vertex in range");
        }
        total
    }

    /// Untouched vertices at the end of the game. Errors unless terminal;
    /// see [`GameState::isolated_so_far`] for the mid-game diagnostic.
    pub fn untouched_count(&self) -> Result<usize, GameError> {
        if !self.is_terminal() {
            return Err(GameError::NotTerminal);
        }
        Ok((0..self.graph.vertex_count())
            .filter(|&v| self.toucher_cnt[v] == 0)
            .count())
    }

    /// Vertices already certain to end untouched: every incident edge is
    /// Isolator's. Monotone over a game and equal to the untouched count
    /// at the terminal state. Degree-0 vertices always count.
    pub fn isolated_so_far(&self) -> usize {
        (0..self.graph.vertex_count())
            .filter(|&v| self.toucher_cnt[v] == 0 && self.free_deg[v] == 0)
            .count()
    }

    /// Vertices Toucher has not yet touched (an upper bound on the final
    /// untouched count).
    pub fn not_yet_touched(&self) -> usize {
        (0..self.graph.vertex_count())
            .filter(|&v| self.toucher_cnt[v] == 0)
            .count()
    }

    /// Ownership vector packed two bits per edge (0 free, 1 Toucher,
    /// 2 Isolator), edge 0 in the lowest bits. Supports up to 64 edges.
    pub fn packed_ownership(&self) -> u128 {
        let mut packed = 0u128;
        for (e, o) in self.ownership.iter().enumerate() {
            let code = match o {
                Ownership::Free => 0u128,
                Ownership::Owned(Player::Toucher) => 1,
                Ownership::Owned(Player::Isolator) => 2,
            };
            packed |= code << (2 * e);
        }
        packed
    }
}

/// One claimed edge in a move log.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MoveRecord {
    pub ply: usize,
    pub player: Player,
    pub edge: EdgeId,
    pub endpoints: (VertexId, VertexId),
}

impl MoveRecord {
    /// The log line format: `<ply> <T|I> <edge id> <u> <v>`.
    pub fn log_line(&self) -> String {
        format!(
            "{} {} {} {} {}",
            self.ply,
            self.player.letter(),
            self.edge,
            self.endpoints.0,
            self.endpoints.1
        )
    }
}

#[derive(Debug, Error)]
pub enum MatchError {
    #[error("{player} strategy failed at ply {ply}: {source}")]
    Strategy {
        player: Player,
        ply: usize,
        #[source]
        source: crate::strategy::StrategyError,
    },
    #[error("{player} strategy returned illegal move {edge} at ply {ply}")]
    IllegalMove { player: Player, ply: usize, edge: EdgeId },
}

/// Drives a full match between two strategies and returns the terminal
/// state, the untouched count, and the complete move log.
pub fn play_match<'g>(
    graph: &'g Graph,
    schedule: TurnSchedule,
    toucher: &mut dyn crate::strategy::Strategy,
    isolator: &mut dyn crate::strategy::Strategy,
) -> Result<(GameState<'g>, usize, Vec<MoveRecord>), MatchError> {
    let mut state = GameState::new(graph, schedule);
    let fail = |player, ply, source| MatchError::Strategy { player, ply, source };
    toucher
        .begin(&state)
        .map_err(|e| fail(Player::Toucher, 0, e))?;
    isolator
        .begin(&state)
        .map_err(|e| fail(Player::Isolator, 0, e))?;

    let mut log = Vec::with_capacity(graph.edge_count());
    while !state.is_terminal() {
        let ply = state.moves_made();
        let player = state.whose_turn().expect("non-terminal");
        let strategy: &mut dyn crate::strategy::Strategy = match player {
            Player::Toucher => toucher,
            Player::Isolator => isolator,
        };
        let edge = strategy.choose(&state).map_err(|e| fail(player, ply, e))?;
        if edge >= graph.edge_count() || !state.is_free(edge) {
            return Err(MatchError::IllegalMove { player, ply, edge });
        }
        toucher.observe(&state, player, edge);
        isolator.observe(&state, player, edge);
        state.apply_move(edge).expect("checked free");
        log.push(MoveRecord { ply, player, edge, endpoints: graph.endpoints(edge) });
    }
    let untouched = state.untouched_count().expect("terminal");
    Ok((state, untouched, log))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{cycle, generate, path, Family};
    use proptest::prelude::*;

    #[test]
    fn default_schedule_alternates_from_toucher() {
        let s = TurnSchedule::default();
        assert_eq!(s.player_at(0), Player::Toucher);
        assert_eq!(s.player_at(1), Player::Isolator);
        assert_eq!(s.player_at(2), Player::Toucher);
    }

    #[test]
    fn prefix_schedule() {
        let s = TurnSchedule::new(vec![Player::Toucher, Player::Toucher], Player::Isolator);
        assert_eq!(s.player_at(0), Player::Toucher);
        assert_eq!(s.player_at(1), Player::Toucher);
        assert_eq!(s.player_at(2), Player::Isolator);
        assert_eq!(s.player_at(3), Player::Toucher);
        assert_eq!(s.moves_for(Player::Toucher, 4), 3);
    }

    #[test]
    fn apply_and_errors() {
        let g = cycle(4).unwrap();
        let mut s = GameState::new(&g, TurnSchedule::default());
        assert_eq!(s.apply_move(0).unwrap(), Player::Toucher);
        assert_eq!(s.apply_move(0), Err(GameError::EdgeAlreadyClaimed(0)));
        assert_eq!(s.apply_move(9), Err(GameError::EdgeOutOfRange(9)));
        assert_eq!(s.whose_turn().unwrap(), Player::Isolator);
        for e in 1..4 {
            s.apply_move(e).unwrap();
        }
        assert!(s.is_terminal());
        assert_eq!(s.whose_turn(), Err(GameError::Terminal));
    }

    #[test]
    fn danger_values() {
        let g = cycle(4).unwrap();
        let mut s = GameState::new(&g, TurnSchedule::default());
        for v in 0..4 {
            assert_eq!(s.danger(v).unwrap(), DyadicValue::pow2_neg(2));
        }
        assert_eq!(s.total_danger(), DyadicValue::ONE);
        s.apply_move(0).unwrap(); // Toucher claims (0,1)
        assert_eq!(s.danger(0).unwrap(), DyadicValue::ZERO);
        assert_eq!(s.danger(2).unwrap(), DyadicValue::pow2_neg(2));
        assert!(s.danger(99).is_err());
    }

    #[test]
    fn degree_zero_vertex_has_danger_one() {
        let g = Graph::new(3, vec![(0, 1)]).unwrap();
        let s = GameState::new(&g, TurnSchedule::default());
        assert_eq!(s.danger(2).unwrap(), DyadicValue::ONE);
        assert_eq!(s.isolated_so_far(), 1);
    }

    #[test]
    fn fresh_path_total_danger() {
        // total danger of a fresh path on n vertices is (n+2)/4
        for n in 2..9usize {
            let g = path(n).unwrap();
            let s = GameState::new(&g, TurnSchedule::default());
            assert_eq!(s.total_danger(), DyadicValue::new(n as i64 + 2, 2));
        }
    }

    #[test]
    fn fresh_cycle_total_danger() {
        // n vertices of danger 1/4 each
        for n in 3..9usize {
            let g = cycle(n).unwrap();
            let s = GameState::new(&g, TurnSchedule::default());
            assert_eq!(s.total_danger(), DyadicValue::new(n as i64, 2));
        }
    }

    #[test]
    fn strict_untouched_count_requires_terminal() {
        let g = cycle(4).unwrap();
        let mut s = GameState::new(&g, TurnSchedule::default());
        assert_eq!(s.untouched_count(), Err(GameError::NotTerminal));
        s.apply_move(0).unwrap();
        assert_eq!(s.untouched_count(), Err(GameError::NotTerminal));
    }

    #[test]
    fn c4_opposite_edge_line() {
        // T:e0, I:e2, T:e1, I:e3 leaves exactly the vertex shared by e2,e3.
        let g = cycle(4).unwrap();
        let mut s = GameState::new(&g, TurnSchedule::default());
        for e in [0, 2, 1, 3] {
            s.apply_move(e).unwrap();
        }
        assert_eq!(s.untouched_count().unwrap(), 1);
        assert_eq!(s.total_danger(), DyadicValue::ONE);
    }

    #[test]
    fn terminal_danger_equals_untouched() {
        let g = generate(&Family::Star(5)).unwrap();
        let mut s = GameState::new(&g, TurnSchedule::default());
        while !s.is_terminal() {
            let e = s.free_edges().next().unwrap();
            s.apply_move(e).unwrap();
        }
        let untouched = s.untouched_count().unwrap();
        assert_eq!(s.total_danger(), DyadicValue::from_int(untouched as i64));
    }

    proptest! {
        // Danger conservation: claiming an edge moves the total Danger by
        // exactly the sum of the endpoint Dangers, down for Toucher and up
        // for Isolator.
        #[test]
        fn danger_conservation(n in 2usize..8, seed in 0u64..500) {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let mut edges = Vec::new();
            for u in 0..n {
                for v in (u + 1)..n {
                    if rng.gen_bool(0.5) {
                        edges.push((u, v));
                    }
                }
            }
            let g = Graph::new(n, edges).unwrap();
            let mut s = GameState::new(&g, TurnSchedule::default());
            let mut isolated_prev = s.isolated_so_far();
            while !s.is_terminal() {
                let free: Vec<_> = s.free_edges().collect();
                let e = free[rng.gen_range(0..free.len())];
                let (x, y) = g.endpoints(e);
                let before = s.total_danger();
                let endpoint_sum = s.danger(x).unwrap() + s.danger(y).unwrap();
                let player = s.apply_move(e).unwrap();
                let after = s.total_danger();
                match player {
                    Player::Toucher => prop_assert_eq!(before - after, endpoint_sum),
                    Player::Isolator => prop_assert_eq!(after - before, endpoint_sum),
                }
                // the certain-untouched diagnostic never decreases
                prop_assert!(s.isolated_so_far() >= isolated_prev);
                isolated_prev = s.isolated_so_far();
            }
            let untouched = s.untouched_count().unwrap();
            prop_assert_eq!(s.total_danger(), DyadicValue::from_int(untouched as i64));
            prop_assert_eq!(s.isolated_so_far(), untouched);
        }
    }

    #[test]
    fn max_danger_mirror_match_on_p3() {
        use crate::strategy::MaxDangerStrategy;
        let g = path(3).unwrap();
        let mut t = MaxDangerStrategy::new();
        let mut i = MaxDangerStrategy::new();
        let (_, untouched, log) =
            play_match(&g, TurnSchedule::default(), &mut t, &mut i).unwrap();
        assert_eq!(untouched, 1);
        assert_eq!(log.len(), 2);
        assert_eq!(log[0].log_line(), "0 T 0 0 1");
    }
}
