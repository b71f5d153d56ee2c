//! Exact adversarial search over bit-packed game states.
//!
//! Toucher minimizes and Isolator maximizes the number of untouched
//! vertices. States pack two bits per edge into a u64; the mover is
//! derived from the claim count and the schedule, so the ownership vector
//! alone keys the transposition table.

mod best_response;
mod subgame;

pub use best_response::best_response_value;
pub use subgame::{solve_subgame, SubgameSpec};

use crate::game::{GameState, Player, TurnSchedule};
use crate::generate::{generate, Family};
use crate::graph::{EdgeId, Graph, GraphError};
use serde::Serialize;
use std::collections::HashMap;
use std::hash::{BuildHasherDefault, Hasher};
use std::time::{Duration, Instant};
use thiserror::Error;

/// Environment variable capping transposition-table entries.
pub const TABLE_CAP_ENV: &str = "TOUCHER_LAB_TT_CAP";

const DEFAULT_TABLE_CAP: usize = 16_000_000;

#[derive(Debug, Error)]
pub enum SolveError {
    #[error("graph has {edges} edges, above the configured ceiling of {ceiling}")]
    CeilingExceeded { edges: usize, ceiling: usize },
    #[error("transposition table exceeded its cap of {cap} entries")]
    TableCapExceeded { cap: usize },
    #[error("node budget of {budget} exceeded")]
    NodeBudgetExceeded { budget: u64 },
    #[error("fixed strategy error: {0}")]
    Strategy(#[from] crate::strategy::StrategyError),
    #[error("fixed strategy returned illegal move {edge} at ply {ply}")]
    StrategyIllegalMove { edge: EdgeId, ply: usize },
    #[error("invalid subgame: {0}")]
    InvalidSubgame(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone)]
pub struct SolveOptions {
    pub edge_ceiling: usize,
    pub use_alpha_beta: bool,
    pub use_table: bool,
    pub table_cap: usize,
    pub node_budget: u64,
}

impl Default for SolveOptions {
    fn default() -> Self {
        let table_cap = std::env::var(TABLE_CAP_ENV)
            .ok()
            .and_then(|v| v.parse().ok())
            .unwrap_or(DEFAULT_TABLE_CAP);
        SolveOptions {
            edge_ceiling: 22,
            use_alpha_beta: true,
            use_table: true,
            table_cap,
            node_budget: 1_000_000_000,
        }
    }
}

/// A decided move at the root: a concrete edge, or a pass in subgames that
/// allow one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BestMove {
    Edge(EdgeId),
    Pass,
}

#[derive(Debug, Clone, Serialize)]
pub struct SolveResult {
    pub value: usize,
    pub best_move: Option<BestMove>,
    pub nodes_expanded: u64,
    pub table_hits: u64,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl SolveResult {
    /// The single JSON report object for the CLI.
    pub fn report_json(&self, ceiling: usize) -> serde_json::Value {
        serde_json::json!({
            "value": self.value,
            "best_move": self.best_move,
            "nodes": self.nodes_expanded,
            "table_hits": self.table_hits,
            "elapsed_ms": self.elapsed.as_millis() as u64,
            "ceiling": ceiling,
        })
    }
}

/// FxHash-style hasher: fast and adequate for packed-state keys (the table
/// is a cache; entries are keyed by full value, never by hash alone).
#[derive(Default)]
pub(crate) struct FxHasher {
    hash: u64,
}

impl Hasher for FxHasher {
    fn finish(&self) -> u64 {
        self.hash
    }
    fn write(&mut self, bytes: &[u8]) {
        for &b in bytes {
            self.write_u64(b as u64);
        }
    }
    fn write_u64(&mut self, n: u64) {
        self.hash = (self.hash.rotate_left(5) ^ n).wrapping_mul(0x51_7c_c1_b7_27_22_0a_95);
    }
    fn write_u32(&mut self, n: u32) {
        self.write_u64(n as u64);
    }
    fn write_usize(&mut self, n: usize) {
        self.write_u64(n as u64);
    }
    fn write_u128(&mut self, n: u128) {
        self.write_u64(n as u64);
        self.write_u64((n >> 64) as u64);
    }
}

pub(crate) type FxBuild = BuildHasherDefault<FxHasher>;

#[derive(Clone, Copy)]
enum Flag {
    Exact,
    Lower,
    Upper,
}

#[derive(Clone, Copy)]
struct TtEntry {
    value: i32,
    flag: Flag,
}

struct Search<'g> {
    state: GameState<'g>,
    packed: u64,
    table: HashMap<u64, TtEntry, FxBuild>,
    opts: SolveOptions,
    nodes: u64,
    hits: u64,
}

impl<'g> Search<'g> {
    fn new(graph: &'g Graph, schedule: TurnSchedule, opts: SolveOptions) -> Self {
        Search {
            state: GameState::new(graph, schedule),
            packed: 0,
            table: HashMap::default(),
            opts,
            nodes: 0,
            hits: 0,
        }
    }

    fn apply(&mut self, e: EdgeId) -> Player {
        let player = self.state.apply_move(e).expect("legal move");
        let code = match player {
            Player::Toucher => 1u64,
            Player::Isolator => 2u64,
        };
        self.packed |= code << (2 * e);
        player
    }

    fn undo(&mut self, e: EdgeId) {
        self.state.undo_move(e);
        self.packed &= !(3u64 << (2 * e));
    }

    /// Free edges ordered by endpoint Danger sum (hot edges first), edge id
    /// breaking ties. The same order serves both players.
    fn ordered_moves(&self) -> Vec<EdgeId> {
        let g = self.state.graph();
        let mut moves: Vec<(u128, EdgeId)> = self
            .state
            .free_edges()
            .map(|e| {
                let (x, y) = g.endpoints(e);
                let score = |v: usize| -> u128 {
                    if self.state.touched_by_toucher(v) {
                        0
                    } else {
                        1u128 << 96u32.saturating_sub(self.state.free_degree(v) as u32)
                    }
                };
                (score(x) + score(y), e)
            })
            .collect();
        moves.sort_unstable_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        moves.into_iter().map(|(_, e)| e).collect()
    }

    fn run(&mut self, mut alpha: i32, mut beta: i32) -> Result<i32, SolveError> {
        if self.state.is_terminal() {
            return Ok(self.state.untouched_count().expect("terminal") as i32);
        }
        let lo = self.state.isolated_so_far() as i32;
        let hi = self.state.not_yet_touched() as i32;
        if self.opts.use_alpha_beta {
            if lo == hi {
                return Ok(lo);
            }
            if lo >= beta {
                return Ok(lo);
            }
            if hi <= alpha {
                return Ok(hi);
            }
            alpha = alpha.max(lo);
            beta = beta.min(hi);
        }
        let (alpha0, beta0) = (alpha, beta);
        if self.opts.use_table {
            if let Some(entry) = self.table.get(&self.packed) {
                self.hits += 1;
                match entry.flag {
                    Flag::Exact => return Ok(entry.value),
                    Flag::Lower => {
                        if entry.value >= beta {
                            return Ok(entry.value);
                        }
                        alpha = alpha.max(entry.value);
                    }
                    Flag::Upper => {
                        if entry.value <= alpha {
                            return Ok(entry.value);
                        }
                        beta = beta.min(entry.value);
                    }
                }
            }
        }
        self.nodes += 1;
        if self.nodes > self.opts.node_budget {
            return Err(SolveError::NodeBudgetExceeded { budget: self.opts.node_budget });
        }
        let mover = self
            .state
            .schedule()
            .player_at(self.state.moves_made());
        let maximizing = mover == Player::Isolator;
        let mut best = if maximizing { i32::MIN } else { i32::MAX };
        for e in self.ordered_moves() {
            self.apply(e);
            let v = self.run(alpha, beta)?;
            self.undo(e);
            if maximizing {
                best = best.max(v);
                alpha = alpha.max(best);
            } else {
                best = best.min(v);
                beta = beta.min(best);
            }
            if self.opts.use_alpha_beta && alpha >= beta {
                break;
            }
        }
        if self.opts.use_table {
            if self.table.len() >= self.opts.table_cap {
                return Err(SolveError::TableCapExceeded { cap: self.opts.table_cap });
            }
            let flag = if !self.opts.use_alpha_beta {
                Flag::Exact
            } else if best <= alpha0 {
                Flag::Upper
            } else if best >= beta0 {
                Flag::Lower
            } else {
                Flag::Exact
            };
            self.table.insert(self.packed, TtEntry { value: best, flag });
        }
        Ok(best)
    }
}

/// Computes the exact game value: untouched vertices under optimal play
/// with the given schedule. Deterministic; memoized on the packed
/// ownership vector.
pub fn solve_exact(
    graph: &Graph,
    schedule: &TurnSchedule,
    opts: &SolveOptions,
) -> Result<SolveResult, SolveError> {
    if graph.edge_count() > opts.edge_ceiling {
        return Err(SolveError::CeilingExceeded {
            edges: graph.edge_count(),
            ceiling: opts.edge_ceiling,
        });
    }
    let start = Instant::now();
    let mut search = Search::new(graph, schedule.clone(), opts.clone());
    let n = graph.vertex_count() as i32;

    if search.state.is_terminal() {
        // no edges: every vertex is untouched by definition
        return Ok(SolveResult {
            value: graph.vertex_count(),
            best_move: None,
            nodes_expanded: 0,
            table_hits: 0,
            elapsed: start.elapsed(),
        });
    }

    let mover = schedule.player_at(0);
    let maximizing = mover == Player::Isolator;
    let mut best = if maximizing { i32::MIN } else { i32::MAX };
    let mut best_move = None;
    let mut alpha = -1;
    let mut beta = n + 1;
    for e in search.ordered_moves() {
        search.apply(e);
        let v = search.run(alpha, beta)?;
        search.undo(e);
        let improved = if maximizing { v > best } else { v < best };
        if improved {
            best = v;
            best_move = Some(BestMove::Edge(e));
        }
        if maximizing {
            alpha = alpha.max(best);
        } else {
            beta = beta.min(best);
        }
    }
    Ok(SolveResult {
        value: best as usize,
        best_move,
        nodes_expanded: search.nodes,
        table_hits: search.hits,
        elapsed: start.elapsed(),
    })
}

/// Exact values for a parametrized family over a range of sizes.
pub fn value_table(
    make: impl Fn(usize) -> Family,
    sizes: impl IntoIterator<Item = usize>,
    schedule: &TurnSchedule,
    opts: &SolveOptions,
) -> Result<Vec<(usize, SolveResult)>, SolveError> {
    let mut out = Vec::new();
    for n in sizes {
        let graph = generate(&make(n))?;
        let result = solve_exact(&graph, schedule, opts)?;
        out.push((n, result));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{cycle, generate, path, star, Family};

    fn solve(g: &Graph) -> usize {
        solve_exact(g, &TurnSchedule::default(), &SolveOptions::default())
            .unwrap()
            .value
    }

    #[test]
    fn tiny_values() {
        assert_eq!(solve(&cycle(3).unwrap()), 0);
        assert_eq!(solve(&cycle(4).unwrap()), 1);
        assert_eq!(solve(&path(2).unwrap()), 0);
        assert_eq!(solve(&path(3).unwrap()), 1);
    }

    #[test]
    fn star_values_match_closed_form() {
        for n in [3usize, 5, 7] {
            assert_eq!(solve(&star(n).unwrap()), (n - 1) / 2, "star({})", n);
        }
    }

    #[test]
    fn k4_is_hopeless_for_isolator() {
        assert_eq!(solve(&generate(&Family::K4Components(1)).unwrap()), 0);
    }

    #[test]
    fn edgeless_graph_counts_everyone() {
        let g = Graph::new(3, vec![]).unwrap();
        assert_eq!(solve(&g), 3);
    }

    #[test]
    fn ceiling_is_enforced() {
        let g = generate(&Family::Gadget24).unwrap();
        let err = solve_exact(&g, &TurnSchedule::default(), &SolveOptions::default());
        assert!(matches!(err, Err(SolveError::CeilingExceeded { edges: 36, ceiling: 22 })));
    }

    #[test]
    fn resource_caps_fail_loudly() {
        let g = cycle(8).unwrap();
        let starved = SolveOptions { node_budget: 10, ..SolveOptions::default() };
        assert!(matches!(
            solve_exact(&g, &TurnSchedule::default(), &starved),
            Err(SolveError::NodeBudgetExceeded { budget: 10 })
        ));
        let cramped = SolveOptions { table_cap: 4, ..SolveOptions::default() };
        assert!(matches!(
            solve_exact(&g, &TurnSchedule::default(), &cramped),
            Err(SolveError::TableCapExceeded { cap: 4 })
        ));
    }

    #[test]
    fn pruning_and_table_do_not_change_values() {
        let graphs = [
            cycle(5).unwrap(),
            path(6).unwrap(),
            star(6).unwrap(),
            generate(&Family::P3ComponentsPlusP2(1)).unwrap(),
            generate(&Family::C3Components(2)).unwrap(),
        ];
        for g in &graphs {
            let plain = SolveOptions {
                use_alpha_beta: false,
                use_table: false,
                ..SolveOptions::default()
            };
            let no_table = SolveOptions { use_table: false, ..SolveOptions::default() };
            let a = solve_exact(g, &TurnSchedule::default(), &SolveOptions::default()).unwrap();
            let b = solve_exact(g, &TurnSchedule::default(), &plain).unwrap();
            let c = solve_exact(g, &TurnSchedule::default(), &no_table).unwrap();
            assert_eq!(a.value, b.value);
            assert_eq!(a.value, c.value);
        }
    }

    #[test]
    fn isolator_first_helps_isolator() {
        // the game on P_n equals the game on C_n with Isolator first
        let c4 = cycle(4).unwrap();
        let iso_first = solve_exact(
            &c4,
            &TurnSchedule::isolator_first(),
            &SolveOptions::default(),
        )
        .unwrap();
        let p4 = path(4).unwrap();
        assert_eq!(iso_first.value, solve(&p4));
    }
}
