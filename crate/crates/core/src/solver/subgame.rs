//! Region subgames with optional pass moves.
//!
//! A subgame restricts play to a region of edges, with some edges already
//! owned. A player in `pass_allowed` may spend a turn outside the region
//! (a pass); the game ends when every region edge is claimed and scores
//! the untouched vertices among the objective set. This models arguments
//! where one player is forced to keep answering locally while the other
//! is free to play elsewhere.

use super::{BestMove, FxBuild, SolveError, SolveOptions, SolveResult};
use crate::game::Player;
use crate::graph::{EdgeId, Graph, VertexId};
use std::collections::HashMap;
use std::time::Instant;

#[derive(Debug, Clone)]
pub struct SubgameSpec {
    pub region: Vec<EdgeId>,
    pub preclaimed: Vec<(EdgeId, Player)>,
    pub first_mover: Player,
    /// At most one player may hold a pass option.
    pub pass_allowed: Option<Player>,
    pub objective: Vec<VertexId>,
}

struct SubSearch<'g> {
    graph: &'g Graph,
    /// open region edges, densely indexed
    open: Vec<EdgeId>,
    /// ownership code per open edge: 0 free, 1 Toucher, 2 Isolator
    packed: u64,
    claimed: usize,
    /// per objective vertex: number of Toucher edges and free region edges
    objective: Vec<VertexId>,
    toucher_cnt: HashMap<VertexId, u32>,
    free_cnt: HashMap<VertexId, u32>,
    pass_allowed: Option<Player>,
    memo: HashMap<(u64, bool), u16, FxBuild>,
    nodes: u64,
    hits: u64,
    opts: SolveOptions,
}

impl SubSearch<'_> {
    fn untouched(&self) -> u16 {
        self.objective
            .iter()
            .filter(|v| self.toucher_cnt[v] == 0)
            .count() as u16
    }

    fn isolated_now(&self) -> u16 {
        self.objective
            .iter()
            .filter(|v| self.toucher_cnt[v] == 0 && self.free_cnt[v] == 0)
            .count() as u16
    }

    fn bump(&mut self, edge: EdgeId, player: Player, delta: i32) {
        let (u, v) = self.graph.endpoints(edge);
        for w in [u, v] {
            if let Some(c) = self.free_cnt.get_mut(&w) {
                *c = (*c as i32 - delta) as u32;
            }
            if player == Player::Toucher {
                if let Some(c) = self.toucher_cnt.get_mut(&w) {
                    *c = (*c as i32 + delta) as u32;
                }
            }
        }
    }

    fn run(&mut self, mover: Player, mut alpha: i32, mut beta: i32) -> Result<i32, SolveError> {
        if self.claimed == self.open.len() {
            return Ok(self.untouched() as i32);
        }
        let lo = self.isolated_now() as i32;
        let hi = self.untouched() as i32;
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

        let key = (self.packed, mover == Player::Toucher);
        if let Some(&v) = self.memo.get(&key) {
            self.hits += 1;
            return Ok(v as i32);
        }
        self.nodes += 1;
        if self.nodes > self.opts.node_budget {
            return Err(SolveError::NodeBudgetExceeded { budget: self.opts.node_budget });
        }

        let maximizing = mover == Player::Isolator;
        let mut best = if maximizing { i32::MIN } else { i32::MAX };
        let (alpha0, beta0) = (alpha, beta);
        for idx in 0..self.open.len() {
            if (self.packed >> (2 * idx)) & 3 != 0 {
                continue;
            }
            let edge = self.open[idx];
            let code = if mover == Player::Toucher { 1u64 } else { 2u64 };
            self.packed |= code << (2 * idx);
            self.claimed += 1;
            self.bump(edge, mover, 1);
            let v = self.run(mover.other(), alpha, beta)?;
            self.bump(edge, mover, -1);
            self.claimed -= 1;
            self.packed &= !(3u64 << (2 * idx));
            if maximizing {
                best = best.max(v);
                alpha = alpha.max(best);
            } else {
                best = best.min(v);
                beta = beta.min(best);
            }
            if alpha >= beta {
                break;
            }
        }
        if self.pass_allowed == Some(mover) && alpha < beta {
            let v = self.run(mover.other(), alpha, beta)?;
            if maximizing {
                best = best.max(v);
            } else {
                best = best.min(v);
            }
        }
        // only exact values are memoized; bound values are recomputed
        if best > alpha0 && best < beta0 {
            if self.memo.len() >= self.opts.table_cap {
                return Err(SolveError::TableCapExceeded { cap: self.opts.table_cap });
            }
            self.memo.insert(key, best as u16);
        }
        Ok(best)
    }
}

/// Minimax over a region, scoring untouched objective vertices.
pub fn solve_subgame(
    graph: &Graph,
    spec: &SubgameSpec,
    opts: &SolveOptions,
) -> Result<SolveResult, SolveError> {
    let start = Instant::now();
    let invalid = |msg: String| SolveError::InvalidSubgame(msg);

    let mut region: Vec<EdgeId> = spec.region.clone();
    region.sort_unstable();
    region.dedup();
    if region.len() != spec.region.len() {
        return Err(invalid("duplicate region edges".to_string()));
    }
    for &e in &region {
        if e >= graph.edge_count() {
            return Err(invalid(format!("region edge {} out of range", e)));
        }
    }
    let mut owner: HashMap<EdgeId, Player> = HashMap::new();
    for &(e, p) in &spec.preclaimed {
        if e >= graph.edge_count() {
            return Err(invalid(format!("preclaimed edge {} out of range", e)));
        }
        if owner.insert(e, p).is_some() {
            return Err(invalid(format!("edge {} preclaimed twice", e)));
        }
    }
    let open: Vec<EdgeId> = region.iter().copied().filter(|e| !owner.contains_key(e)).collect();
    if open.len() > opts.edge_ceiling.min(32) {
        return Err(SolveError::CeilingExceeded {
            edges: open.len(),
            ceiling: opts.edge_ceiling.min(32),
        });
    }

    let covered: std::collections::HashSet<EdgeId> =
        region.iter().chain(owner.keys()).copied().collect();
    for &v in &spec.objective {
        if v >= graph.vertex_count() {
            return Err(invalid(format!("objective vertex {} out of range", v)));
        }
        for &(e, _) in graph.incident(v) {
            if !covered.contains(&e) {
                return Err(invalid(format!(
                    "objective vertex {} has edge {} outside region and preclaimed",
                    v, e
                )));
            }
        }
    }

    let mut toucher_cnt: HashMap<VertexId, u32> = HashMap::new();
    let mut free_cnt: HashMap<VertexId, u32> = HashMap::new();
    for &v in &spec.objective {
        toucher_cnt.insert(v, 0);
        free_cnt.insert(v, 0);
    }
    for (&e, &p) in &owner {
        if p == Player::Toucher {
            let (u, v) = graph.endpoints(e);
            for w in [u, v] {
                if let Some(c) = toucher_cnt.get_mut(&w) {
                    *c += 1;
                }
            }
        }
    }
    for &e in &open {
        let (u, v) = graph.endpoints(e);
        for w in [u, v] {
            if let Some(c) = free_cnt.get_mut(&w) {
                *c += 1;
            }
        }
    }

    let mut search = SubSearch {
        graph,
        open,
        packed: 0,
        claimed: 0,
        objective: spec.objective.clone(),
        toucher_cnt,
        free_cnt,
        pass_allowed: spec.pass_allowed,
        memo: HashMap::default(),
        nodes: 0,
        hits: 0,
        opts: opts.clone(),
    };

    let bound = spec.objective.len() as i32;
    if search.open.is_empty() {
        return Ok(SolveResult {
            value: search.untouched() as usize,
            best_move: None,
            nodes_expanded: 0,
            table_hits: 0,
            elapsed: start.elapsed(),
        });
    }

    // root loop to recover the best move
    let mover = spec.first_mover;
    let maximizing = mover == Player::Isolator;
    let mut best: Option<(i32, BestMove)> = None;
    let mut alpha = -1;
    let mut beta = bound + 1;
    let open_edges = search.open.clone();
    for (idx, &edge) in open_edges.iter().enumerate() {
        let code = if mover == Player::Toucher { 1u64 } else { 2u64 };
        search.packed |= code << (2 * idx);
        search.claimed += 1;
        search.bump(edge, mover, 1);
        let v = search.run(mover.other(), alpha, beta)?;
        search.bump(edge, mover, -1);
        search.claimed -= 1;
        search.packed &= !(3u64 << (2 * idx));
        let better = best.is_none_or(|(b, _)| if maximizing { v > b } else { v < b });
        if better {
            best = Some((v, BestMove::Edge(edge)));
        }
        if maximizing {
            alpha = alpha.max(v);
        } else {
            beta = beta.min(v);
        }
    }
    if spec.pass_allowed == Some(mover) {
        let v = search.run(mover.other(), alpha, beta)?;
        let better = best.is_none_or(|(b, _)| if maximizing { v > b } else { v < b });
        if better {
            best = Some((v, BestMove::Pass));
        }
    }
    let (value, best_move) = best.expect("open region has moves");
    Ok(SolveResult {
        value: value as usize,
        best_move: Some(best_move),
        nodes_expanded: search.nodes,
        table_hits: search.hits,
        elapsed: start.elapsed(),
    })
}
