//! Isolator's segment strategy on a path.
//!
//! The n-1 edges are split before any move into a left-end segment of x
//! edges, middle segments of 16, and a right-end segment of y edges, where
//! k = (n-1) mod 16 and (x, y) depend on k. Middle segments run the
//! shared segment machine; the two end segments are handled jointly,
//! trading on the two leaves: grabbing a leaf edge isolates its leaf
//! outright. Guarantees at least ceil(3(n-2)/16) untouched vertices.

use super::segment::SegMachine;
use super::{max_danger_edge, Strategy, StrategyError};
use crate::game::{GameState, Ownership, Player};
use crate::graph::EdgeId;

fn ends_split(k: usize) -> (usize, usize) {
    let x = match k {
        0..=1 => 0,
        2..=6 => 1,
        7..=11 => 2,
        _ => 6,
    };
    (x, k - x)
}

fn ends_target(k: usize) -> u8 {
    match k {
        0..=1 => 0,
        2..=6 => 1,
        7..=11 => 2,
        _ => 3,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum EndsPhase {
    Waiting,
    /// Claimed the leaf edge of end B (`b_right` says which side B is).
    AfterB1 { b_right: bool },
    /// Second pay-off taken; `took_b2` distinguishes the two follow-ups.
    AfterSecond { b_right: bool, took_b2: bool },
    /// String build inside end A, slots 1..6 from A's leaf.
    BuildA { b_right: bool, anchor: u8 },
    /// Claimed the middle of a run of three; a neighbour still pays.
    Grab { on_right: bool, center: u8 },
    Settled,
}

/// Joint machine for the two end segments.
#[derive(Clone, Debug)]
struct EndsMachine {
    /// Edge ids from each leaf inward.
    left: Vec<EdgeId>,
    right: Vec<EdgeId>,
    target: u8,
    banked: u8,
    phase: EndsPhase,
}

type EndsDecision = (EdgeId, EndsMachine);

impl EndsMachine {
    fn new(left: Vec<EdgeId>, right: Vec<EdgeId>, k: usize) -> Self {
        let target = ends_target(k);
        let phase = if target == 0 { EndsPhase::Settled } else { EndsPhase::Waiting };
        EndsMachine { left, right, target, banked: 0, phase }
    }

    fn side(&self, on_right: bool) -> &[EdgeId] {
        if on_right {
            &self.right
        } else {
            &self.left
        }
    }

    fn contains(&self, e: EdgeId) -> bool {
        self.left.contains(&e) || self.right.contains(&e)
    }

    fn all_edges(&self) -> Vec<EdgeId> {
        let mut v = self.left.clone();
        v.extend_from_slice(&self.right);
        v
    }

    fn own(state: &GameState<'_>, e: EdgeId) -> bool {
        state.ownership(e) == Ownership::Owned(Player::Isolator)
    }

    fn hers(state: &GameState<'_>, e: EdgeId) -> bool {
        state.ownership(e) == Ownership::Owned(Player::Toucher)
    }

    fn with(&self, banked_delta: u8, phase: EndsPhase) -> EndsMachine {
        let mut next = self.clone();
        next.banked += banked_delta;
        next.phase = phase;
        next
    }

    fn settle_move(&self, state: &GameState<'_>) -> Option<EndsDecision> {
        let edges = self.all_edges();
        max_danger_edge(state, Some(&edges)).map(|e| (e, self.with(0, EndsPhase::Settled)))
    }

    /// Lowest-abs-id run of three consecutive Toucher-free slots with a
    /// free middle, looking inside each end separately.
    fn open_run3(&self, state: &GameState<'_>) -> Option<EndsDecision> {
        let mut best: Option<(EdgeId, bool, usize)> = None;
        for (on_right, edges) in [(false, &self.left), (true, &self.right)] {
            for c in 1..edges.len().saturating_sub(1) {
                if state.is_free(edges[c])
                    && !Self::hers(state, edges[c - 1])
                    && !Self::hers(state, edges[c + 1])
                    && best.is_none_or(|(id, _, _)| edges[c] < id)
                {
                    best = Some((edges[c], on_right, c));
                }
            }
        }
        let (edge, on_right, c) = best?;
        let side = self.side(on_right);
        let instant =
            Self::own(state, side[c - 1]) || Self::own(state, side[c + 1]);
        let delta = instant as u8;
        let phase = if self.banked + delta >= self.target {
            EndsPhase::Settled
        } else {
            EndsPhase::Grab { on_right, center: c as u8 }
        };
        Some((edge, self.with(delta, phase)))
    }

    fn respond(&self, state: &GameState<'_>, her_edge: EdgeId) -> Option<EndsDecision> {
        match self.phase {
            EndsPhase::Waiting => self.respond_waiting(state, her_edge),
            EndsPhase::AfterB1 { b_right } => self.respond_after_b1(state, b_right),
            EndsPhase::AfterSecond { b_right, took_b2 } => {
                self.respond_after_second(state, b_right, took_b2)
            }
            EndsPhase::BuildA { b_right, anchor } => self.respond_build(state, b_right, anchor),
            EndsPhase::Grab { on_right, center } => self.respond_grab(state, on_right, center),
            EndsPhase::Settled => self.settle_move(state),
        }
    }

    fn respond_waiting(&self, state: &GameState<'_>, her_edge: EdgeId) -> Option<EndsDecision> {
        let k = self.left.len() + self.right.len();
        if k <= 6 {
            // one leaf grab suffices
            let mut leafs: Vec<EdgeId> = Vec::new();
            if let Some(&e) = self.left.first() {
                leafs.push(e);
            }
            if let Some(&e) = self.right.first() {
                leafs.push(e);
            }
            leafs.retain(|&e| state.is_free(e));
            leafs.sort_unstable();
            if let Some(&e) = leafs.first() {
                return Some((e, self.with(1, EndsPhase::Settled)));
            }
            return self.settle_move(state);
        }
        // grab the leaf of the end she did not enter
        let her_in_right = self.right.contains(&her_edge);
        let b_right = !her_in_right;
        let b_leaf = *self.side(b_right).first()?;
        if state.is_free(b_leaf) {
            return Some((b_leaf, self.with(1, EndsPhase::AfterB1 { b_right })));
        }
        let a_leaf = *self.side(!b_right).first()?;
        if state.is_free(a_leaf) {
            return Some((a_leaf, self.with(1, EndsPhase::AfterB1 { b_right: !b_right })));
        }
        self.open_run3(state).or_else(|| self.settle_move(state))
    }

    fn respond_after_b1(&self, state: &GameState<'_>, b_right: bool) -> Option<EndsDecision> {
        let b = self.side(b_right);
        let a = self.side(!b_right);
        let k = self.left.len() + self.right.len();
        if k >= 12 {
            // exact follow-up split from the long-ends analysis
            let ends_hers: Vec<EdgeId> = self
                .all_edges()
                .into_iter()
                .filter(|&e| Self::hers(state, e))
                .collect();
            let pattern = a.first().into_iter().chain(b.get(1)).copied();
            let mut want: Vec<EdgeId> = pattern.collect();
            want.sort_unstable();
            let mut got = ends_hers.clone();
            got.sort_unstable();
            if want.len() == 2 && got == want {
                // she holds exactly a1 and b2: build inside A's slots 1..6
                if a.len() >= 6 && (1..6).all(|s| state.is_free(a[s])) {
                    return Some((
                        a[3],
                        self.with(0, EndsPhase::BuildA { b_right, anchor: 3 }),
                    ));
                }
            }
            if let Some(&b2) = b.get(1) {
                if state.is_free(b2) {
                    return Some((
                        b2,
                        self.with(1, EndsPhase::AfterSecond { b_right, took_b2: true }),
                    ));
                }
            }
            if let Some(&a1) = a.first() {
                if state.is_free(a1) {
                    return Some((
                        a1,
                        self.with(1, EndsPhase::AfterSecond { b_right, took_b2: false }),
                    ));
                }
            }
            return self.open_run3(state).or_else(|| self.settle_move(state));
        }
        // k in 7..=11: second pay-off then done
        if let Some(&b2) = b.get(1) {
            if state.is_free(b2) {
                return Some((b2, self.with(1, EndsPhase::Settled)));
            }
        }
        if let Some(&a1) = a.first() {
            if state.is_free(a1) {
                return Some((a1, self.with(1, EndsPhase::Settled)));
            }
        }
        self.open_run3(state).or_else(|| self.settle_move(state))
    }

    fn respond_after_second(
        &self,
        state: &GameState<'_>,
        b_right: bool,
        took_b2: bool,
    ) -> Option<EndsDecision> {
        let b = self.side(b_right);
        let a = self.side(!b_right);
        let finish: &[Option<EdgeId>] = if took_b2 {
            &[b.get(2).copied(), a.first().copied()]
        } else {
            &[a.get(1).copied(), b.get(1).copied()]
        };
        for &cand in finish.iter().flatten() {
            if state.is_free(cand) {
                return Some((cand, self.with(1, EndsPhase::Settled)));
            }
        }
        self.open_run3(state).or_else(|| self.settle_move(state))
    }

    fn respond_build(
        &self,
        state: &GameState<'_>,
        b_right: bool,
        anchor: u8,
    ) -> Option<EndsDecision> {
        let a = self.side(!b_right);
        let lo = 1usize;
        let hi = 6usize.min(a.len()); // slots 1..hi
        let anchor = anchor as usize;
        if !Self::own(state, a[anchor]) {
            return self.settle_move(state);
        }
        let mut l = anchor;
        while l > lo && Self::own(state, a[l - 1]) {
            l -= 1;
        }
        let mut r = anchor;
        while r + 1 < hi && Self::own(state, a[r + 1]) {
            r += 1;
        }
        let left_ok = l > lo && state.is_free(a[l - 1]);
        let right_ok = r + 1 < hi && state.is_free(a[r + 1]);
        let chosen = match (left_ok, right_ok) {
            (true, true) => Some(if a[l - 1] < a[r + 1] { l - 1 } else { r + 1 }),
            (true, false) => Some(l - 1),
            (false, true) => Some(r + 1),
            (false, false) => None,
        };
        if let Some(slot) = chosen {
            return Some((a[slot], self.clone()));
        }
        let string_len = (r - l + 1) as u8;
        let next = self.with(string_len.saturating_sub(1), self.phase);
        if next.banked >= next.target {
            return next.settle_move(state);
        }
        next.open_run3(state).or_else(|| next.settle_move(state))
    }

    fn respond_grab(
        &self,
        state: &GameState<'_>,
        on_right: bool,
        center: u8,
    ) -> Option<EndsDecision> {
        let side = self.side(on_right);
        let c = center as usize;
        let mut flanks: Vec<usize> = Vec::new();
        if c >= 1 {
            flanks.push(c - 1);
        }
        if c + 1 < side.len() {
            flanks.push(c + 1);
        }
        let mut free: Vec<EdgeId> = flanks
            .iter()
            .map(|&f| side[f])
            .filter(|&e| state.is_free(e))
            .collect();
        free.sort_unstable();
        if let Some(&e) = free.first() {
            let phase = if self.banked + 1 < self.target && free.len() > 1 {
                EndsPhase::Grab { on_right, center }
            } else {
                EndsPhase::Settled
            };
            return Some((e, self.with(1, phase)));
        }
        self.settle_move(state)
    }

    fn digest(&self, out: &mut Vec<u8>) {
        out.push(self.banked);
        match self.phase {
            EndsPhase::Waiting => out.extend_from_slice(&[0, 0, 0]),
            EndsPhase::AfterB1 { b_right } => out.extend_from_slice(&[1, b_right as u8, 0]),
            EndsPhase::AfterSecond { b_right, took_b2 } => {
                out.extend_from_slice(&[2, b_right as u8, took_b2 as u8])
            }
            EndsPhase::BuildA { b_right, anchor } => {
                out.extend_from_slice(&[3, b_right as u8, anchor])
            }
            EndsPhase::Grab { on_right, center } => {
                out.extend_from_slice(&[4, on_right as u8, center])
            }
            EndsPhase::Settled => out.extend_from_slice(&[5, 0, 0]),
        }
    }
}

#[derive(Clone, Debug)]
enum Region {
    Ends,
    Middle(usize),
}

#[derive(Clone, Debug)]
pub struct PathSegmentIsolator {
    n: usize,
    /// edge ids of each middle segment, in path order
    middles: Vec<Vec<EdgeId>>,
    machines: Vec<SegMachine>,
    ends: Option<EndsMachine>,
    last_toucher_move: Option<EdgeId>,
}

impl PathSegmentIsolator {
    pub fn new(n: usize) -> Self {
        PathSegmentIsolator {
            n,
            middles: Vec::new(),
            machines: Vec::new(),
            ends: None,
            last_toucher_move: None,
        }
    }

    /// Edge ids in order from the lower-id leaf to the other end.
    fn path_order(g: &crate::graph::Graph) -> Option<Vec<EdgeId>> {
        if g.vertex_count() < 2 || !g.is_tree() {
            return None;
        }
        let leaves: Vec<usize> = (0..g.vertex_count()).filter(|&v| g.degree(v) == 1).collect();
        if leaves.len() != 2 || (0..g.vertex_count()).any(|v| g.degree(v) > 2) {
            return None;
        }
        let mut order = Vec::with_capacity(g.edge_count());
        let mut at = leaves[0];
        let mut prev_edge = usize::MAX;
        while order.len() < g.edge_count() {
            let &(e, next) = g.incident(at).iter().find(|&&(e, _)| e != prev_edge)?;
            order.push(e);
            prev_edge = e;
            at = next;
        }
        Some(order)
    }

    fn region_of(&self, edge: EdgeId) -> Option<Region> {
        if let Some(ends) = &self.ends {
            if ends.contains(edge) {
                return Some(Region::Ends);
            }
        }
        self.middles
            .iter()
            .position(|seg| seg.contains(&edge))
            .map(Region::Middle)
    }
}

impl Strategy for PathSegmentIsolator {
    fn name(&self) -> String {
        format!("path_segment({})", self.n)
    }

    fn begin(&mut self, state: &GameState<'_>) -> Result<(), StrategyError> {
        let g = state.graph();
        let inapplicable = |reason: String| StrategyError::Inapplicable {
            strategy: format!("path_segment({})", self.n),
            reason,
        };
        if g.vertex_count() != self.n {
            return Err(inapplicable(format!(
                "graph has {} vertices, expected {}",
                g.vertex_count(),
                self.n
            )));
        }
        let order = Self::path_order(g)
            .ok_or_else(|| inapplicable("graph is not a path".to_string()))?;
        let m = order.len();
        let k = m % 16;
        let (x, y) = ends_split(k);
        let left: Vec<EdgeId> = order[..x].to_vec();
        let right: Vec<EdgeId> = order[m - y..].iter().rev().copied().collect();
        self.middles = order[x..m - y].chunks(16).map(|c| c.to_vec()).collect();
        debug_assert!(self.middles.iter().all(|c| c.len() == 16));
        self.machines = self.middles.iter().map(|_| SegMachine::middle16()).collect();
        self.ends = Some(EndsMachine::new(left, right, k));
        self.last_toucher_move = None;
        Ok(())
    }

    fn choose(&self, state: &GameState<'_>) -> Result<EdgeId, StrategyError> {
        if let Some(last) = self.last_toucher_move {
            let decision = match self.region_of(last) {
                Some(Region::Ends) => self
                    .ends
                    .as_ref()
                    .and_then(|e| e.respond(state, last))
                    .map(|(e, _)| e),
                Some(Region::Middle(i)) => self.machines[i]
                    .respond(&self.middles[i], state)
                    .map(|(e, _)| e),
                None => None,
            };
            if let Some(edge) = decision {
                return Ok(edge);
            }
        }
        max_danger_edge(state, None).ok_or(StrategyError::NoFreeEdge)
    }

    fn observe(&mut self, state_before: &GameState<'_>, player: Player, edge: EdgeId) {
        match player {
            Player::Toucher => {
                if let Some(Region::Middle(i)) = self.region_of(edge) {
                    let slot = self.middles[i].iter().position(|&e| e == edge).unwrap();
                    self.machines[i].set_trigger(slot);
                }
                self.last_toucher_move = Some(edge);
            }
            Player::Isolator => match self.region_of(edge) {
                Some(Region::Middle(i)) => {
                    if let Some((chosen, next)) =
                        self.machines[i].respond(&self.middles[i], state_before)
                    {
                        if chosen == edge {
                            self.machines[i] = next;
                        }
                    }
                }
                Some(Region::Ends) => {
                    let (Some(ends), Some(last)) = (&mut self.ends, self.last_toucher_move)
                    else {
                        return;
                    };
                    if let Some((chosen, next)) = ends.respond(state_before, last) {
                        if chosen == edge {
                            *ends = next;
                        }
                    }
                }
                None => {}
            },
        }
    }

    fn digest(&self, out: &mut Vec<u8>) {
        if let Some(ends) = &self.ends {
            ends.digest(out);
        }
        for m in &self.machines {
            m.digest(out);
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
    fn split_table() {
        assert_eq!(ends_split(0), (0, 0));
        assert_eq!(ends_split(1), (0, 1));
        assert_eq!(ends_split(6), (1, 5));
        assert_eq!(ends_split(9), (2, 7));
        assert_eq!(ends_split(12), (6, 6));
        assert_eq!(ends_split(15), (6, 9));
    }

    #[test]
    fn rejects_non_paths() {
        let g = cycle(5).unwrap();
        let s = GameState::new(&g, TurnSchedule::default());
        assert!(PathSegmentIsolator::new(5).begin(&s).is_err());
    }

    #[test]
    fn p2_never_even_moves() {
        let g = path(2).unwrap();
        let mut t = MaxDangerStrategy::new();
        let mut i = PathSegmentIsolator::new(2);
        let (_, untouched, _) = play_match(&g, TurnSchedule::default(), &mut t, &mut i).unwrap();
        assert_eq!(untouched, 0);
    }

    #[test]
    fn p7_gets_a_leaf_against_casual_play() {
        let g = path(7).unwrap();
        for seed in 0..30 {
            let mut t = RandomStrategy::new(seed);
            let mut i = PathSegmentIsolator::new(7);
            let (_, untouched, _) =
                play_match(&g, TurnSchedule::default(), &mut t, &mut i).unwrap();
            assert!(untouched >= 1, "seed {} got {}", seed, untouched);
        }
    }

    #[test]
    fn p18_banks_three_against_casual_play() {
        let g = path(18).unwrap();
        for seed in 0..20 {
            let mut t = RandomStrategy::new(seed);
            let mut i = PathSegmentIsolator::new(18);
            let (_, untouched, _) =
                play_match(&g, TurnSchedule::default(), &mut t, &mut i).unwrap();
            assert!(untouched >= 3, "seed {} got {}", seed, untouched);
        }
    }
}
