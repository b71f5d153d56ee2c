//! The per-segment response machine used by the cycle and path strategies.
//!
//! A segment is a run of consecutive edges on a cycle or path. Isolator
//! answers every Toucher move inside a segment with a move in the same
//! segment. Within a 16-edge segment the machine banks three untouched
//! vertices; a short leftover segment banks zero to three depending on its
//! length. The moving parts:
//!
//! * a *build* task claims the central edge of a five-edge window and then
//!   greedily extends a string of consecutive own edges until both sides
//!   are blocked — a string of j edges pins j-1 internal vertices;
//! * a *run3* task claims the middle of three consecutive Toucher-free
//!   edges and then one surviving neighbour;
//! * when a build ends with exactly three edges, a *rescue* run3 is played
//!   in a designated remainder region.
//!
//! All machine bookkeeping lives in explicit state so it can be encoded
//! into memoization digests; everything else is re-derived from the board.

use super::max_danger_edge;
use crate::game::{GameState, Ownership, Player};
use crate::graph::EdgeId;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum SegKind {
    /// Full 16-edge segment: layout chosen by Toucher's first move in it,
    /// reflected when that move lies in the upper half.
    Middle16,
    /// Leftover segment of 1..=16 edges whose last edge is Toucher's first
    /// move of the game; layout depends only on the length.
    Leftover,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum TaskKind {
    Build,
    Run3,
}

#[derive(Clone, Copy, Debug)]
struct Task {
    kind: TaskKind,
    start: u8,
    len: u8,
}

impl Task {
    const fn build(start: u8, len: u8) -> Task {
        Task { kind: TaskKind::Build, start, len }
    }
    const fn run3(start: u8, len: u8) -> Task {
        Task { kind: TaskKind::Run3, start, len }
    }
    fn range(&self) -> std::ops::Range<usize> {
        self.start as usize..(self.start + self.len) as usize
    }
}

struct Plan {
    tasks: Vec<Task>,
    /// Regions searched for a run3 after a build ends at string length 3
    /// with the target still unmet.
    rescue: Vec<Task>,
}

fn middle16_plan(first_move: u8) -> Plan {
    debug_assert!(first_move <= 7);
    match first_move {
        0..=2 => Plan {
            tasks: vec![Task::build(3, 5), Task::build(8, 5), Task::run3(13, 3)],
            rescue: vec![Task::run3(7, 9)],
        },
        3..=4 => Plan {
            tasks: vec![Task::build(5, 5), Task::build(10, 6), Task::run3(0, 3)],
            rescue: vec![Task::run3(10, 6), Task::run3(0, 3)],
        },
        5 => Plan {
            tasks: vec![Task::build(0, 5), Task::build(10, 6), Task::run3(6, 4)],
            rescue: vec![Task::run3(10, 6), Task::run3(6, 4)],
        },
        _ => Plan {
            tasks: vec![Task::build(8, 5), Task::build(0, 6), Task::run3(13, 3)],
            rescue: vec![Task::run3(0, 6), Task::run3(13, 3)],
        },
    }
}

fn leftover_plan(len: u8) -> Plan {
    match len {
        0..=3 => Plan { tasks: vec![], rescue: vec![] },
        4..=8 => Plan { tasks: vec![Task::run3(0, len - 1)], rescue: vec![] },
        9..=13 => Plan {
            tasks: vec![Task::build(0, 5), Task::run3(5, 3)],
            rescue: vec![],
        },
        _ => Plan {
            tasks: vec![Task::build(0, 5), Task::build(5, 5), Task::run3(10, 3)],
            rescue: vec![Task::run3(5, len - 6)],
        },
    }
}

pub(crate) fn leftover_target(len: u8) -> u8 {
    match len {
        0..=3 => 0,
        4..=8 => 1,
        9..=13 => 2,
        _ => 3,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Phase {
    Idle,
    /// Extending the string through `anchor` inside task `task`.
    Build { task: u8, anchor: u8 },
    /// Claimed `center` of a run3; a surviving neighbour still pays out.
    /// `next_task` resumes the plan if the target is still unmet.
    Grab { center: u8, next_task: u8 },
    /// Between tasks: open the plan from `idx` on the next reply.
    NextTask { idx: u8 },
    Settled,
}

/// State machine for one segment. Slot coordinates are local to the
/// segment; for a reflected 16-segment they count from the far end.
#[derive(Clone, Debug)]
pub(crate) struct SegMachine {
    kind: SegKind,
    target: u8,
    banked: u8,
    /// Raw (unreflected) local slot of Toucher's first move here.
    trigger: Option<u8>,
    phase: Phase,
}

/// A decided segment move: the edge to claim and the machine's next state.
pub(crate) type SegDecision = (EdgeId, SegMachine);

impl SegMachine {
    pub(crate) fn middle16() -> SegMachine {
        SegMachine {
            kind: SegKind::Middle16,
            target: 3,
            banked: 0,
            trigger: None,
            phase: Phase::Idle,
        }
    }

    pub(crate) fn leftover(len: usize) -> SegMachine {
        SegMachine {
            kind: SegKind::Leftover,
            target: leftover_target(len as u8),
            banked: 0,
            trigger: None,
            phase: Phase::Idle,
        }
    }

    pub(crate) fn set_trigger(&mut self, raw_slot: usize) {
        if self.trigger.is_none() {
            self.trigger = Some(raw_slot as u8);
        }
    }

    fn reflected(&self, len: usize) -> bool {
        match self.kind {
            SegKind::Middle16 => self.trigger.is_some_and(|t| t >= 8),
            SegKind::Leftover => {
                let _ = len;
                false
            }
        }
    }

    fn plan(&self, len: usize) -> Plan {
        match self.kind {
            SegKind::Middle16 => {
                let t = self.trigger.expect("plan needs a trigger");
                let t = if t >= 8 { 15 - t } else { t };
                middle16_plan(t)
            }
            SegKind::Leftover => leftover_plan(len as u8),
        }
    }

    pub(crate) fn digest(&self, out: &mut Vec<u8>) {
        out.push(self.trigger.map_or(0, |t| t + 1));
        out.push(self.banked);
        match self.phase {
            Phase::Idle => out.extend_from_slice(&[0, 0, 0]),
            Phase::Build { task, anchor } => out.extend_from_slice(&[1, task, anchor]),
            Phase::Grab { center, next_task } => {
                out.extend_from_slice(&[2, center, next_task])
            }
            Phase::NextTask { idx } => out.extend_from_slice(&[3, idx, 0]),
            Phase::Settled => out.extend_from_slice(&[4, 0, 0]),
        }
    }

    /// Computes Isolator's move in this segment, if it has one. Pure; the
    /// returned machine is the state to commit once the move is made.
    pub(crate) fn respond(&self, edges: &[EdgeId], state: &GameState<'_>) -> Option<SegDecision> {
        let view = View { edges, state, reflected: self.reflected(edges.len()) };
        match self.phase {
            Phase::Idle => {
                self.trigger?;
                let plan = self.plan(edges.len());
                self.open_tasks(&view, &plan, 0)
                    .or_else(|| self.settle_move(&view))
            }
            Phase::Build { task, anchor } => self.continue_build(&view, task, anchor),
            Phase::Grab { center, next_task } => self.continue_grab(&view, center, next_task),
            Phase::NextTask { idx } => {
                let plan = self.plan(edges.len());
                self.open_tasks(&view, &plan, idx as usize)
                    .or_else(|| self.settle_move(&view))
            }
            Phase::Settled => self.fallback_move(&view).map(|e| (e, self.clone())),
        }
    }

    /// Opens the first workable task at or after `from`.
    fn open_tasks(&self, view: &View<'_, '_, '_>, plan: &Plan, from: usize) -> Option<SegDecision> {
        for (i, task) in plan.tasks.iter().enumerate().skip(from) {
            if task.kind == TaskKind::Build {
                if let Some(center) = view.best_window_center(task.range(), 5) {
                    let mut next = self.clone();
                    next.phase = Phase::Build { task: i as u8, anchor: center as u8 };
                    return Some((view.abs(center), next));
                }
            }
            if let Some(grab) = self.open_run3(view, std::slice::from_ref(task), i + 1) {
                return Some(grab);
            }
        }
        None
    }

    /// Claims the middle of the best run of three Toucher-free slots with a
    /// free middle, anywhere in `regions`. `next_task` resumes the plan
    /// once the run pays out (or dies).
    fn open_run3(
        &self,
        view: &View<'_, '_, '_>,
        regions: &[Task],
        next_task: usize,
    ) -> Option<SegDecision> {
        let mut best: Option<(EdgeId, usize)> = None;
        for region in regions {
            let range = region.range();
            for c in range.start + 1..range.end.saturating_sub(1) {
                if view.is_free(c)
                    && !view.is_toucher(c - 1)
                    && !view.is_toucher(c + 1)
                    && best.is_none_or(|(id, _)| view.abs(c) < id)
                {
                    best = Some((view.abs(c), c));
                }
            }
        }
        let (edge, c) = best?;
        let mut next = self.clone();
        let instant = view.is_mine(c - 1) || view.is_mine(c + 1);
        if instant {
            next.banked += 1;
        }
        next.phase = if next.banked >= next.target {
            Phase::Settled
        } else {
            Phase::Grab { center: c as u8, next_task: next_task as u8 }
        };
        Some((edge, next))
    }

    fn continue_build(&self, view: &View<'_, '_, '_>, task_idx: u8, anchor: u8) -> Option<SegDecision> {
        let plan = self.plan(view.edges.len());
        let task = plan.tasks.get(task_idx as usize)?;
        let range = task.range();
        let anchor = anchor as usize;
        if !view.is_mine(anchor) {
            // anchor lost (should not happen): give up on the task list
            return self.settle_move(view);
        }
        let mut l = anchor;
        while l > range.start && view.is_mine(l - 1) {
            l -= 1;
        }
        let mut r = anchor;
        while r + 1 < range.end && view.is_mine(r + 1) {
            r += 1;
        }
        let left_ok = l > range.start && view.is_free(l - 1);
        let right_ok = r + 1 < range.end && view.is_free(r + 1);
        let extend = match (left_ok, right_ok) {
            (true, true) => Some(if view.abs(l - 1) < view.abs(r + 1) { l - 1 } else { r + 1 }),
            (true, false) => Some(l - 1),
            (false, true) => Some(r + 1),
            (false, false) => None,
        };
        if let Some(slot) = extend {
            return Some((view.abs(slot), self.clone()));
        }
        // Blocked: bank the string and move on in the same turn.
        let string_len = (r - l + 1) as u8;
        let mut next = self.clone();
        next.banked += string_len.saturating_sub(1);
        if next.banked >= next.target {
            next.phase = Phase::Settled;
            return next.settle_move(view);
        }
        if string_len == 3 && !plan.rescue.is_empty() {
            if let Some(decision) = next.open_run3(view, &plan.rescue, task_idx as usize + 1) {
                return Some(decision);
            }
        }
        match next.open_tasks(view, &plan, task_idx as usize + 1) {
            Some(decision) => Some(decision),
            None => {
                next.phase = Phase::Settled;
                next.settle_move(view)
            }
        }
    }

    fn continue_grab(&self, view: &View<'_, '_, '_>, center: u8, next_task: u8) -> Option<SegDecision> {
        let c = center as usize;
        let mut flanks = [c.checked_sub(1), Some(c + 1)];
        flanks[1] = flanks[1].filter(|&f| f < view.edges.len());
        let mut candidates: Vec<usize> = flanks
            .iter()
            .flatten()
            .copied()
            .filter(|&f| view.is_free(f))
            .collect();
        candidates.sort_by_key(|&f| view.abs(f));
        if let Some(&flank) = candidates.first() {
            let mut next = self.clone();
            next.banked += 1;
            let other_still_free = candidates.len() > 1;
            next.phase = if next.banked >= next.target {
                Phase::Settled
            } else if other_still_free {
                Phase::Grab { center, next_task }
            } else {
                Phase::NextTask { idx: next_task }
            };
            return Some((view.abs(flank), next));
        }
        // run died: resume the plan
        let plan = self.plan(view.edges.len());
        self.open_tasks(view, &plan, next_task as usize)
            .or_else(|| self.settle_move(view))
    }

    /// A settled segment plays max-Danger inside itself; the move carries
    /// the (possibly updated) machine state so the transition commits.
    fn settle_move(&self, view: &View<'_, '_, '_>) -> Option<SegDecision> {
        self.fallback_move(view).map(|e| {
            let mut next = self.clone();
            next.phase = Phase::Settled;
            (e, next)
        })
    }

    fn fallback_move(&self, view: &View<'_, '_, '_>) -> Option<EdgeId> {
        max_danger_edge(view.state, Some(view.edges))
    }
}

struct View<'a, 'b, 'g> {
    edges: &'a [EdgeId],
    state: &'b GameState<'g>,
    reflected: bool,
}

impl View<'_, '_, '_> {
    fn abs(&self, slot: usize) -> EdgeId {
        if self.reflected {
            self.edges[self.edges.len() - 1 - slot]
        } else {
            self.edges[slot]
        }
    }

    fn ownership(&self, slot: usize) -> Ownership {
        self.state.ownership(self.abs(slot))
    }

    fn is_free(&self, slot: usize) -> bool {
        self.ownership(slot) == Ownership::Free
    }

    fn is_mine(&self, slot: usize) -> bool {
        self.ownership(slot) == Ownership::Owned(Player::Isolator)
    }

    fn is_toucher(&self, slot: usize) -> bool {
        self.ownership(slot) == Ownership::Owned(Player::Toucher)
    }

    /// Center slot of the best `width`-window in `range`: every slot free
    /// or already ours, the center free (own strays only lengthen the
    /// string). Lowest absolute center edge id wins.
    fn best_window_center(&self, range: std::ops::Range<usize>, width: usize) -> Option<usize> {
        if range.len() < width {
            return None;
        }
        let mut best: Option<(EdgeId, usize)> = None;
        for start in range.start..=range.end - width {
            let center = start + width / 2;
            if (start..start + width).all(|s| !self.is_toucher(s))
                && self.is_free(center)
                && best.is_none_or(|(id, _)| self.abs(center) < id)
            {
                best = Some((self.abs(center), center));
            }
        }
        best.map(|(_, c)| c)
    }
}

/// Response discipline over a ring of edges (one cycle component):
/// partition on Toucher's first move into a leftover segment ending at that
/// move plus 16-edge segments, then answer within the segment played.
#[derive(Clone, Debug)]
pub(crate) struct CycleMachine {
    /// Edge ids in ring order, fixed at `begin`.
    ring: Vec<EdgeId>,
    /// Ring position of Toucher's first move; segments derive from it.
    anchor: Option<u16>,
    machines: Vec<SegMachine>,
}

impl CycleMachine {
    pub(crate) fn new(ring: Vec<EdgeId>) -> CycleMachine {
        CycleMachine { ring, anchor: None, machines: Vec::new() }
    }

    pub(crate) fn ring(&self) -> &[EdgeId] {
        &self.ring
    }

    fn position(&self, edge: EdgeId) -> Option<usize> {
        self.ring.iter().position(|&e| e == edge)
    }

    /// Segment boundaries as (start position, length), leftover first.
    fn layout(&self) -> Vec<(usize, usize)> {
        let n = self.ring.len();
        let anchor = self.anchor.expect("layout needs anchor") as usize;
        let leftover = ((n - 1) % 16) + 1;
        let mut out = Vec::with_capacity(1 + (n - leftover) / 16);
        let start = (anchor + n + 1 - leftover) % n;
        out.push((start, leftover));
        let mut at = (anchor + 1) % n;
        for _ in 0..(n - leftover) / 16 {
            out.push((at, 16));
            at = (at + 16) % n;
        }
        out
    }

    fn segment_edges(&self, start: usize, len: usize) -> Vec<EdgeId> {
        let n = self.ring.len();
        (0..len).map(|i| self.ring[(start + i) % n]).collect()
    }

    fn segment_of(&self, edge: EdgeId) -> Option<(usize, Vec<EdgeId>)> {
        let pos = self.position(edge)?;
        let n = self.ring.len();
        for (idx, (start, len)) in self.layout().into_iter().enumerate() {
            let offset = (pos + n - start) % n;
            if offset < len {
                return Some((idx, self.segment_edges(start, len)));
            }
        }
        None
    }

    /// Records a Toucher move; partitions the ring on her first one.
    pub(crate) fn observe_toucher(&mut self, edge: EdgeId) {
        let Some(pos) = self.position(edge) else { return };
        if self.anchor.is_none() {
            self.anchor = Some(pos as u16);
            let layout = self.layout();
            self.machines = layout
                .iter()
                .enumerate()
                .map(|(i, &(_, len))| {
                    if i == 0 {
                        SegMachine::leftover(len)
                    } else {
                        SegMachine::middle16()
                    }
                })
                .collect();
        }
        if let Some((idx, edges)) = self.segment_of(edge) {
            let slot = edges.iter().position(|&e| e == edge).expect("edge in segment");
            self.machines[idx].set_trigger(slot);
        }
    }

    /// Commits a machine transition when one of our own moves matches what
    /// the segment machine would have played from `state_before`.
    pub(crate) fn observe_own(&mut self, state_before: &GameState<'_>, edge: EdgeId) {
        if self.anchor.is_none() {
            return;
        }
        let Some((idx, edges)) = self.segment_of(edge) else { return };
        if let Some((chosen, next)) = self.machines[idx].respond(&edges, state_before) {
            if chosen == edge {
                self.machines[idx] = next;
            }
        }
    }

    /// Isolator's reply to a Toucher move at `toucher_edge`.
    pub(crate) fn respond(
        &self,
        state: &GameState<'_>,
        toucher_edge: EdgeId,
    ) -> Option<EdgeId> {
        self.anchor?;
        let (idx, edges) = self.segment_of(toucher_edge)?;
        self.machines[idx]
            .respond(&edges, state)
            .map(|(edge, _)| edge)
    }

    pub(crate) fn digest(&self, out: &mut Vec<u8>) {
        match self.anchor {
            None => out.extend_from_slice(&[0, 0]),
            Some(a) => out.extend_from_slice(&(a + 1).to_le_bytes()),
        }
        for m in &self.machines {
            m.digest(out);
        }
    }
}

/// Derives the ring order of a cycle component starting at `start`, moving
/// first along its lowest-id incident edge. Returns edge ids in ring order,
/// or None if the component is not a simple cycle.
pub(crate) fn ring_of_component(
    g: &crate::graph::Graph,
    component: &[usize],
) -> Option<Vec<EdgeId>> {
    if component.len() < 3 {
        return None;
    }
    for &v in component {
        if g.degree(v) != 2 {
            return None;
        }
    }
    let start = component[0];
    let mut ring = Vec::with_capacity(component.len());
    let (first_edge, mut at) = g.incident(start)[0];
    ring.push(first_edge);
    let mut prev_edge = first_edge;
    while at != start {
        let &(e, w) = g
            .incident(at)
            .iter()
            .find(|&&(e, _)| e != prev_edge)
            .expect("degree 2");
        ring.push(e);
        prev_edge = e;
        at = w;
    }
    if ring.len() != component.len() {
        return None;
    }
    Some(ring)
}
