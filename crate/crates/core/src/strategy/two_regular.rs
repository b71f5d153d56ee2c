//! Isolator's strategy on disjoint unions of cycles.
//!
//! Components whose length is 4, 5 or 0 mod 6 run the cycle segment
//! machinery on their own. The remaining components (1, 2 or 3 mod 6) are
//! paired up, one possibly left over. When Toucher first enters a pair,
//! Isolator opens the partner and grows a string there (the open machine);
//! the component Toucher entered is defended section by section, six edges
//! at a time, two three-edge segments per section (the defend machine).
//! Guarantees at least ceil((n-3)/6) untouched vertices overall.

use super::segment::{ring_of_component, CycleMachine};
use super::{max_danger_edge, Strategy, StrategyError};
use crate::game::{GameState, Ownership, Player};
use crate::graph::EdgeId;

fn mine(state: &GameState<'_>, e: EdgeId) -> bool {
    state.ownership(e) == Ownership::Owned(Player::Isolator)
}

/// Sections machine for a component where Toucher effectively has the
/// first two moves: per six-edge section past her first move, answer her
/// entry into one three-edge segment with the centre of the other, then a
/// surviving neighbour of that centre.
#[derive(Clone, Debug)]
struct DefendMachine {
    trigger: u8,
    banked: u8,
    /// Per section: 0 = fresh, 1 + centre ring position = centred, 255 = done.
    sections: Vec<SectionState>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum SectionState {
    Fresh,
    Centered(u8),
    Done,
}

type Decision<M> = (EdgeId, M);

impl DefendMachine {
    fn new(trigger: usize, ring_len: usize) -> Self {
        let r = ring_len % 6; // 1, 2 or 3 by classification
        let q = (ring_len - r) / 6;
        DefendMachine {
            trigger: trigger as u8,
            banked: 0,
            sections: vec![SectionState::Fresh; q],
        }
    }

    fn section_center(&self, ring: &[EdgeId], section: usize, first_segment: bool) -> usize {
        let k = ring.len();
        let base = self.trigger as usize + 1 + 6 * section;
        let off = if first_segment { 1 } else { 4 };
        (base + off) % k
    }

    fn respond(&self, ring: &[EdgeId], state: &GameState<'_>, her_pos: Option<usize>) -> Option<Decision<Self>> {
        let k = ring.len();
        if let Some(pos) = her_pos {
            let offset = (pos + k - self.trigger as usize - 1) % k;
            if offset < 6 * self.sections.len() {
                let sec = offset / 6;
                let in_first = offset % 6 < 3;
                match self.sections[sec] {
                    SectionState::Fresh => {
                        let center = self.section_center(ring, sec, !in_first);
                        if state.is_free(ring[center]) {
                            let mut next = self.clone();
                            next.sections[sec] = SectionState::Centered(center as u8);
                            return Some((ring[center], next));
                        }
                    }
                    SectionState::Centered(c) => {
                        if let Some(d) = self.grab_flank(ring, state, sec, c as usize) {
                            return Some(d);
                        }
                    }
                    SectionState::Done => {}
                }
            }
        }
        self.spare(ring, state)
    }

    fn grab_flank(
        &self,
        ring: &[EdgeId],
        state: &GameState<'_>,
        sec: usize,
        center: usize,
    ) -> Option<Decision<Self>> {
        let k = ring.len();
        let mut flanks = [(center + k - 1) % k, (center + 1) % k];
        flanks.sort_by_key(|&p| ring[p]);
        for &f in &flanks {
            if state.is_free(ring[f]) {
                let mut next = self.clone();
                next.sections[sec] = SectionState::Done;
                next.banked += 1;
                return Some((ring[f], next));
            }
        }
        None
    }

    /// Moves made when no section demands a reply: bank a waiting flank,
    /// burn an unsectioned edge, or pre-claim a fresh section's centre.
    fn spare(&self, ring: &[EdgeId], state: &GameState<'_>) -> Option<Decision<Self>> {
        let k = ring.len();
        for (sec, s) in self.sections.iter().enumerate() {
            if let SectionState::Centered(c) = s {
                if let Some(d) = self.grab_flank(ring, state, sec, *c as usize) {
                    return Some(d);
                }
            }
        }
        let unsectioned: Vec<EdgeId> = (6 * self.sections.len()..k - 1)
            .map(|off| ring[(self.trigger as usize + 1 + off) % k])
            .collect();
        if let Some(e) = max_danger_edge(state, Some(&unsectioned)) {
            return Some((e, self.clone()));
        }
        for (sec, s) in self.sections.iter().enumerate() {
            if *s == SectionState::Fresh {
                let center = self.section_center(ring, sec, true);
                if state.is_free(ring[center]) {
                    let mut next = self.clone();
                    next.sections[sec] = SectionState::Centered(center as u8);
                    return Some((ring[center], next));
                }
            }
        }
        max_danger_edge(state, Some(ring)).map(|e| (e, self.clone()))
    }

    fn digest(&self, out: &mut Vec<u8>) {
        out.push(self.trigger);
        out.push(self.banked);
        for s in &self.sections {
            match s {
                SectionState::Fresh => out.push(0),
                SectionState::Centered(c) => {
                    out.push(1);
                    out.push(*c);
                }
                SectionState::Done => out.push(255),
            }
        }
    }
}

/// String-growing machine for a component Isolator opened himself: extend
/// the opening edge into a string until Toucher blocks both sides, then
/// scatter over the unspoilt three-edge segments of the remaining arc.
#[derive(Clone, Debug)]
struct OpenMachine {
    target: u8,
    banked: u8,
    phase: OpenPhase,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum OpenPhase {
    Build { anchor: u8 },
    Scatter { run_start: u8, run_len: u8, centers: Vec<u8> },
    Done,
}

impl OpenMachine {
    fn new(anchor: usize, ring_len: usize) -> Self {
        OpenMachine {
            target: ((ring_len + 3).div_ceil(6)) as u8,
            banked: 0,
            phase: OpenPhase::Build { anchor: anchor as u8 },
        }
    }

    fn arc_segments(run_start: usize, run_len: usize, k: usize) -> Vec<[usize; 3]> {
        let avail = k.saturating_sub(run_len + 2);
        let first = (run_start + run_len + 1) % k;
        (0..avail / 3)
            .map(|t| {
                let a = (first + 3 * t) % k;
                [a, (a + 1) % k, (a + 2) % k]
            })
            .collect()
    }

    fn open_center(
        &self,
        ring: &[EdgeId],
        state: &GameState<'_>,
        run_start: usize,
        run_len: usize,
        centers: &[u8],
    ) -> Option<Decision<Self>> {
        let k = ring.len();
        let mut best: Option<(EdgeId, usize)> = None;
        for seg in Self::arc_segments(run_start, run_len, k) {
            if seg.iter().all(|&p| state.is_free(ring[p])) {
                let c = seg[1];
                if best.is_none_or(|(id, _)| ring[c] < id) {
                    best = Some((ring[c], c));
                }
            }
        }
        let (edge, c) = best?;
        let mut next = self.clone();
        let mut cs = centers.to_vec();
        cs.push(c as u8);
        next.phase = OpenPhase::Scatter {
            run_start: run_start as u8,
            run_len: run_len as u8,
            centers: cs,
        };
        Some((edge, next))
    }

    fn respond(
        &self,
        ring: &[EdgeId],
        state: &GameState<'_>,
        her_pos: Option<usize>,
    ) -> Option<Decision<Self>> {
        let k = ring.len();
        match &self.phase {
            OpenPhase::Build { anchor } => {
                let anchor = *anchor as usize;
                if !mine(state, ring[anchor]) {
                    return self.fallback(ring, state);
                }
                let mut l = anchor;
                let mut len = 1;
                while len < k && mine(state, ring[(l + k - 1) % k]) {
                    l = (l + k - 1) % k;
                    len += 1;
                }
                let mut r = anchor;
                while len < k && mine(state, ring[(r + 1) % k]) {
                    r = (r + 1) % k;
                    len += 1;
                }
                let left = (l + k - 1) % k;
                let right = (r + 1) % k;
                let mut ext: Vec<usize> = [left, right]
                    .into_iter()
                    .filter(|&p| len < k && state.is_free(ring[p]))
                    .collect();
                ext.sort_by_key(|&p| ring[p]);
                if let Some(&p) = ext.first() {
                    return Some((ring[p], self.clone()));
                }
                // blocked on both sides: bank the string and scatter
                let mut next = self.clone();
                next.banked += (len as u8).saturating_sub(1);
                if next.banked >= next.target {
                    next.phase = OpenPhase::Done;
                    return next.fallback(ring, state);
                }
                match next.open_center(ring, state, l, len, &[]) {
                    Some(d) => Some(d),
                    None => {
                        next.phase = OpenPhase::Done;
                        next.fallback(ring, state)
                    }
                }
            }
            OpenPhase::Scatter { run_start, run_len, centers } => {
                // defend a flanked centre first
                if let Some(pos) = her_pos {
                    for (i, &c) in centers.iter().enumerate() {
                        let c = c as usize;
                        let left = (c + k - 1) % k;
                        let right = (c + 1) % k;
                        let other = if pos == left {
                            Some(right)
                        } else if pos == right {
                            Some(left)
                        } else {
                            None
                        };
                        if let Some(f) = other {
                            if state.is_free(ring[f]) {
                                let mut next = self.clone();
                                next.banked += 1;
                                let mut cs = centers.clone();
                                cs.remove(i);
                                next.phase = OpenPhase::Scatter {
                                    run_start: *run_start,
                                    run_len: *run_len,
                                    centers: cs,
                                };
                                return Some((ring[f], next));
                            }
                        }
                    }
                }
                if let Some(d) = self.open_center(
                    ring,
                    state,
                    *run_start as usize,
                    *run_len as usize,
                    centers,
                ) {
                    return Some(d);
                }
                // harvest any waiting flank
                for (i, &c) in centers.iter().enumerate() {
                    let c = c as usize;
                    let mut flanks = [(c + k - 1) % k, (c + 1) % k];
                    flanks.sort_by_key(|&p| ring[p]);
                    for &f in &flanks {
                        if state.is_free(ring[f]) {
                            let mut next = self.clone();
                            next.banked += 1;
                            let mut cs = centers.clone();
                            cs.remove(i);
                            next.phase = OpenPhase::Scatter {
                                run_start: *run_start,
                                run_len: *run_len,
                                centers: cs,
                            };
                            return Some((ring[f], next));
                        }
                    }
                }
                self.fallback(ring, state)
            }
            OpenPhase::Done => self.fallback(ring, state),
        }
    }

    fn fallback(&self, ring: &[EdgeId], state: &GameState<'_>) -> Option<Decision<Self>> {
        max_danger_edge(state, Some(ring)).map(|e| (e, self.clone()))
    }

    fn digest(&self, out: &mut Vec<u8>) {
        out.push(self.banked);
        match &self.phase {
            OpenPhase::Build { anchor } => out.extend_from_slice(&[0, *anchor]),
            OpenPhase::Scatter { run_start, run_len, centers } => {
                out.extend_from_slice(&[1, *run_start, *run_len, centers.len() as u8]);
                out.extend_from_slice(centers);
            }
            OpenPhase::Done => out.extend_from_slice(&[2, 0]),
        }
    }
}

#[derive(Clone, Debug)]
enum Role {
    Unassigned,
    Defend(DefendMachine),
    Open(OpenMachine),
}

#[derive(Clone, Debug)]
enum CompMachine {
    /// length 4, 5 or 0 mod 6: the single-cycle segment strategy
    Theorem3(CycleMachine),
    /// length 1, 2 or 3 mod 6: member of a pair (or the odd one out)
    Pairable { ring: Vec<EdgeId>, role: Role },
}

#[derive(Clone, Debug, Default)]
pub struct TwoRegularIsolator {
    comps: Vec<CompMachine>,
    partner: Vec<Option<usize>>,
    edge_comp: Vec<usize>,
    last_toucher_move: Option<EdgeId>,
}

impl TwoRegularIsolator {
    pub fn new() -> Self {
        Self::default()
    }

    fn ring_of(&self, comp: usize) -> &[EdgeId] {
        match &self.comps[comp] {
            CompMachine::Theorem3(m) => m.ring(),
            CompMachine::Pairable { ring, .. } => ring,
        }
    }

    fn pos_in(&self, comp: usize, edge: EdgeId) -> Option<usize> {
        self.ring_of(comp).iter().position(|&e| e == edge)
    }

    /// The move this strategy wants, with the component transition to
    /// commit when the move is actually made.
    fn decide(&self, state: &GameState<'_>) -> Option<(EdgeId, usize, Role)> {
        let last = self.last_toucher_move?;
        let comp = *self.edge_comp.get(last)?;
        match &self.comps[comp] {
            CompMachine::Theorem3(m) => {
                let e = m.respond(state, last)?;
                // transition handled by CycleMachine::observe_own
                Some((e, comp, Role::Unassigned))
            }
            CompMachine::Pairable { role, ring } => {
                let her_pos = self.pos_in(comp, last);
                match role {
                    Role::Defend(m) => {
                        // open the partner on her first move into a fresh pair
                        if let Some(p) = self.partner[comp] {
                            if let CompMachine::Pairable { role: Role::Unassigned, ring: pring } =
                                &self.comps[p]
                            {
                                let mut free: Vec<EdgeId> = pring
                                    .iter()
                                    .copied()
                                    .filter(|&e| state.is_free(e))
                                    .collect();
                                free.sort_unstable();
                                if let Some(&e) = free.first() {
                                    let anchor =
                                        pring.iter().position(|&x| x == e).expect("in ring");
                                    return Some((
                                        e,
                                        p,
                                        Role::Open(OpenMachine::new(anchor, pring.len())),
                                    ));
                                }
                            }
                        }
                        let (e, next) = m.respond(ring, state, her_pos)?;
                        Some((e, comp, Role::Defend(next)))
                    }
                    Role::Open(m) => {
                        let (e, next) = m.respond(ring, state, her_pos)?;
                        Some((e, comp, Role::Open(next)))
                    }
                    Role::Unassigned => None,
                }
            }
        }
    }
}

impl Strategy for TwoRegularIsolator {
    fn name(&self) -> String {
        "two_regular".to_string()
    }

    fn begin(&mut self, state: &GameState<'_>) -> Result<(), StrategyError> {
        let g = state.graph();
        let comps = g.components();
        let mut machines = Vec::with_capacity(comps.len());
        let mut vertex_comp = vec![0usize; g.vertex_count()];
        for (i, comp) in comps.iter().enumerate() {
            let ring = ring_of_component(g, comp).ok_or_else(|| StrategyError::Inapplicable {
                strategy: "two_regular".to_string(),
                reason: format!("component {} is not a cycle", i),
            })?;
            for &v in comp {
                vertex_comp[v] = i;
            }
            machines.push(if matches!(ring.len() % 6, 4 | 5 | 0) {
                CompMachine::Theorem3(CycleMachine::new(ring))
            } else {
                CompMachine::Pairable { ring, role: Role::Unassigned }
            });
        }
        let mut edge_comp = vec![0usize; g.edge_count()];
        for (e, &(u, _)) in g.edges().iter().enumerate() {
            edge_comp[e] = vertex_comp[u];
        }
        let pairable: Vec<usize> = machines
            .iter()
            .enumerate()
            .filter(|(_, m)| matches!(m, CompMachine::Pairable { .. }))
            .map(|(i, _)| i)
            .collect();
        let mut partner = vec![None; machines.len()];
        for pair in pairable.chunks(2) {
            if let [a, b] = *pair {
                partner[a] = Some(b);
                partner[b] = Some(a);
            }
        }
        self.comps = machines;
        self.partner = partner;
        self.edge_comp = edge_comp;
        self.last_toucher_move = None;
        Ok(())
    }

    fn choose(&self, state: &GameState<'_>) -> Result<EdgeId, StrategyError> {
        if let Some((e, _, _)) = self.decide(state) {
            return Ok(e);
        }
        max_danger_edge(state, None).ok_or(StrategyError::NoFreeEdge)
    }

    fn observe(&mut self, state_before: &GameState<'_>, player: Player, edge: EdgeId) {
        let comp = self.edge_comp[edge];
        match player {
            Player::Toucher => {
                match &mut self.comps[comp] {
                    CompMachine::Theorem3(m) => m.observe_toucher(edge),
                    CompMachine::Pairable { ring, role } => {
                        if matches!(role, Role::Unassigned) {
                            let pos = ring.iter().position(|&e| e == edge).expect("in ring");
                            *role = Role::Defend(DefendMachine::new(pos, ring.len()));
                        }
                    }
                }
                self.last_toucher_move = Some(edge);
            }
            Player::Isolator => {
                if let Some((chosen, target_comp, new_role)) = self.decide(state_before) {
                    if chosen == edge {
                        match &mut self.comps[target_comp] {
                            CompMachine::Theorem3(m) => m.observe_own(state_before, edge),
                            CompMachine::Pairable { role, .. } => *role = new_role,
                        }
                        return;
                    }
                }
                // stray move: keep single-cycle machines board-consistent
                if let CompMachine::Theorem3(m) = &mut self.comps[comp] {
                    m.observe_own(state_before, edge);
                }
            }
        }
    }

    fn digest(&self, out: &mut Vec<u8>) {
        for comp in &self.comps {
            match comp {
                CompMachine::Theorem3(m) => {
                    out.push(1);
                    m.digest(out);
                }
                CompMachine::Pairable { role, .. } => match role {
                    Role::Unassigned => out.push(2),
                    Role::Defend(m) => {
                        out.push(3);
                        m.digest(out);
                    }
                    Role::Open(m) => {
                        out.push(4);
                        m.digest(out);
                    }
                },
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::{play_match, TurnSchedule};
    use crate::generate::{cycle, generate, Family};
    use crate::strategy::{MaxDangerStrategy, RandomStrategy};

    #[test]
    fn rejects_non_2_regular() {
        let g = generate(&Family::Path(5)).unwrap();
        let s = GameState::new(&g, TurnSchedule::default());
        assert!(TwoRegularIsolator::new().begin(&s).is_err());
    }

    #[test]
    fn plays_legally_on_cycle_unions() {
        for fam in [Family::C3Components(3), Family::C4Components(2), Family::C3Components(2)] {
            let g = generate(&fam).unwrap();
            for seed in 0..25 {
                let mut t = RandomStrategy::new(seed);
                let mut i = TwoRegularIsolator::new();
                play_match(&g, TurnSchedule::default(), &mut t, &mut i).unwrap();
            }
        }
    }

    #[test]
    fn c9_banks_one_against_casual_play() {
        let g = cycle(9).unwrap();
        for seed in 0..25 {
            let mut t = RandomStrategy::new(seed);
            let mut i = TwoRegularIsolator::new();
            let (_, untouched, _) =
                play_match(&g, TurnSchedule::default(), &mut t, &mut i).unwrap();
            assert!(untouched >= 1, "seed {} got {}", seed, untouched);
        }
        let mut t = MaxDangerStrategy::new();
        let mut i = TwoRegularIsolator::new();
        let (_, untouched, _) = play_match(&g, TurnSchedule::default(), &mut t, &mut i).unwrap();
        assert!(untouched >= 1);
    }

    #[test]
    fn pair_of_triangles_banks_one() {
        let g = generate(&Family::C3Components(2)).unwrap();
        for seed in 0..25 {
            let mut t = RandomStrategy::new(seed);
            let mut i = TwoRegularIsolator::new();
            let (_, untouched, _) =
                play_match(&g, TurnSchedule::default(), &mut t, &mut i).unwrap();
            assert!(untouched >= 1, "seed {} got {}", seed, untouched);
        }
    }

    #[test]
    fn survives_toucher_opening_twice_on_c9() {
        // the sections machine is built for exactly this handicap: Toucher
        // takes the first two moves, alternation follows
        use crate::solver::{best_response_value, SolveOptions};
        use crate::strategy::AnyStrategy;
        let g = cycle(9).unwrap();
        let schedule =
            TurnSchedule::new(vec![Player::Toucher, Player::Toucher], Player::Isolator);
        let strat = AnyStrategy::TwoRegular(TwoRegularIsolator::new());
        let r = best_response_value(
            &g,
            &schedule,
            Player::Isolator,
            &strat,
            &SolveOptions::default(),
        )
        .unwrap();
        assert!(r.value >= 1, "got {}", r.value);
    }

    #[test]
    fn mixed_component_classes_compose() {
        // C4 runs the single-cycle machinery, C3 sits alone as a pairable
        // leftover; together they still meet ceil((7-3)/6) = 1
        use crate::graph::Graph;
        use crate::solver::{best_response_value, SolveOptions};
        use crate::strategy::AnyStrategy;
        let g = Graph::new(
            7,
            vec![(0, 1), (1, 2), (2, 3), (3, 0), (4, 5), (5, 6), (6, 4)],
        )
        .unwrap();
        let strat = AnyStrategy::TwoRegular(TwoRegularIsolator::new());
        let r = best_response_value(
            &g,
            &TurnSchedule::default(),
            Player::Isolator,
            &strat,
            &SolveOptions::default(),
        )
        .unwrap();
        assert!(r.value >= 1, "got {}", r.value);
    }
}
