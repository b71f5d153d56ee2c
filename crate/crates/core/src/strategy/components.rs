//! Toucher strategies for graphs made of identical small components.

use super::{lowest_free, Strategy, StrategyError};
use crate::game::{GameState, Player};
use crate::graph::{EdgeId, Graph, VertexId};

/// Component decomposition shared by the component strategies.
#[derive(Clone, Debug, Default)]
struct Components {
    /// component id per edge
    edge_comp: Vec<usize>,
    /// edge ids per component, ascending
    comp_edges: Vec<Vec<EdgeId>>,
    /// vertex sets per component, ascending
    comp_vertices: Vec<Vec<VertexId>>,
}

impl Components {
    fn of(graph: &Graph) -> Self {
        let comps = graph.components();
        let mut vertex_comp = vec![0usize; graph.vertex_count()];
        for (i, comp) in comps.iter().enumerate() {
            for &v in comp {
                vertex_comp[v] = i;
            }
        }
        let mut comp_edges = vec![Vec::new(); comps.len()];
        let mut edge_comp = vec![0usize; graph.edge_count()];
        for (e, &(u, _)) in graph.edges().iter().enumerate() {
            let c = vertex_comp[u];
            edge_comp[e] = c;
            comp_edges[c].push(e);
        }
        Components { edge_comp, comp_edges, comp_vertices: comps }
    }
}

fn counts_in(state: &GameState<'_>, edges: &[EdgeId]) -> (usize, usize) {
    use crate::game::Ownership;
    let mut toucher = 0;
    let mut isolator = 0;
    for &e in edges {
        match state.ownership(e) {
            Ownership::Owned(Player::Toucher) => toucher += 1,
            Ownership::Owned(Player::Isolator) => isolator += 1,
            Ownership::Free => {}
        }
    }
    (toucher, isolator)
}

/// Toucher's strategy on disjoint K4 components: answer in the opponent's
/// component, taking first the edge disjoint from his opener, then the edge
/// that shares his new vertex with her matching edge's spare endpoint, then
/// the final edge. Leaves every vertex touched.
#[derive(Clone, Debug, Default)]
pub struct K4ComponentsToucher {
    comps: Components,
    last_isolator_move: Option<EdgeId>,
}

impl K4ComponentsToucher {
    pub fn new() -> Self {
        Self::default()
    }

    fn disjoint_partner(&self, graph: &Graph, comp: usize, e: EdgeId) -> EdgeId {
        let (a, b) = graph.endpoints(e);
        *self.comps.comp_edges[comp]
            .iter()
            .find(|&&f| {
                let (u, v) = graph.endpoints(f);
                u != a && u != b && v != a && v != b
            })
            .expect("K4 edge has a disjoint partner")
    }

    /// Free edge in `comp` touching the most Toucher-untouched vertices,
    /// lowest id on ties.
    fn greedy_cover(&self, state: &GameState<'_>, comp: usize) -> Option<EdgeId> {
        let g = state.graph();
        let mut best: Option<(usize, EdgeId)> = None;
        for &e in &self.comps.comp_edges[comp] {
            if !state.is_free(e) {
                continue;
            }
            let (u, v) = g.endpoints(e);
            let gain = (!state.touched_by_toucher(u)) as usize
                + (!state.touched_by_toucher(v)) as usize;
            if best.is_none_or(|(s, _)| gain > s) {
                best = Some((gain, e));
            }
        }
        best.map(|(_, e)| e)
    }
}

impl Strategy for K4ComponentsToucher {
    fn name(&self) -> String {
        "k4_components".to_string()
    }

    fn begin(&mut self, state: &GameState<'_>) -> Result<(), StrategyError> {
        let g = state.graph();
        let comps = Components::of(g);
        for (i, verts) in comps.comp_vertices.iter().enumerate() {
            if verts.len() != 4 || comps.comp_edges[i].len() != 6 {
                return Err(StrategyError::Inapplicable {
                    strategy: self.name(),
                    reason: format!("component {} is not a K4", i),
                });
            }
        }
        self.comps = comps;
        self.last_isolator_move = None;
        Ok(())
    }

    fn choose(&self, state: &GameState<'_>) -> Result<EdgeId, StrategyError> {
        let g = state.graph();
        let Some(last) = self.last_isolator_move else {
            return lowest_free(state);
        };
        let comp = self.comps.edge_comp[last];
        let edges = &self.comps.comp_edges[comp];
        let (mine, his) = counts_in(state, edges);
        if !edges.iter().any(|&e| state.is_free(e)) {
            return lowest_free(state);
        }
        if mine == 0 && his == 1 {
            return Ok(self.disjoint_partner(g, comp, last));
        }
        if mine == 1 && his == 2 {
            // Identify her matching edge and his opener; if the position
            // matches the clean pattern, play the prescribed completion.
            let my_edge = edges
                .iter()
                .copied()
                .find(|&e| state.ownership(e) == crate::game::Ownership::Owned(Player::Toucher))
                .expect("counted one");
            let (m1, m2) = g.endpoints(my_edge);
            let his_first = edges.iter().copied().find(|&e| {
                e != last
                    && state.ownership(e) == crate::game::Ownership::Owned(Player::Isolator)
            });
            if let Some(first) = his_first {
                let complement = self.disjoint_partner(g, comp, first);
                if complement == my_edge {
                    // his latest edge joins a vertex of his opener to one of
                    // hers; answer with the edge to her other endpoint.
                    let (a, b) = g.endpoints(last);
                    let (opener_end, mine_end) =
                        if a == m1 || a == m2 { (b, a) } else { (a, b) };
                    let other_mine = if mine_end == m1 { m2 } else { m1 };
                    if let Some(&resp) = edges.iter().find(|&&e| {
                        let (u, v) = g.endpoints(e);
                        state.is_free(e)
                            && ((u, v) == (opener_end, other_mine)
                                || (v, u) == (opener_end, other_mine))
                    }) {
                        return Ok(resp);
                    }
                }
            }
        }
        self.greedy_cover(state, comp)
            .ok_or(StrategyError::NoFreeEdge)
    }

    fn observe(&mut self, _state_before: &GameState<'_>, player: Player, edge: EdgeId) {
        if player == Player::Isolator {
            self.last_isolator_move = Some(edge);
        }
    }
}

/// Toucher's strategy on an odd number of C3 components: open component 0,
/// pair the rest, answer a fresh pair entry by opening its partner, and
/// otherwise finish components she has entered.
#[derive(Clone, Debug, Default)]
pub struct C3ComponentsToucher {
    comps: Components,
    partner: Vec<Option<usize>>,
    last_isolator_move: Option<EdgeId>,
}

impl C3ComponentsToucher {
    pub fn new() -> Self {
        Self::default()
    }

    fn comp_state(&self, state: &GameState<'_>, comp: usize) -> (usize, usize, Option<EdgeId>) {
        let edges = &self.comps.comp_edges[comp];
        let (mine, his) = counts_in(state, edges);
        let free = edges.iter().copied().find(|&e| state.is_free(e));
        (mine, his, free)
    }
}

impl Strategy for C3ComponentsToucher {
    fn name(&self) -> String {
        "c3_components".to_string()
    }

    fn begin(&mut self, state: &GameState<'_>) -> Result<(), StrategyError> {
        let g = state.graph();
        let comps = Components::of(g);
        for (i, verts) in comps.comp_vertices.iter().enumerate() {
            if verts.len() != 3 || comps.comp_edges[i].len() != 3 {
                return Err(StrategyError::Inapplicable {
                    strategy: self.name(),
                    reason: format!("component {} is not a C3", i),
                });
            }
        }
        if comps.comp_vertices.len().is_multiple_of(2) {
            return Err(StrategyError::Inapplicable {
                strategy: self.name(),
                reason: "component count must be odd".to_string(),
            });
        }
        let count = comps.comp_vertices.len();
        let mut partner = vec![None; count];
        let mut i = 1;
        while i + 1 < count {
            partner[i] = Some(i + 1);
            partner[i + 1] = Some(i);
            i += 2;
        }
        self.comps = comps;
        self.partner = partner;
        self.last_isolator_move = None;
        Ok(())
    }

    fn choose(&self, state: &GameState<'_>) -> Result<EdgeId, StrategyError> {
        if state.moves_made() == 0 {
            // opening move in component 0
            return self.comps.comp_edges[0]
                .iter()
                .copied()
                .find(|&e| state.is_free(e))
                .ok_or(StrategyError::NoFreeEdge);
        }
        if let Some(last) = self.last_isolator_move {
            let comp = self.comps.edge_comp[last];
            let (mine, his, free) = self.comp_state(state, comp);
            if let Some(e) = free {
                if mine >= 1 {
                    // take a second edge; all three vertices get touched
                    return Ok(e);
                }
                if his == 1 {
                    if let Some(p) = self.partner[comp] {
                        let (p_mine, p_his, p_free) = self.comp_state(state, p);
                        if p_mine == 0 && p_his == 0 {
                            if let Some(pe) = p_free {
                                return Ok(pe);
                            }
                        }
                    }
                    return Ok(e);
                }
                // his == 2: forced, else the whole component goes untouched
                return Ok(e);
            }
        }
        // spare move: secure a component we have entered, else enter a
        // fresh one, else anything
        for comp in 0..self.comps.comp_edges.len() {
            let (mine, _, free) = self.comp_state(state, comp);
            if mine == 1 {
                if let Some(e) = free {
                    return Ok(e);
                }
            }
        }
        for comp in 0..self.comps.comp_edges.len() {
            let (mine, his, free) = self.comp_state(state, comp);
            if mine == 0 && his == 0 {
                if let Some(e) = free {
                    return Ok(e);
                }
            }
        }
        lowest_free(state)
    }

    fn observe(&mut self, _state_before: &GameState<'_>, player: Player, edge: EdgeId) {
        if player == Player::Isolator {
            self.last_isolator_move = Some(edge);
        }
    }
}
