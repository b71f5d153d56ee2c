//! Deterministic move-selection strategies behind one interface.
//!
//! A strategy is constructed once, reset for a match via [`Strategy::begin`],
//! queried with [`Strategy::choose`] (pure: it never mutates), and kept up to
//! date by [`Strategy::observe`], which is called for every move by either
//! player. Splitting decision from update keeps search code simple: the
//! best-response solver clones a strategy at each branch and replays the
//! branching move through `observe`.

mod components;
mod leaf_priority;
mod max_danger;
mod pairing;
mod random;
mod registry;
mod segment;

pub mod cycle_segment;
pub mod path_segment;
pub mod two_regular;

pub use components::{C3ComponentsToucher, K4ComponentsToucher};
pub use cycle_segment::CycleSegmentIsolator;
pub use leaf_priority::LeafPriorityIsolator;
pub use max_danger::MaxDangerStrategy;
pub use pairing::{PairingToucher, PairingVariant};
pub use path_segment::PathSegmentIsolator;
pub use random::RandomStrategy;
pub use registry::{build_strategy, strategy_names};
pub use two_regular::TwoRegularIsolator;

use crate::game::{GameState, Player};
use crate::graph::EdgeId;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum StrategyError {
    #[error("strategy {strategy} does not apply: {reason}")]
    Inapplicable { strategy: String, reason: String },
    #[error("no free edge available")]
    NoFreeEdge,
    #[error("unknown strategy {0:?}")]
    UnknownStrategy(String),
    #[error("bad strategy arguments {args:?} for {name}: {reason}")]
    BadArguments { name: String, args: String, reason: String },
}

pub trait Strategy {
    fn name(&self) -> String;

    /// Resets internal state for a fresh match on `state.graph()`.
    /// Called before any move has been made.
    fn begin(&mut self, state: &GameState<'_>) -> Result<(), StrategyError>;

    /// Selects a free edge for the player to move. Pure: the strategy's
    /// state is only advanced by `observe`.
    fn choose(&self, state: &GameState<'_>) -> Result<EdgeId, StrategyError>;

    /// Notifies the strategy of a move by either player. `state_before` is
    /// the position the move was made from.
    fn observe(&mut self, state_before: &GameState<'_>, player: Player, edge: EdgeId);

    /// Appends a canonical encoding of every piece of internal state that is
    /// not derivable from the board alone. Strategies that are pure functions
    /// of the current position append nothing. Used as part of memoization
    /// keys by the best-response solver, so it must be injective over
    /// reachable internal states.
    fn digest(&self, out: &mut Vec<u8>) {
        let _ = out;
    }
}

/// The lowest-id free edge; the universal fallback move.
pub(crate) fn lowest_free(state: &GameState<'_>) -> Result<EdgeId, StrategyError> {
    state.free_edges().next().ok_or(StrategyError::NoFreeEdge)
}

/// The free edge maximizing the Danger sum of its endpoints, ties broken by
/// lowest edge id. When `within` is given, only those edges are considered.
pub(crate) fn max_danger_edge(
    state: &GameState<'_>,
    within: Option<&[EdgeId]>,
) -> Option<EdgeId> {
    let pick = |edges: &mut dyn Iterator<Item = EdgeId>| {
        let mut best: Option<(crate::dyadic::DyadicValue, EdgeId)> = None;
        for e in edges {
            if !state.is_free(e) {
                continue;
            }
            let (x, y) = state.graph().endpoints(e);
            let score = state.danger(x).expect("in range") + state.danger(y).expect("in range");
            match &best {
                Some((s, _)) if *s >= score => {}
                _ => best = Some((score, e)),
            }
        }
        best.map(|(_, e)| e)
    };
    match within {
        Some(edges) => pick(&mut edges.iter().copied()),
        None => pick(&mut state.free_edges()),
    }
}

/// Concrete strategy dispatch. Keeping strategies in an enum lets the
/// best-response search clone them without boxing.
#[derive(Clone)]
pub enum AnyStrategy {
    MaxDanger(MaxDangerStrategy),
    Pairing(PairingToucher),
    LeafPriority(LeafPriorityIsolator),
    CycleSegment(CycleSegmentIsolator),
    PathSegment(PathSegmentIsolator),
    TwoRegular(TwoRegularIsolator),
    K4Components(K4ComponentsToucher),
    C3Components(C3ComponentsToucher),
    Random(RandomStrategy),
}

macro_rules! dispatch {
    ($self:expr, $s:ident => $body:expr) => {
        match $self {
            AnyStrategy::MaxDanger($s) => $body,
            AnyStrategy::Pairing($s) => $body,
            AnyStrategy::LeafPriority($s) => $body,
            AnyStrategy::CycleSegment($s) => $body,
            AnyStrategy::PathSegment($s) => $body,
            AnyStrategy::TwoRegular($s) => $body,
            AnyStrategy::K4Components($s) => $body,
            AnyStrategy::C3Components($s) => $body,
            AnyStrategy::Random($s) => $body,
        }
    };
}

impl Strategy for AnyStrategy {
    fn name(&self) -> String {
        dispatch!(self, s => s.name())
    }

    fn begin(&mut self, state: &GameState<'_>) -> Result<(), StrategyError> {
        dispatch!(self, s => s.begin(state))
    }

    fn choose(&self, state: &GameState<'_>) -> Result<EdgeId, StrategyError> {
        dispatch!(self, s => s.choose(state))
    }

    fn observe(&mut self, state_before: &GameState<'_>, player: Player, edge: EdgeId) {
        dispatch!(self, s => s.observe(state_before, player, edge))
    }

    fn digest(&self, out: &mut Vec<u8>) {
        dispatch!(self, s => s.digest(out))
    }
}
