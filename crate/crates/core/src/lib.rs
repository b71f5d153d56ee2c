//! Research laboratory for the Toucher-Isolator game on graphs.
//!
//! Two players alternately claim edges of a graph: Toucher wants every
//! vertex to meet one of her edges, Isolator wants vertices whose entire
//! neighbourhood of edges is his. This crate provides the exact game
//! engine, a zoo of deterministic strategies, a memoized minimax solver
//! (including best responses to fixed strategies and region subgames with
//! passes), closed-form bound computation, and a verification harness.

pub mod bounds;
pub mod corpus;
pub mod dyadic;
pub mod game;
pub mod generate;
pub mod graph;
pub mod orientation;
pub mod solver;
pub mod strategy;
pub mod verify;

pub use dyadic::DyadicValue;
pub use game::{play_match, GameState, MoveRecord, Player, TurnSchedule};
pub use graph::{parse_graph, Graph};
