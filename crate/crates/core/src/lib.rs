//! Extremal `H`-free subgraphs of dense graphs that maximize the number of
//! copies of cliques `K_m` and clique blow-ups `K_m(t)`.
//!
//! The crate provides:
//!
//! * [`graph`], [`generate`], [`graph6`]: bitmask graphs, deterministic
//!   generators and graph6 I/O;
//! * [`counting`]: exact copy counts `N(G, T)` and `H`-containment;
//! * [`coloring`]: exact colorability, chromatic number, critical edges and vertices;
//! * [`solver`]: exact maximizers over `H`-free spanning subgraphs, best
//!   `k`-partite subgraphs, the low-degree peeling process and the
//!   peel-and-repartition heuristic;
//! * [`formulas`]: closed-form predictions, thresholds and bounds as exact rationals;
//! * [`harness`]: reproducible experiments with persisted, replayable records.

pub mod coloring;
pub mod counting;
pub mod error;
pub mod formulas;
pub mod generate;
pub mod graph;
pub mod graph6;
pub mod harness;
pub mod pattern;
pub mod rational;
pub mod solver;

pub use counting::Count;
pub use error::{Error, Result};
pub use graph::Graph;
pub use pattern::Pattern;
