//! Optimization over subgraphs of a host graph.
//!
//! * [`max_hfree_subgraph`]: an `H`-free spanning subgraph with the most
//!   copies of `T`, exactly (exhaustive or branch-and-bound) or heuristically;
//! * [`max_partite`]: a `k`-partite subgraph with the most copies of `T`;
//! * [`peel`]: repeated removal of low-degree vertices;
//! * [`reinsert`] and [`rebuild`]: the peel, repartition and re-insert pipeline.

mod exact;
mod partite;
mod peel;
mod rebuild;

use serde::{Deserialize, Serialize};

use crate::counting::Count;

pub use exact::{all_optima, max_hfree_subgraph, maximal_hfree_subgraphs, Optima};
pub use partite::{max_partite, Partition};
pub use peel::{peel, PeelStep, PeelTrace, StopReason};
pub use rebuild::{rebuild, reinsert, RebuildReport};

pub type Edge = (usize, usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Exact,
    Heuristic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PartiteMode {
    Exact,
    LocalSearch,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    /// Exhaustive for small edge sets, branch-and-bound otherwise.
    Auto,
    Exhaustive,
    BranchAndBound,
}

/// How optimality of a [`SolveResult`] was established.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Proof {
    Exhaustive,
    BranchAndBound,
    Heuristic,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveStats {
    /// Search nodes visited. Independent of the number of worker threads.
    pub nodes: u64,
    pub elapsed_ms: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveResult {
    pub best_count: Count,
    /// Edges of the optimal subgraph as sorted `(u, v)` pairs with `u < v`.
    pub best_edges: Vec<Edge>,
    pub proof: Proof,
    pub stats: SolveStats,
}

/// Budgets and switches shared by the solvers.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SolverConfig {
    pub strategy: Strategy,
    /// `Auto` runs the exhaustive search up to this many host edges.
    pub auto_exhaustive_max_edges: usize,
    pub exhaustive_max_edges: usize,
    pub branch_and_bound_max_edges: usize,
    pub node_limit: u64,
    /// Never branch on an edge that would complete a copy of `H`.
    pub prune_completing_edges: bool,
    /// Reject states where some neighborhood contains `H - c` for a critical vertex `c`.
    pub prune_critical_neighborhood: bool,
    /// Start branch-and-bound from the value of the heuristic pipeline.
    pub heuristic_incumbent: bool,
    /// Decisions taken before the search fans out into parallel subtrees.
    pub split_depth: usize,
    pub max_ties: usize,
    pub partite_exact_max_vertices: usize,
    pub local_search_restarts: usize,
    pub local_search_moves_per_vertex: usize,
    pub seed: u64,
    pub peel_floor: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            strategy: Strategy::Auto,
            auto_exhaustive_max_edges: 12,
            exhaustive_max_edges: 28,
            branch_and_bound_max_edges: 60,
            node_limit: 2_000_000_000,
            prune_completing_edges: true,
            prune_critical_neighborhood: true,
            heuristic_incumbent: true,
            split_depth: 8,
            max_ties: 100_000,
            partite_exact_max_vertices: 14,
            local_search_restarts: 20,
            local_search_moves_per_vertex: 10,
            seed: 0,
            peel_floor: 0,
        }
    }
}
