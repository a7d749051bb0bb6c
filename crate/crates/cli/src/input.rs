use std::str::FromStr;

use anyhow::{bail, Context, Result};
use clap::{Args, ValueEnum};
use extremal_core::generate::{generate, GenSpec};
use extremal_core::graph6;
use extremal_core::rational::parse_rational;
use extremal_core::solver::{SolverConfig, Strategy};
use extremal_core::Graph;
use num_rational::BigRational;

/// A graph argument: `g6:<graph6>` or `gen:<kind>:<params>`.
#[derive(Debug, Clone)]
pub struct GraphArg {
    pub graph: Graph,
    /// The generator spec, when the graph came from one.
    pub source: Option<String>,
}

impl FromStr for GraphArg {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Self> {
        if let Some(code) = s.strip_prefix("g6:") {
            let graph = graph6::decode(code).with_context(|| format!("malformed graph6 in {s:?}"))?;
            return Ok(GraphArg { graph, source: None });
        }
        if s.starts_with("gen:") {
            let spec: GenSpec = s.parse().with_context(|| format!("bad generator spec {s:?}"))?;
            return Ok(GraphArg {
                graph: generate(&spec)?,
                source: Some(spec.to_string()),
            });
        }
        bail!("graph {s:?} must start with g6: or gen:")
    }
}

pub fn rational(s: &str) -> Result<BigRational> {
    Ok(parse_rational(s)?)
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum StrategyArg {
    Auto,
    Exhaustive,
    BranchAndBound,
}

/// Search budgets and switches. Defaults are the library defaults.
#[derive(Debug, Clone, Args)]
pub struct Budget {
    /// Search-tree nodes allowed per solve.
    #[arg(long, default_value_t = SolverConfig::default().node_limit)]
    pub node_limit: u64,
    #[arg(long, value_enum, default_value = "auto")]
    pub strategy: StrategyArg,
    /// Largest host edge count for the exhaustive search.
    #[arg(long, default_value_t = SolverConfig::default().exhaustive_max_edges)]
    pub exhaustive_max_edges: usize,
    /// Largest host edge count for branch-and-bound.
    #[arg(long, default_value_t = SolverConfig::default().branch_and_bound_max_edges)]
    pub bnb_max_edges: usize,
    /// Most optima listed before the enumeration is cut.
    #[arg(long, default_value_t = SolverConfig::default().max_ties)]
    pub max_ties: usize,
    /// Largest vertex count for the exact partition search.
    #[arg(long, default_value_t = SolverConfig::default().partite_exact_max_vertices)]
    pub partite_exact_max_vertices: usize,
    #[arg(long, default_value_t = SolverConfig::default().local_search_restarts)]
    pub restarts: usize,
    /// Seed for local search.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Branch on edges that would complete a forbidden copy.
    #[arg(long)]
    pub no_prune_completing: bool,
    /// Skip the neighborhood test for edge-critical forbidden graphs.
    #[arg(long)]
    pub no_prune_neighborhood: bool,
    /// Do not seed branch-and-bound with the heuristic value.
    #[arg(long)]
    pub no_heuristic_incumbent: bool,
}

impl Budget {
    pub fn config(&self) -> SolverConfig {
        SolverConfig {
            strategy: match self.strategy {
                StrategyArg::Auto => Strategy::Auto,
                StrategyArg::Exhaustive => Strategy::Exhaustive,
                StrategyArg::BranchAndBound => Strategy::BranchAndBound,
            },
            node_limit: self.node_limit,
            exhaustive_max_edges: self.exhaustive_max_edges,
            branch_and_bound_max_edges: self.bnb_max_edges,
            max_ties: self.max_ties,
            partite_exact_max_vertices: self.partite_exact_max_vertices,
            local_search_restarts: self.restarts,
            seed: self.seed,
            prune_completing_edges: !self.no_prune_completing,
            prune_critical_neighborhood: !self.no_prune_neighborhood,
            heuristic_incumbent: !self.no_heuristic_incumbent,
            ..SolverConfig::default()
        }
    }
}
