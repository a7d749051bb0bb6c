//! Exact search over `H`-free spanning subgraphs.
//!
//! Host edges are decided in lexicographic order, including before excluding,
//! so the first optimal leaf reached is the lexicographically least optimal
//! edge set. The bound at a node is the count of `T` in the union of the
//! chosen edges and every undecided edge that could still be added.

use std::sync::atomic::{AtomicU64, Ordering};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{rebuild, Edge, Mode, Proof, SolveResult, SolveStats, SolverConfig, Strategy};
use crate::coloring::Colorer;
use crate::counting::{self, count_masks, has_clique_within, Count, EdgeAnchoredDetector, Embedder};
use crate::error::{Error, Result};
use crate::graph::{bits, low_bits, Graph};
use crate::pattern::Pattern;

const FLUSH_EVERY: u64 = 1 << 12;

/// Every optimal edge set, in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Optima {
    pub best_count: Count,
    pub edge_sets: Vec<Vec<Edge>>,
    /// False when more than `max_ties` optima exist and the list was cut.
    pub complete: bool,
    pub proof: Proof,
    pub stats: SolveStats,
}

enum Forbid {
    Clique(usize),
    General(EdgeAnchoredDetector),
}

impl Forbid {
    fn new(h: &Graph) -> Result<Self> {
        let n = h.n();
        if n >= 2 && h.edge_count() == n * (n - 1) / 2 {
            Ok(Forbid::Clique(n))
        } else {
            Ok(Forbid::General(EdgeAnchoredDetector::new(h)?))
        }
    }

    /// Would adding `xy` (absent from `masks`) create a copy of `H`?
    fn completes(&self, masks: &mut [u64], x: usize, y: usize) -> bool {
        match self {
            Forbid::Clique(k) => has_clique_within(masks, masks[x] & masks[y], k - 2),
            Forbid::General(d) => {
                masks[x] |= 1 << y;
                masks[y] |= 1 << x;
                let hit = d.copy_through_edge(masks, x, y);
                masks[x] &= !(1 << y);
                masks[y] &= !(1 << x);
                hit
            }
        }
    }

    fn contained(&self, masks: &[u64]) -> bool {
        match self {
            Forbid::Clique(k) => has_clique_within(masks, low_bits(masks.len()), *k),
            Forbid::General(d) => d.contained_in(masks),
        }
    }
}

struct Problem<'a> {
    edges: Vec<Edge>,
    target: &'a Pattern,
    forbid: Forbid,
    rule_a: bool,
    /// Embedder for `H - c`, `c` a critical vertex of an edge-critical `H`.
    neighborhood: Option<Embedder>,
    bounded: bool,
    n: usize,
}

impl Problem<'_> {
    fn bound(&self, masks: &[u64], chosen: u64, avail: u64) -> Result<Count> {
        if *self.target == Pattern::Clique(2) {
            return Ok((chosen.count_ones() + avail.count_ones()) as Count);
        }
        let mut union = [0u64; 64];
        union[..self.n].copy_from_slice(masks);
        for j in bits(avail) {
            let (u, v) = self.edges[j];
            union[u] |= 1 << v;
            union[v] |= 1 << u;
        }
        count_masks(&union[..self.n], self.target)
    }

    /// Drops the undecided edges that can no longer be added.
    fn filter(&self, masks: &mut [u64], avail: u64) -> u64 {
        if !self.rule_a {
            return avail;
        }
        let mut kept = avail;
        for j in bits(avail) {
            let (x, y) = self.edges[j];
            if self.forbid.completes(masks, x, y) {
                kept &= !(1 << j);
            }
        }
        kept
    }

    /// After adding `uv`: no neighborhood may contain `H - c`. Only the
    /// neighborhoods of `u`, `v` and their common neighbors changed.
    fn neighborhood_ok(&self, masks: &[u64], u: usize, v: usize) -> bool {
        let Some(e) = &self.neighborhood else {
            return true;
        };
        let touched = (1u64 << u) | (1u64 << v) | (masks[u] & masks[v]);
        bits(touched).all(|x| !e.exists_within(masks, masks[x], &[]))
    }
}

struct Search<'a> {
    p: &'a Problem<'a>,
    masks: Vec<u64>,
    floor: Count,
    best: Option<(Count, u64)>,
    ties: Option<Ties>,
    pending: u64,
    shared: &'a AtomicU64,
    limit: u64,
}

struct Ties {
    sets: Vec<u64>,
    max: usize,
    truncated: bool,
}

struct Subtree {
    best: Option<(Count, u64)>,
    ties: Vec<u64>,
    truncated: bool,
}

impl<'a> Search<'a> {
    fn new(p: &'a Problem<'a>, chosen: u64, floor: Count, max_ties: Option<usize>, shared: &'a AtomicU64, limit: u64) -> Self {
        let mut masks = vec![0u64; p.n];
        for j in bits(chosen) {
            let (u, v) = p.edges[j];
            masks[u] |= 1 << v;
            masks[v] |= 1 << u;
        }
        Search {
            p,
            masks,
            floor,
            best: None,
            ties: max_ties.map(|max| Ties {
                sets: Vec::new(),
                max,
                truncated: false,
            }),
            pending: 0,
            shared,
            limit,
        }
    }

    fn tick(&mut self) -> Result<()> {
        self.pending += 1;
        if self.pending == FLUSH_EVERY {
            self.flush()?;
        }
        Ok(())
    }

    fn flush(&mut self) -> Result<()> {
        let total = self.shared.fetch_add(self.pending, Ordering::Relaxed) + self.pending;
        self.pending = 0;
        if total > self.limit {
            return Err(Error::BudgetExceeded { nodes: self.limit });
        }
        Ok(())
    }

    fn add(&mut self, u: usize, v: usize) {
        self.masks[u] |= 1 << v;
        self.masks[v] |= 1 << u;
    }

    fn remove(&mut self, u: usize, v: usize) {
        self.masks[u] &= !(1 << v);
        self.masks[v] &= !(1 << u);
    }

    fn prunes(&self, bound: Count) -> bool {
        if !self.p.bounded {
            return false;
        }
        if bound < self.floor {
            return true;
        }
        match self.best {
            None => false,
            Some((b, _)) if self.ties.is_some() => bound < b,
            Some((b, _)) => bound <= b,
        }
    }

    fn leaf(&mut self, chosen: u64, value: Count) {
        if !self.p.rule_a && self.p.forbid.contained(&self.masks) {
            return;
        }
        if value < self.floor {
            return;
        }
        match (&mut self.ties, self.best) {
            (None, Some((b, _))) if value <= b => {}
            (None, _) => self.best = Some((value, chosen)),
            (Some(_), Some((b, _))) if value < b => {}
            (Some(t), Some((b, _))) if value == b => {
                if t.sets.len() < t.max {
                    t.sets.push(chosen);
                } else {
                    t.truncated = true;
                }
            }
            (Some(t), _) => {
                self.best = Some((value, chosen));
                t.sets.clear();
                t.truncated = false;
                t.sets.push(chosen);
            }
        }
    }

    fn dfs(&mut self, chosen: u64, avail: u64) -> Result<()> {
        self.tick()?;
        let bound = self.p.bound(&self.masks, chosen, avail)?;
        if avail == 0 {
            self.leaf(chosen, bound);
            return Ok(());
        }
        if self.prunes(bound) {
            return Ok(());
        }
        let j = avail.trailing_zeros() as usize;
        let rest = avail & !(1 << j);
        let (u, v) = self.p.edges[j];
        self.add(u, v);
        if self.p.neighborhood_ok(&self.masks, u, v) {
            let next = self.p.filter(&mut self.masks, rest);
            self.dfs(chosen | 1 << j, next)?;
        }
        self.remove(u, v);
        self.dfs(chosen, rest)
    }

    /// The states after `depth` decisions, in search order.
    fn expand(&mut self, chosen: u64, avail: u64, depth: usize, out: &mut Vec<(u64, u64)>) -> Result<()> {
        if depth == 0 || avail == 0 {
            out.push((chosen, avail));
            return Ok(());
        }
        self.tick()?;
        let j = avail.trailing_zeros() as usize;
        let rest = avail & !(1 << j);
        let (u, v) = self.p.edges[j];
        self.add(u, v);
        if self.p.neighborhood_ok(&self.masks, u, v) {
            let next = self.p.filter(&mut self.masks, rest);
            self.expand(chosen | 1 << j, next, depth - 1, out)?;
        }
        self.remove(u, v);
        self.expand(chosen, rest, depth - 1, out)
    }

    fn finish(mut self) -> Result<Subtree> {
        self.flush()?;
        let (ties, truncated) = match self.ties {
            Some(t) => (t.sets, t.truncated),
            None => (Vec::new(), false),
        };
        Ok(Subtree {
            best: self.best,
            ties,
            truncated,
        })
    }
}

struct Outcome {
    best: (Count, u64),
    ties: Vec<u64>,
    complete: bool,
    edges: Vec<Edge>,
    proof: Proof,
    nodes: u64,
}

fn run(g: &Graph, t: &Pattern, h: &Graph, config: &SolverConfig, collect: bool) -> Result<Outcome> {
    g.require_small()?;
    t.validate()?;
    if h.edge_count() == 0 && h.n() <= g.n() {
        return Err(Error::Infeasible(format!(
            "every subgraph of a {}-vertex host contains the edgeless graph on {} vertices",
            g.n(),
            h.n()
        )));
    }
    let edges = g.edges();
    let m = edges.len();
    let strategy = match config.strategy {
        Strategy::Auto if m <= config.auto_exhaustive_max_edges => Strategy::Exhaustive,
        Strategy::Auto => Strategy::BranchAndBound,
        s => s,
    };
    let (limit, proof) = match strategy {
        Strategy::Exhaustive => (config.exhaustive_max_edges, Proof::Exhaustive),
        _ => (config.branch_and_bound_max_edges, Proof::BranchAndBound),
    };
    if m > limit.min(64) {
        return Err(Error::InstanceTooLarge {
            what: "host edge set",
            size: m,
            limit: limit.min(64),
        });
    }
    // Fails early on patterns the counters cannot handle.
    counting::count_pattern(&Graph::empty(g.n()), t)?;

    let colorer = Colorer::default();
    let neighborhood = if config.prune_critical_neighborhood && h.edge_count() > 0 {
        match colorer.critical_edge(h)? {
            Some(_) => colorer
                .critical_vertex(h)?
                .map(|c| h.remove_vertex(c).map(|(rest, _)| Embedder::new(&rest, &[])))
                .transpose()?,
            None => None,
        }
    } else {
        None
    };
    let bounded = strategy == Strategy::BranchAndBound;
    let problem = Problem {
        edges,
        target: t,
        forbid: Forbid::new(h)?,
        rule_a: config.prune_completing_edges,
        neighborhood,
        bounded,
        n: g.n(),
    };

    let floor = if bounded && config.heuristic_incumbent {
        heuristic_floor(g, t, h, config)
    } else {
        0
    };
    let max_ties = collect.then_some(config.max_ties.max(1));
    let shared = AtomicU64::new(0);

    let mut root = Search::new(&problem, 0, floor, max_ties, &shared, config.node_limit);
    let start = problem.filter(&mut root.masks, low_bits(m));
    let mut frontier = Vec::new();
    root.expand(0, start, config.split_depth, &mut frontier)?;
    root.flush()?;

    let subtrees: Vec<Subtree> = frontier
        .par_iter()
        .map(|&(chosen, avail)| {
            let mut s = Search::new(&problem, chosen, floor, max_ties, &shared, config.node_limit);
            s.dfs(chosen, avail)?;
            s.finish()
        })
        .collect::<Result<_>>()?;
    let nodes = shared.load(Ordering::Relaxed);
    if nodes > config.node_limit {
        return Err(Error::BudgetExceeded {
            nodes: config.node_limit,
        });
    }

    let best = subtrees
        .iter()
        .filter_map(|s| s.best)
        .fold(None, |acc: Option<(Count, u64)>, cand| match acc {
            Some(a) if a.0 >= cand.0 => Some(a),
            _ => Some(cand),
        })
        .expect("the optimum is never pruned");
    let mut ties = Vec::new();
    let mut complete = true;
    if let Some(max) = max_ties {
        for s in subtrees.iter().filter(|s| s.best.map(|b| b.0) == Some(best.0)) {
            complete &= !s.truncated;
            ties.extend_from_slice(&s.ties);
        }
        if ties.len() > max {
            ties.truncate(max);
            complete = false;
        }
    }
    Ok(Outcome {
        best,
        ties,
        complete,
        edges: problem.edges,
        proof,
        nodes,
    })
}

/// Value of the heuristic pipeline, a valid lower bound on the optimum.
fn heuristic_floor(g: &Graph, t: &Pattern, h: &Graph, config: &SolverConfig) -> Count {
    let Ok(chi) = Colorer::default().chromatic_number(h) else {
        return 0;
    };
    match rebuild(g, chi.chromatic_number, t, h, config) {
        Ok((res, report)) if report.h_free => res.best_count,
        _ => 0,
    }
}

fn edge_list(edges: &[Edge], set: u64) -> Vec<Edge> {
    bits(set).map(|j| edges[j]).collect()
}

fn witness_check(g: &Graph, t: &Pattern, h: &Graph, edges: &[Edge], count: Count) -> Result<()> {
    let w = g.spanning_subgraph(edges)?;
    assert_eq!(counting::count_pattern(&w, t)?, count, "witness recount disagrees");
    assert!(!counting::contains(&w, h)?, "witness contains the forbidden graph");
    Ok(())
}

/// An `h`-free spanning subgraph of `g` with the most copies of `t`.
///
/// Exact mode returns the lexicographically least optimal edge set. Heuristic
/// mode runs [`rebuild`] with `k = chi(h)`.
pub fn max_hfree_subgraph(g: &Graph, t: &Pattern, h: &Graph, mode: Mode, config: &SolverConfig) -> Result<SolveResult> {
    let clock = Instant::now();
    if mode == Mode::Heuristic {
        if h.edge_count() == 0 {
            return Err(Error::Infeasible("the heuristic needs a forbidden graph with an edge".into()));
        }
        let k = Colorer::default().chromatic_number(h)?.chromatic_number;
        let (res, _) = rebuild(g, k, t, h, config)?;
        return Ok(res);
    }
    let out = run(g, t, h, config, false)?;
    let best_edges = edge_list(&out.edges, out.best.1);
    witness_check(g, t, h, &best_edges, out.best.0)?;
    Ok(SolveResult {
        best_count: out.best.0,
        best_edges,
        proof: out.proof,
        stats: SolveStats {
            nodes: out.nodes,
            elapsed_ms: clock.elapsed().as_millis() as u64,
        },
    })
}

/// Every optimal `h`-free spanning subgraph of `g`, up to `config.max_ties`.
pub fn all_optima(g: &Graph, t: &Pattern, h: &Graph, config: &SolverConfig) -> Result<Optima> {
    let clock = Instant::now();
    let out = run(g, t, h, config, true)?;
    let edge_sets: Vec<Vec<Edge>> = out.ties.iter().map(|&s| edge_list(&out.edges, s)).collect();
    witness_check(g, t, h, &edge_sets[0], out.best.0)?;
    Ok(Optima {
        best_count: out.best.0,
        edge_sets,
        complete: out.complete,
        proof: out.proof,
        stats: SolveStats {
            nodes: out.nodes,
            elapsed_ms: clock.elapsed().as_millis() as u64,
        },
    })
}

/// Every maximal `h`-free spanning subgraph of `g`, in lexicographic order of
/// edge sets, up to `limit` of them. The flag is false when the list was cut.
pub fn maximal_hfree_subgraphs(g: &Graph, h: &Graph, limit: usize, config: &SolverConfig) -> Result<(Vec<Vec<Edge>>, bool)> {
    g.require_small()?;
    if h.edge_count() == 0 && h.n() <= g.n() {
        return Err(Error::Infeasible("every subgraph contains an edgeless forbidden graph".into()));
    }
    let edges = g.edges();
    if edges.len() > config.exhaustive_max_edges.min(64) {
        return Err(Error::InstanceTooLarge {
            what: "host edge set",
            size: edges.len(),
            limit: config.exhaustive_max_edges.min(64),
        });
    }
    let forbid = Forbid::new(h)?;
    let mut walk = Maximal {
        edges: &edges,
        forbid: &forbid,
        masks: vec![0; g.n()],
        found: Vec::new(),
        limit,
        complete: true,
        nodes: 0,
        node_limit: config.node_limit,
    };
    let all = low_bits(edges.len());
    let start = {
        let mut masks = vec![0u64; g.n()];
        let mut kept = all;
        for j in bits(all) {
            if forbid.completes(&mut masks, edges[j].0, edges[j].1) {
                kept &= !(1 << j);
            }
        }
        kept
    };
    walk.run(0, start, all)?;
    let sets = walk.found.iter().map(|&s| edge_list(&edges, s)).collect();
    Ok((sets, walk.complete))
}

struct Maximal<'a> {
    edges: &'a [Edge],
    forbid: &'a Forbid,
    masks: Vec<u64>,
    found: Vec<u64>,
    limit: usize,
    complete: bool,
    nodes: u64,
    node_limit: u64,
}

impl Maximal<'_> {
    fn run(&mut self, chosen: u64, avail: u64, all: u64) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.node_limit {
            return Err(Error::BudgetExceeded { nodes: self.node_limit });
        }
        if !self.complete {
            return Ok(());
        }
        if avail == 0 {
            let maximal = bits(all & !chosen).all(|j| {
                let (x, y) = self.edges[j];
                self.forbid.completes(&mut self.masks, x, y)
            });
            if maximal {
                if self.found.len() == self.limit {
                    self.complete = false;
                } else {
                    self.found.push(chosen);
                }
            }
            return Ok(());
        }
        let j = avail.trailing_zeros() as usize;
        let rest = avail & !(1 << j);
        let (u, v) = self.edges[j];
        self.masks[u] |= 1 << v;
        self.masks[v] |= 1 << u;
        let mut next = rest;
        for i in bits(rest) {
            let (x, y) = self.edges[i];
            if self.forbid.completes(&mut self.masks, x, y) {
                next &= !(1 << i);
            }
        }
        self.run(chosen | 1 << j, next, all)?;
        self.masks[u] &= !(1 << v);
        self.masks[v] &= !(1 << u);
        self.run(chosen, rest, all)
    }
}
