//! Peel, repartition the core, then re-insert the peeled vertices.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use super::{max_partite, peel, PartiteMode, Partition, PeelTrace, Proof, SolveResult, SolveStats, SolverConfig};
use crate::coloring::Colorer;
use crate::counting::{cliques_within, contains, count_pattern, Count};
use crate::error::{Error, Result};
use crate::graph::{bits, Graph};
use crate::pattern::Pattern;

/// Intermediate values of [`rebuild`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RebuildReport {
    pub trace: PeelTrace,
    pub core_exact: bool,
    pub core_count: Count,
    /// Gains in re-insertion order, i.e. reverse removal order.
    pub gains: Vec<Count>,
    pub partition: Partition,
    pub forbidden_chromatic_number: usize,
    /// The final subgraph contains no copy of `h`.
    pub h_free: bool,
}

/// Adds the unassigned vertex `v` to the part where it closes the most new
/// cross-part copies of `t` (lowest part index on ties).
pub fn reinsert(g: &Graph, part: &Partition, v: usize, t: &Pattern) -> Result<(Partition, Count)> {
    g.check_vertex(v)?;
    g.require_small()?;
    t.validate()?;
    if part.n() != g.n() {
        return Err(Error::InvalidParameter(format!(
            "partition covers {} vertices, graph has {}",
            part.n(),
            g.n()
        )));
    }
    if part.k == 0 {
        return Err(Error::InvalidParameter("partition has no parts".into()));
    }
    if part.part(v).is_some() {
        return Err(Error::InvalidParameter(format!("vertex {v} is already assigned")));
    }
    let host = g.masks().unwrap();
    let part_masks = part.part_masks();
    let support = part_masks.iter().fold(0u64, |a, m| a | m);
    let before = match t {
        Pattern::Clique(_) => 0,
        _ => count_pattern(&part.multipartite_subgraph(g), t)?,
    };

    let mut best: Option<(usize, Count)> = None;
    for p in 0..part.k {
        let gain = match *t {
            Pattern::Clique(m) => {
                let mut cross = vec![0u64; g.n()];
                for u in bits(support) {
                    let own = part_masks[part.part(u).unwrap()];
                    cross[u] = host[u] & support & !own;
                }
                if m == 0 {
                    0
                } else {
                    cliques_within(&cross, host[v] & support & !part_masks[p], m - 1)
                }
            }
            _ => {
                let mut next = part.clone();
                next.assignment[v] = Some(p);
                count_pattern(&next.multipartite_subgraph(g), t)? - before
            }
        };
        if best.is_none_or(|(_, b)| gain > b) {
            best = Some((p, gain));
        }
    }
    let (p, gain) = best.unwrap();
    let mut next = part.clone();
    next.assignment[v] = Some(p);
    Ok((next, gain))
}

/// Peels `g` with threshold parameter `k`, takes a best `(k-1)`-partite
/// subgraph of the core (exact when small enough, local search otherwise) and
/// re-inserts the peeled vertices in reverse order of removal.
///
/// The result is `(k-1)`-partite, hence `h`-free when `chi(h) = k`. For any
/// other `h` the result is checked for `h` explicitly.
pub fn rebuild(g: &Graph, k: usize, t: &Pattern, h: &Graph, config: &SolverConfig) -> Result<(SolveResult, RebuildReport)> {
    let clock = Instant::now();
    if k < 2 {
        return Err(Error::InvalidParameter(format!("rebuild needs k >= 2, got {k}")));
    }
    let chi = Colorer::default().chromatic_number(h)?.chromatic_number;
    let (core, trace) = peel(g, k, t, config.peel_floor)?;
    let core_exact = core.n() <= config.partite_exact_max_vertices;
    let mode = if core_exact {
        PartiteMode::Exact
    } else {
        PartiteMode::LocalSearch
    };
    let (core_part, core_count) = max_partite(&core, k - 1, t, mode, config)?;

    let mut partition = Partition::empty(g.n(), k - 1);
    for (i, &v) in trace.remaining.iter().enumerate() {
        partition.assignment[v] = core_part.assignment[i];
    }
    let mut gains = Vec::with_capacity(trace.steps.len());
    for step in trace.steps.iter().rev() {
        let (next, gain) = reinsert(g, &partition, step.vertex, t)?;
        partition = next;
        gains.push(gain);
    }

    let result = partition.multipartite_subgraph(g);
    let best_count = count_pattern(&result, t)?;
    assert_eq!(
        best_count,
        core_count + gains.iter().sum::<Count>(),
        "re-insertion gains do not add up"
    );
    let h_free = if chi == k {
        true
    } else {
        log::warn!("chi(h) = {chi} differs from k = {k}; checking the result for h explicitly");
        !contains(&result, h)?
    };
    Ok((
        SolveResult {
            best_count,
            best_edges: result.edges(),
            proof: Proof::Heuristic,
            stats: SolveStats {
                nodes: 0,
                elapsed_ms: clock.elapsed().as_millis() as u64,
            },
        },
        RebuildReport {
            trace,
            core_exact,
            core_count,
            gains,
            partition,
            forbidden_chromatic_number: chi,
            h_free,
        },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{generate, GenSpec};

    #[test]
    fn reinsert_examples() {
        let k3 = Graph::complete(3);
        let part = Partition::from_parts(3, 2, &[vec![0], vec![1]]).unwrap();
        let (next, gain) = reinsert(&k3, &part, 2, &Pattern::edge()).unwrap();
        assert_eq!(gain, 1);
        assert_eq!(next.part(2), Some(0));

        let t63 = generate(&GenSpec::Turan { n: 6, r: 3 }).unwrap();
        let part = Partition::from_parts(6, 3, &[vec![0, 1], vec![2, 3], vec![4]]).unwrap();
        let (next, gain) = reinsert(&t63, &part, 5, &Pattern::Clique(3)).unwrap();
        assert_eq!(gain, 4);
        assert_eq!(next.part(5), Some(2));

        let part = Partition::from_parts(4, 2, &[vec![0], vec![1, 2]]).unwrap();
        let (next, gain) = reinsert(&Graph::empty(4), &part, 3, &Pattern::edge()).unwrap();
        assert_eq!((gain, next.part(3)), (0, Some(0)));
    }

    #[test]
    fn reinsert_rejects_assigned_vertex() {
        let part = Partition::from_parts(3, 2, &[vec![0], vec![1]]).unwrap();
        assert!(reinsert(&Graph::complete(3), &part, 1, &Pattern::edge()).is_err());
    }

    #[test]
    fn generic_gain_matches_clique_gain() {
        let g = generate(&GenSpec::Gnp { n: 9, p: 0.7, seed: 2 }).unwrap();
        let part = Partition::from_parts(9, 3, &[vec![0, 3, 6], vec![1, 4], vec![2, 7]]).unwrap();
        for v in [5, 8] {
            let fast = reinsert(&g, &part, v, &Pattern::Clique(3)).unwrap();
            let slow = reinsert(&g, &part, v, &Pattern::Arbitrary(Graph::complete(3))).unwrap();
            assert_eq!(fast, slow);
        }
    }

    #[test]
    fn rebuild_examples() {
        let config = SolverConfig::default();
        let (r, report) = rebuild(&Graph::complete(6), 3, &Pattern::edge(), &Graph::complete(3), &config).unwrap();
        assert_eq!(r.best_count, 9);
        assert_eq!(r.proof, Proof::Heuristic);
        assert!(report.h_free);
        let t93 = generate(&GenSpec::Turan { n: 9, r: 3 }).unwrap();
        let (r, _) = rebuild(&t93, 4, &Pattern::Clique(3), &Graph::complete(4), &config).unwrap();
        assert_eq!(r.best_count, 27);
    }

    #[test]
    fn rebuild_with_peeling() {
        // K_6 with a pendant path: peeled vertices come back with their gains.
        let mut g = Graph::complete(6).disjoint_union(&Graph::empty(2));
        g.add_edge(0, 6);
        g.add_edge(6, 7);
        let config = SolverConfig::default();
        let (r, report) = rebuild(&g, 3, &Pattern::edge(), &Graph::complete(3), &config).unwrap();
        assert_eq!(report.trace.steps.len(), 2);
        assert_eq!(report.core_count, 9);
        assert_eq!(r.best_count, 9 + report.gains.iter().sum::<Count>());
        assert_eq!(r.best_count, 11);
    }
}
