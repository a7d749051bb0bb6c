//! Repeated removal of low-degree vertices.

use serde::{Deserialize, Serialize};

use crate::counting::{copies_through_vertex, Count};
use crate::error::{Error, Result};
use crate::formulas::meets_aes_degree;
use crate::graph::Graph;
use crate::pattern::Pattern;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeelStep {
    /// Vertex id in the input graph.
    pub vertex: usize,
    pub degree: usize,
    /// Order `n_j` of the graph the vertex was removed from.
    pub order: usize,
    pub copies_removed: Count,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StopReason {
    DegreeThresholdMet,
    FloorReached,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeelTrace {
    pub steps: Vec<PeelStep>,
    pub stop_reason: StopReason,
    /// Input ids of the vertices left in the core, ascending.
    pub remaining: Vec<usize>,
    /// More than half of the input vertices were removed.
    pub exceeded_half: bool,
}

/// `d < (1 - 3/(3k-4)) n`, cross-multiplied.
pub(crate) fn below_threshold(d: usize, n: usize, k: usize) -> bool {
    !meets_aes_degree(d, n, k)
}

/// Removes a minimum-degree vertex (lowest id on ties) while the minimum
/// degree is below `(1 - 3/(3k-4)) n_j` and more than `floor` vertices remain.
///
/// Returns the core, relabeled in increasing order of input ids, and the trace.
pub fn peel(g: &Graph, k: usize, t: &Pattern, floor: usize) -> Result<(Graph, PeelTrace)> {
    if k < 2 {
        return Err(Error::InvalidParameter(format!("peel needs k >= 2, got {k}")));
    }
    g.require_small()?;
    t.validate()?;
    let mut current = g.clone();
    let mut ids: Vec<usize> = (0..g.n()).collect();
    let mut steps = Vec::new();
    let stop_reason = loop {
        let n = current.n();
        if n <= floor {
            break StopReason::FloorReached;
        }
        let v = (0..n).min_by_key(|&v| (current.degree(v), v)).unwrap();
        let d = current.degree(v);
        if !below_threshold(d, n, k) {
            break StopReason::DegreeThresholdMet;
        }
        steps.push(PeelStep {
            vertex: ids[v],
            degree: d,
            order: n,
            copies_removed: copies_through_vertex(&current, t, v)?,
        });
        current = current.remove_vertex(v)?.0;
        ids.remove(v);
    };
    let exceeded_half = 2 * steps.len() > g.n();
    if exceeded_half {
        log::warn!("peeling removed {} of {} vertices", steps.len(), g.n());
    }
    Ok((
        current,
        PeelTrace {
            steps,
            stop_reason,
            remaining: ids,
            exceeded_half,
        },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complete_graph_is_its_own_core() {
        let (core, trace) = peel(&Graph::complete(8), 3, &Pattern::edge(), 0).unwrap();
        assert_eq!(core, Graph::complete(8));
        assert!(trace.steps.is_empty());
        assert_eq!(trace.stop_reason, StopReason::DegreeThresholdMet);
    }

    #[test]
    fn pendant_vertex_is_peeled() {
        let mut g = Graph::complete(6).disjoint_union(&Graph::empty(1));
        g.add_edge(0, 6);
        let (core, trace) = peel(&g, 3, &Pattern::edge(), 0).unwrap();
        assert_eq!(core, Graph::complete(6));
        assert_eq!(
            trace.steps,
            vec![PeelStep {
                vertex: 6,
                degree: 1,
                order: 7,
                copies_removed: 1
            }]
        );
        assert_eq!(trace.stop_reason, StopReason::DegreeThresholdMet);
    }

    #[test]
    fn star_stops_at_floor() {
        let edges: Vec<_> = (1..10).map(|v| (0, v)).collect();
        let star = Graph::from_edges(10, &edges).unwrap();
        let (core, trace) = peel(&star, 3, &Pattern::edge(), 5).unwrap();
        assert_eq!(core.n(), 5);
        assert_eq!(trace.stop_reason, StopReason::FloorReached);
        let removed: Vec<usize> = trace.steps.iter().map(|s| s.vertex).collect();
        assert_eq!(removed, vec![1, 2, 3, 4, 5]);
        assert_eq!(trace.remaining, vec![0, 6, 7, 8, 9]);
        for (j, s) in trace.steps.iter().enumerate() {
            assert_eq!(s.order, 10 - j);
            assert!(below_threshold(s.degree, s.order, 3));
        }
    }

    #[test]
    fn threshold_is_strict() {
        // k = 3: d < 2n/5, so d = 2 at n = 5 is not below.
        assert!(!below_threshold(2, 5, 3));
        assert!(below_threshold(1, 5, 3));
        // k = 2 never peels.
        assert!(!below_threshold(0, 10, 2));
    }
}
