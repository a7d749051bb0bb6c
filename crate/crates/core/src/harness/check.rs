use super::Counterexample;
use crate::coloring::{is_proper_coloring, Colorer};
use crate::counting::{contains, count_pattern};
use crate::error::Result;
use crate::graph::Graph;
use crate::graph6;
use crate::solver::{max_hfree_subgraph, Mode, SolverConfig, Strategy};

/// Assignments tried by the brute-force coloring check before falling back to
/// the backtracking colorer.
const BRUTE_FORCE_COLORINGS: u64 = 1 << 22;

/// Re-derives every property a counterexample claims, from its graph6 strings
/// alone. Returns the list of properties that do not hold; empty means valid.
pub fn recheck_counterexample(ce: &Counterexample, config: &SolverConfig) -> Result<Vec<String>> {
    let mut problems = Vec::new();
    let host = graph6::decode(&ce.host)?;
    let forbidden = graph6::decode(&ce.forbidden)?;
    let sub = graph6::decode(&ce.subgraph)?;

    if sub.n() != host.n() || !sub.is_subgraph_of(&host) {
        problems.push("subgraph is not a spanning subgraph of the host".into());
        return Ok(problems);
    }
    let mut listed = ce.edges.clone();
    listed.sort();
    if listed != sub.edges() {
        problems.push("edge list does not match the subgraph".into());
    }
    if contains(&sub, &forbidden)? {
        problems.push("subgraph contains the forbidden graph".into());
    }
    if count_pattern(&sub, &ce.pattern)? != ce.count {
        problems.push(format!("subgraph does not have {} copies of {}", ce.count, ce.pattern));
    }
    if colorable(&sub, ce.colors)? {
        problems.push(format!("subgraph is {}-colorable", ce.colors));
    }
    if ce.optimal {
        let config = SolverConfig {
            strategy: Strategy::BranchAndBound,
            prune_critical_neighborhood: false,
            heuristic_incumbent: false,
            ..config.clone()
        };
        let best = max_hfree_subgraph(&host, &ce.pattern, &forbidden, Mode::Exact, &config)?;
        if best.best_count != ce.count {
            problems.push(format!("optimum is {}, not {}", best.best_count, ce.count));
        }
    }
    Ok(problems)
}

fn colorable(g: &Graph, colors: usize) -> Result<bool> {
    let n = g.n() as u32;
    let total = (colors as u64).checked_pow(n);
    match total {
        Some(total) if colors > 0 && total <= BRUTE_FORCE_COLORINGS => {
            let mut assignment = vec![0usize; g.n()];
            for code in 0..total {
                let mut c = code;
                for slot in assignment.iter_mut() {
                    *slot = (c % colors as u64) as usize;
                    c /= colors as u64;
                }
                if is_proper_coloring(g, &assignment, colors) {
                    return Ok(true);
                }
            }
            Ok(false)
        }
        _ => Ok(Colorer::default().is_k_colorable(g, colors)?.is_some()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{generate, GenSpec};
    use crate::pattern::Pattern;

    fn c5_counterexample() -> Counterexample {
        let c5 = generate(&GenSpec::Cycle { n: 5 }).unwrap();
        Counterexample {
            host: graph6::encode(&c5),
            forbidden: graph6::encode(&Graph::complete(3)),
            pattern: Pattern::edge(),
            subgraph: graph6::encode(&c5),
            edges: c5.edges(),
            count: 5,
            colors: 2,
            optimal: true,
        }
    }

    #[test]
    fn valid_counterexample_passes() {
        assert!(recheck_counterexample(&c5_counterexample(), &SolverConfig::default()).unwrap().is_empty());
    }

    #[test]
    fn forged_counterexamples_are_caught() {
        let config = SolverConfig::default();
        let mut ce = c5_counterexample();
        ce.count = 6;
        let problems = recheck_counterexample(&ce, &config).unwrap();
        assert_eq!(problems.len(), 2);

        let mut ce = c5_counterexample();
        ce.colors = 3;
        assert_eq!(recheck_counterexample(&ce, &config).unwrap(), vec!["subgraph is 3-colorable".to_string()]);

        let mut ce = c5_counterexample();
        let k5 = Graph::complete(5);
        ce.host = graph6::encode(&k5);
        let problems = recheck_counterexample(&ce, &config).unwrap();
        assert_eq!(problems, vec!["optimum is 6, not 5".to_string()]);

        let mut ce = c5_counterexample();
        ce.subgraph = graph6::encode(&k5);
        assert_eq!(recheck_counterexample(&ce, &config).unwrap().len(), 1);
    }
}
