use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use super::{
    execute, trial_seed, ClaimVerdict, ColorableResults, CompareResults, CompareRow, Counterexample, DichotomyResults,
    DichotomyRow, ExperimentRecord, ExperimentResults, ExperimentSpec, FrontierPoint, Host, NearColorableResults,
    ScanResults, ScanRow, ScanTrial, Verdict,
};
use crate::coloring::Colorer;
use crate::counting::{count_pattern, Count};
use crate::error::{Error, Result};
use crate::formulas::{meets_degree_fraction, predict_ex_blowup, predict_ex_clique};
use crate::generate::{degree_floor, min_degree_graph};
use crate::graph::Graph;
use crate::graph6;
use crate::pattern::Pattern;
use crate::rational::{int, to_f64};
use crate::solver::{
    all_optima, max_hfree_subgraph, max_partite, maximal_hfree_subgraphs, rebuild, Edge, Mode, PartiteMode,
    SolverConfig,
};

/// Maps budget errors to `None` and passes other errors through.
fn within_budget<T>(r: Result<T>) -> Result<Option<T>> {
    match r {
        Ok(x) => Ok(Some(x)),
        Err(e) if e.is_budget() => Ok(None),
        Err(e) => Err(e),
    }
}

fn ratio_string(num: Count, den: &BigRational) -> Option<String> {
    if den.is_zero() {
        None
    } else {
        Some((int(num) / den).to_string())
    }
}

fn claim(claim: &str, scope: Option<String>, verdict: Verdict) -> ClaimVerdict {
    ClaimVerdict {
        claim: claim.into(),
        scope,
        verdict,
        counterexample: None,
        note: None,
    }
}

struct Forbidden {
    graph: Graph,
    chromatic_number: usize,
    edge_critical: bool,
}

fn analyse_forbidden(g6: &str, k: usize) -> Result<Forbidden> {
    let graph = graph6::decode(g6)?;
    let colorer = Colorer::default();
    let chromatic_number = colorer.chromatic_number(&graph)?.chromatic_number;
    if chromatic_number != k {
        return Err(Error::InvalidParameter(format!(
            "forbidden graph has chromatic number {chromatic_number}, expected k = {k}"
        )));
    }
    let edge_critical = colorer.critical_edge(&graph)?.is_some();
    Ok(Forbidden {
        graph,
        chromatic_number,
        edge_critical,
    })
}

fn counterexample(host: &Graph, forbidden: &Graph, pattern: &Pattern, edges: &[Edge], count: Count, colors: usize, optimal: bool) -> Result<Counterexample> {
    let sub = host.spanning_subgraph(edges)?;
    Ok(Counterexample {
        host: graph6::encode(host),
        forbidden: graph6::encode(forbidden),
        pattern: pattern.clone(),
        subgraph: graph6::encode(&sub),
        edges: edges.to_vec(),
        count,
        colors,
        optimal,
    })
}

/// `Some(true)` when the subgraph on `edges` is `colors`-colorable, `None` when
/// the coloring budget ran out.
fn colorable(host: &Graph, edges: &[Edge], colors: usize) -> Result<Option<bool>> {
    let sub = host.spanning_subgraph(edges)?;
    Ok(within_budget(Colorer::default().is_k_colorable(&sub, colors))?.map(|c| c.is_some()))
}

pub(super) fn run(spec: &ExperimentSpec, config: &SolverConfig) -> Result<(ExperimentResults, Vec<ClaimVerdict>)> {
    match spec {
        ExperimentSpec::ExtremalColorable {
            host,
            forbidden,
            pattern,
            k,
            eps,
            all_optima,
        } => extremal_colorable(&host.graph()?, forbidden, pattern, *k, eps, *all_optima, config),
        ExperimentSpec::NearColorable {
            host,
            forbidden,
            pattern,
            k,
        } => near_colorable(&host.graph()?, forbidden, pattern, *k, config),
        ExperimentSpec::ComparePrediction { ns, k, m, t, forbidden } => compare(ns, *k, *m, *t, forbidden, config),
        ExperimentSpec::ThresholdScan {
            forbidden,
            pattern,
            k,
            n,
            fractions,
            trials,
            seed,
        } => scan(forbidden, pattern, *k, *n, fractions, *trials, *seed, config),
        ExperimentSpec::Dichotomy {
            host,
            k,
            m,
            t,
            gamma,
            limit,
        } => dichotomy(&host.graph()?, *k, *m, *t, gamma, *limit, config),
    }
}

fn check_k(k: usize) -> Result<()> {
    if k < 2 {
        return Err(Error::InvalidParameter(format!("k must be at least 2, got {k}")));
    }
    Ok(())
}

fn extremal_colorable(
    g: &Graph,
    forbidden: &str,
    t: &Pattern,
    k: usize,
    eps: &BigRational,
    enumerate: bool,
    config: &SolverConfig,
) -> Result<(ExperimentResults, Vec<ClaimVerdict>)> {
    check_k(k)?;
    if eps.is_negative() || eps > &BigRational::one() {
        return Err(Error::InvalidParameter(format!("eps must lie in [0, 1], got {eps}")));
    }
    let h = analyse_forbidden(forbidden, k)?;
    let n = g.n();
    let min_degree = g.min_degree();
    let phi = BigRational::one() - eps;
    let mut res = ColorableResults {
        n,
        min_degree,
        degree_floor: degree_floor(&phi, n),
        hypothesis_met: meets_degree_fraction(min_degree, n, &phi),
        forbidden_chromatic_number: h.chromatic_number,
        forbidden_edge_critical: h.edge_critical,
        optimum: None,
        witness_edges: None,
        proof: None,
        nodes: None,
        witness_colorable: None,
        optima_found: None,
        optima_complete: None,
        optima_colorable: None,
        rebuild_count: None,
        rebuild_h_free: None,
    };
    let mut verdicts = Vec::new();

    let mut optima = None;
    if enumerate {
        if let Some(o) = within_budget(all_optima(g, t, &h.graph, config))? {
            res.optimum = Some(o.best_count);
            res.witness_edges = Some(o.edge_sets[0].clone());
            res.proof = Some(o.proof);
            res.nodes = Some(o.stats.nodes);
            optima = Some(o);
        }
    } else if let Some(s) = within_budget(max_hfree_subgraph(g, t, &h.graph, Mode::Exact, config))? {
        res.optimum = Some(s.best_count);
        res.witness_edges = Some(s.best_edges);
        res.proof = Some(s.proof);
        res.nodes = Some(s.stats.nodes);
    }

    let mut witness = claim("witness-colorable", None, Verdict::Unknown);
    if let (Some(edges), Some(count)) = (&res.witness_edges, res.optimum) {
        res.witness_colorable = colorable(g, edges, k - 1)?;
        match res.witness_colorable {
            Some(true) => witness.verdict = Verdict::Holds,
            Some(false) => {
                witness.verdict = Verdict::Fails;
                witness.counterexample = Some(counterexample(g, &h.graph, t, edges, count, k - 1, true)?);
            }
            None => witness.note = Some("coloring budget exhausted".into()),
        }
    } else {
        witness.note = Some("solver budget exhausted".into());
    }
    if !res.hypothesis_met {
        witness.note = Some("minimum degree hypothesis not met".into());
    }
    verdicts.push(witness);

    if enumerate {
        let mut all = claim("all-optima-colorable", None, Verdict::Unknown);
        if let Some(o) = &optima {
            res.optima_found = Some(o.edge_sets.len());
            res.optima_complete = Some(o.complete);
            let mut good = 0;
            let mut undecided = false;
            for edges in &o.edge_sets {
                match colorable(g, edges, k - 1)? {
                    Some(true) => good += 1,
                    Some(false) if all.counterexample.is_none() => {
                        all.counterexample = Some(counterexample(g, &h.graph, t, edges, o.best_count, k - 1, true)?);
                    }
                    Some(false) => {}
                    None => undecided = true,
                }
            }
            res.optima_colorable = Some(good);
            if all.counterexample.is_some() {
                all.verdict = Verdict::Fails;
            } else if undecided {
                all.note = Some("coloring budget exhausted".into());
            } else if !o.complete {
                all.note = Some("more optima than the tie limit".into());
            } else {
                all.verdict = Verdict::Holds;
            }
        } else {
            all.note = Some("solver budget exhausted".into());
        }
        if !res.hypothesis_met {
            all.note = Some("minimum degree hypothesis not met".into());
        }
        verdicts.push(all);
    }

    if let Some((s, report)) = within_budget(rebuild(g, k, t, &h.graph, config))? {
        res.rebuild_count = Some(s.best_count);
        res.rebuild_h_free = Some(report.h_free);
    }
    Ok((ExperimentResults::ExtremalColorable(res), verdicts))
}

/// Edge deletions needed to make `sub` `parts`-partite, and whether the value is exact.
fn partite_distance(sub: &Graph, parts: usize, config: &SolverConfig) -> Result<(usize, usize, bool)> {
    let exact = sub.n() <= config.partite_exact_max_vertices;
    let mode = if exact { PartiteMode::Exact } else { PartiteMode::LocalSearch };
    let (_, kept) = max_partite(sub, parts, &Pattern::edge(), mode, config)?;
    let kept = kept as usize;
    Ok((sub.edge_count() - kept, kept, exact))
}

fn near_colorable(g: &Graph, forbidden: &str, t: &Pattern, k: usize, config: &SolverConfig) -> Result<(ExperimentResults, Vec<ClaimVerdict>)> {
    check_k(k)?;
    let h = analyse_forbidden(forbidden, k)?;
    let n = g.n();
    let mut res = NearColorableResults {
        n,
        forbidden_chromatic_number: h.chromatic_number,
        forbidden_edge_critical: h.edge_critical,
        optimum: None,
        witness_edges: None,
        witness_edge_count: None,
        partite_edges: None,
        deletion_exact: None,
        deletion_count: None,
        deletion_ratio: None,
    };
    let mut witness = claim("witness-colorable", None, Verdict::Unknown);
    match within_budget(max_hfree_subgraph(g, t, &h.graph, Mode::Exact, config))? {
        Some(s) => {
            let sub = g.spanning_subgraph(&s.best_edges)?;
            if let Some((deleted, kept, exact)) = within_budget(partite_distance(&sub, k - 1, config))? {
                res.partite_edges = Some(kept);
                res.deletion_exact = Some(exact);
                res.deletion_count = Some(deleted);
                res.deletion_ratio = ratio_string(deleted as Count, &int(n * n));
            }
            match colorable(g, &s.best_edges, k - 1)? {
                Some(true) => witness.verdict = Verdict::Holds,
                Some(false) => {
                    witness.verdict = Verdict::Fails;
                    witness.counterexample = Some(counterexample(g, &h.graph, t, &s.best_edges, s.best_count, k - 1, true)?);
                }
                None => witness.note = Some("coloring budget exhausted".into()),
            }
            res.optimum = Some(s.best_count);
            res.witness_edge_count = Some(s.best_edges.len());
            res.witness_edges = Some(s.best_edges);
        }
        None => witness.note = Some("solver budget exhausted".into()),
    }
    Ok((ExperimentResults::NearColorable(res), vec![witness]))
}

fn target(m: usize, t: usize) -> Pattern {
    if t == 1 {
        Pattern::Clique(m)
    } else {
        Pattern::Blowup { m, t }
    }
}

fn compare(ns: &[usize], k: usize, m: usize, t: usize, forbidden: &str, config: &SolverConfig) -> Result<(ExperimentResults, Vec<ClaimVerdict>)> {
    check_k(k)?;
    let h = graph6::decode(forbidden)?;
    let pattern = target(m, t);
    pattern.validate()?;
    let rows: Vec<CompareRow> = ns
        .par_iter()
        .map(|&n| {
            let nr = int(n);
            let prediction = if t == 1 {
                predict_ex_clique(&nr, k, m)?.value
            } else {
                predict_ex_blowup(&nr, m, t)?.value
            };
            let solved = within_budget(max_hfree_subgraph(&Graph::complete(n), &pattern, &h, Mode::Exact, config))?;
            Ok(CompareRow {
                n,
                exact: solved.as_ref().map(|s| s.best_count),
                ratio: solved.as_ref().and_then(|s| ratio_string(s.best_count, &prediction)),
                prediction: prediction.to_string(),
                proof: solved.as_ref().map(|s| s.proof),
                nodes: solved.as_ref().map(|s| s.stats.nodes),
            })
        })
        .collect::<Result<_>>()?;
    let unknown_rows = rows.iter().filter(|r| r.exact.is_none()).count();
    Ok((
        ExperimentResults::ComparePrediction(CompareResults {
            pattern,
            rows,
            unknown_rows,
        }),
        Vec::new(),
    ))
}

#[allow(clippy::too_many_arguments)]
fn scan(
    forbidden: &str,
    t: &Pattern,
    k: usize,
    n: usize,
    fractions: &[BigRational],
    trials: usize,
    seed: u64,
    config: &SolverConfig,
) -> Result<(ExperimentResults, Vec<ClaimVerdict>)> {
    check_k(k)?;
    let h = analyse_forbidden(forbidden, k)?;
    if let Some(phi) = fractions.iter().find(|p| p.is_negative() || *p > &BigRational::one()) {
        return Err(Error::InvalidParameter(format!("degree fraction {phi} outside [0, 1]")));
    }
    let jobs: Vec<(usize, usize)> = (0..fractions.len()).flat_map(|f| (0..trials).map(move |i| (f, i))).collect();
    let outcomes: Vec<(ScanTrial, ClaimVerdict)> = jobs
        .par_iter()
        .map(|&(f, i)| {
            let phi = &fractions[f];
            let s = trial_seed(seed, (f * trials + i) as u64);
            let p = (1.0 + to_f64(phi)) / 2.0;
            let g = min_degree_graph(n, degree_floor(phi, n), p, s);
            let scope = format!("fraction={phi} trial={i}");
            let mut verdict = claim("all-optima-colorable", Some(scope), Verdict::Unknown);
            let mut trial = ScanTrial {
                fraction: phi.to_string(),
                trial: i,
                seed: s,
                host: graph6::encode(&g),
                min_degree: g.min_degree(),
                optimum: None,
                optima: None,
                outcome: Verdict::Unknown,
            };
            match within_budget(all_optima(&g, t, &h.graph, config))? {
                None => verdict.note = Some("solver budget exhausted".into()),
                Some(o) => {
                    trial.optimum = Some(o.best_count);
                    trial.optima = Some(o.edge_sets.len());
                    let mut undecided = false;
                    for edges in &o.edge_sets {
                        match colorable(&g, edges, k - 1)? {
                            Some(true) => {}
                            Some(false) => {
                                verdict.counterexample =
                                    Some(counterexample(&g, &h.graph, t, edges, o.best_count, k - 1, true)?);
                                break;
                            }
                            None => undecided = true,
                        }
                    }
                    if verdict.counterexample.is_some() {
                        verdict.verdict = Verdict::Fails;
                    } else if undecided {
                        verdict.note = Some("coloring budget exhausted".into());
                    } else if !o.complete {
                        verdict.note = Some("more optima than the tie limit".into());
                    } else {
                        verdict.verdict = Verdict::Holds;
                    }
                }
            }
            trial.outcome = verdict.verdict;
            Ok((trial, verdict))
        })
        .collect::<Result<_>>()?;

    let rows = fractions
        .iter()
        .map(|phi| {
            let label = phi.to_string();
            let of = || outcomes.iter().filter(|(t, _)| t.fraction == label);
            let count = |v: Verdict| of().filter(|(t, _)| t.outcome == v).count();
            let (passed, failed, unknown) = (count(Verdict::Holds), count(Verdict::Fails), count(Verdict::Unknown));
            ScanRow {
                fraction: label.clone(),
                degree_floor: degree_floor(phi, n),
                trials,
                passed,
                failed,
                unknown,
                pass_rate: ratio_string(passed as Count, &int(passed + failed)),
            }
        })
        .collect();
    let (trials, verdicts) = outcomes.into_iter().unzip();
    Ok((ExperimentResults::ThresholdScan(ScanResults { rows, trials }), verdicts))
}

#[allow(clippy::too_many_arguments)]
fn dichotomy(
    g: &Graph,
    k: usize,
    m: usize,
    t: usize,
    gamma: &BigRational,
    limit: usize,
    config: &SolverConfig,
) -> Result<(ExperimentResults, Vec<ClaimVerdict>)> {
    check_k(k)?;
    if k != m + 1 && t != 1 {
        return Err(Error::InvalidParameter(format!("needs k = m + 1 or t = 1, got k={k} m={m} t={t}")));
    }
    let h = Graph::complete(k);
    let pattern = target(m, t);
    pattern.validate()?;
    let distance_exact = g.n() <= config.partite_exact_max_vertices;
    let mut res = DichotomyResults {
        pattern: pattern.clone(),
        optimum: None,
        distance_exact,
        edgeless: None,
        subgraphs: Vec::new(),
        enumeration_complete: None,
        frontier: Vec::new(),
    };
    let mut verdict = claim("high-ratio-subgraphs-colorable", None, Verdict::Unknown);
    let Some(best) = within_budget(max_hfree_subgraph(g, &pattern, &h, Mode::Exact, config))? else {
        verdict.note = Some("solver budget exhausted".into());
        return Ok((ExperimentResults::Dichotomy(res), vec![verdict]));
    };
    let optimum = int(best.best_count);
    res.optimum = Some(best.best_count);

    let row = |edges: Vec<Edge>| -> Result<DichotomyRow> {
        let sub = g.spanning_subgraph(&edges)?;
        let count = count_pattern(&sub, &pattern)?;
        let (distance, _, _) = partite_distance(&sub, k - 1, config)?;
        let ratio = (!optimum.is_zero()).then(|| int(count) / &optimum);
        Ok(DichotomyRow {
            low_ratio: ratio.as_ref().is_none_or(|r| r <= gamma),
            ratio: ratio.map(|r| r.to_string()),
            edges,
            count,
            distance,
        })
    };
    res.edgeless = within_budget(row(Vec::new()))?;
    let Some((sets, complete)) = within_budget(maximal_hfree_subgraphs(g, &h, limit, config))? else {
        verdict.note = Some("enumeration budget exhausted".into());
        return Ok((ExperimentResults::Dichotomy(res), vec![verdict]));
    };
    res.enumeration_complete = Some(complete);
    let rows: Vec<Option<DichotomyRow>> = sets.into_par_iter().map(|e| within_budget(row(e))).collect::<Result<_>>()?;
    let undecided_rows = rows.iter().filter(|r| r.is_none()).count();
    res.subgraphs = rows.into_iter().flatten().collect();

    let mut frontier: BTreeMap<usize, (Option<BigRational>, usize)> = BTreeMap::new();
    for r in &res.subgraphs {
        let ratio = (!optimum.is_zero()).then(|| int(r.count) / &optimum);
        let entry = frontier.entry(r.distance).or_insert((None, 0));
        entry.1 += 1;
        if ratio > entry.0 {
            entry.0 = ratio;
        }
    }
    res.frontier = frontier
        .into_iter()
        .map(|(distance, (max_ratio, subgraphs))| FrontierPoint {
            distance,
            max_ratio: max_ratio.map(|r| r.to_string()),
            subgraphs,
        })
        .collect();

    let mut undecided = undecided_rows > 0;
    for r in res.subgraphs.iter().filter(|r| !r.low_ratio && r.distance > 0) {
        match colorable(g, &r.edges, k - 1)? {
            Some(true) => {}
            Some(false) => {
                verdict.counterexample = Some(counterexample(g, &h, &pattern, &r.edges, r.count, k - 1, false)?);
                break;
            }
            None => undecided = true,
        }
    }
    if verdict.counterexample.is_some() {
        verdict.verdict = Verdict::Fails;
    } else if undecided {
        verdict.note = Some("budget exhausted on some subgraphs".into());
    } else {
        verdict.verdict = Verdict::Holds;
        if !complete {
            verdict.note = Some("checked on the enumerated subgraphs only".into());
        }
    }
    Ok((ExperimentResults::Dichotomy(res), vec![verdict]))
}

/// Solves for an optimal `h`-free subgraph and tests whether it is
/// `(k-1)`-colorable. With `all_optima`, every optimum is tested as well.
#[allow(clippy::too_many_arguments)]
pub fn verify_extremal_colorable(
    g: &Graph,
    source: Option<String>,
    h: &Graph,
    t: &Pattern,
    k: usize,
    eps: &BigRational,
    all_optima: bool,
    config: &SolverConfig,
) -> Result<ExperimentRecord> {
    let spec = ExperimentSpec::ExtremalColorable {
        host: Host::new(g, source),
        forbidden: graph6::encode(h),
        pattern: t.clone(),
        k,
        eps: eps.clone(),
        all_optima,
    };
    execute(&spec, config)
}

/// Edge deletions separating an optimal `h`-free subgraph from `(k-1)`-colorability.
pub fn verify_near_colorable(g: &Graph, source: Option<String>, h: &Graph, t: &Pattern, k: usize, config: &SolverConfig) -> Result<ExperimentRecord> {
    let spec = ExperimentSpec::NearColorable {
        host: Host::new(g, source),
        forbidden: graph6::encode(h),
        pattern: t.clone(),
        k,
    };
    execute(&spec, config)
}

/// Exact extremal numbers on `K_n` against the leading-term prediction for
/// `T = K_m(t)` (a clique when `t = 1`).
pub fn compare_prediction(ns: &[usize], k: usize, m: usize, t: usize, h: &Graph, config: &SolverConfig) -> Result<ExperimentRecord> {
    let spec = ExperimentSpec::ComparePrediction {
        ns: ns.to_vec(),
        k,
        m,
        t,
        forbidden: graph6::encode(h),
    };
    execute(&spec, config)
}

/// Fraction of random graphs with minimum degree at least `ceil(phi n)` all of
/// whose optima are `(k-1)`-colorable, for each `phi` in `fractions`.
#[allow(clippy::too_many_arguments)]
pub fn threshold_scan(
    h: &Graph,
    t: &Pattern,
    k: usize,
    n: usize,
    fractions: &[BigRational],
    trials: usize,
    seed: u64,
    config: &SolverConfig,
) -> Result<ExperimentRecord> {
    let spec = ExperimentSpec::ThresholdScan {
        forbidden: graph6::encode(h),
        pattern: t.clone(),
        k,
        n,
        fractions: fractions.to_vec(),
        trials,
        seed,
    };
    execute(&spec, config)
}

/// Count ratio against distance to `(k-1)`-partite over the maximal
/// `K_k`-free subgraphs of `g`.
#[allow(clippy::too_many_arguments)]
pub fn verify_dichotomy(
    g: &Graph,
    source: Option<String>,
    k: usize,
    m: usize,
    t: usize,
    gamma: &BigRational,
    limit: usize,
    config: &SolverConfig,
) -> Result<ExperimentRecord> {
    let spec = ExperimentSpec::Dichotomy {
        host: Host::new(g, source),
        k,
        m,
        t,
        gamma: gamma.clone(),
        limit,
    };
    execute(&spec, config)
}

#[cfg(test)]
mod tests {
    use super::super::{recheck_counterexample, ExperimentResults};
    use super::*;
    use crate::generate::{generate, GenSpec};
    use crate::rational::ratio;

    fn k3() -> Graph {
        Graph::complete(3)
    }

    fn colorable_results(rec: &ExperimentRecord) -> &ColorableResults {
        match &rec.results {
            ExperimentResults::ExtremalColorable(r) => r,
            _ => panic!("wrong result kind"),
        }
    }

    #[test]
    fn k6_triangle_free_optimum_is_bipartite() {
        let rec = verify_extremal_colorable(&Graph::complete(6), None, &k3(), &Pattern::edge(), 3, &ratio(1, 5), true, &SolverConfig::default())
            .unwrap();
        let r = colorable_results(&rec);
        assert_eq!(r.optimum, Some(9));
        assert!(r.hypothesis_met);
        assert!(r.forbidden_edge_critical);
        assert_eq!(r.optima_found, Some(10));
        assert_eq!(r.optima_colorable, Some(10));
        assert_eq!(r.rebuild_count, Some(9));
        assert!(rec.verdicts.iter().all(|v| v.verdict == Verdict::Holds));
    }

    #[test]
    fn five_cycle_fails_outside_the_hypothesis() {
        let c5 = generate(&GenSpec::Cycle { n: 5 }).unwrap();
        let rec = verify_extremal_colorable(&c5, None, &k3(), &Pattern::edge(), 3, &ratio(1, 10), true, &SolverConfig::default()).unwrap();
        let r = colorable_results(&rec);
        assert_eq!(r.optimum, Some(5));
        assert!(!r.hypothesis_met);
        assert_eq!(r.witness_colorable, Some(false));
        let v = &rec.verdicts[0];
        assert_eq!(v.verdict, Verdict::Fails);
        let ce = v.counterexample.as_ref().unwrap();
        assert!(recheck_counterexample(ce, &SolverConfig::default()).unwrap().is_empty());
    }

    #[test]
    fn budget_exhaustion_is_unknown() {
        let config = SolverConfig {
            node_limit: 10,
            heuristic_incumbent: false,
            ..SolverConfig::default()
        };
        let rec = verify_extremal_colorable(&Graph::complete(8), None, &k3(), &Pattern::edge(), 3, &ratio(1, 10), false, &config).unwrap();
        assert_eq!(colorable_results(&rec).optimum, None);
        assert_eq!(rec.verdicts[0].verdict, Verdict::Unknown);
    }

    #[test]
    fn wrong_k_is_rejected() {
        let err = verify_extremal_colorable(&Graph::complete(5), None, &k3(), &Pattern::edge(), 4, &ratio(1, 10), false, &SolverConfig::default())
            .unwrap_err();
        assert!(matches!(err, Error::InvalidParameter(_)));
    }

    #[test]
    fn near_colorable_on_bipartite_optimum() {
        let rec = verify_near_colorable(&Graph::complete(6), None, &k3(), &Pattern::edge(), 3, &SolverConfig::default()).unwrap();
        let ExperimentResults::NearColorable(r) = &rec.results else { panic!() };
        assert_eq!(r.deletion_count, Some(0));
        assert_eq!(r.deletion_ratio.as_deref(), Some("0"));
        assert_eq!(rec.verdicts[0].verdict, Verdict::Holds);
    }

    #[test]
    fn near_colorable_without_edge_criticality() {
        // Two disjoint copies of K_4: chromatic number 4, and deleting any one
        // edge leaves the other copy.
        let k4 = Graph::complete(4);
        let h = k4.disjoint_union(&k4);
        let rec = verify_near_colorable(&Graph::complete(6), None, &h, &Pattern::edge(), 4, &SolverConfig::default()).unwrap();
        let ExperimentResults::NearColorable(r) = &rec.results else { panic!() };
        assert!(!r.forbidden_edge_critical);
        assert_eq!(r.optimum, Some(15));
        assert_eq!(r.deletion_count, Some(3));
        assert_eq!(r.deletion_ratio.as_deref(), Some("1/12"));
        assert_eq!(rec.verdicts[0].verdict, Verdict::Fails);
        let ce = rec.verdicts[0].counterexample.as_ref().unwrap();
        assert!(recheck_counterexample(ce, &SolverConfig::default()).unwrap().is_empty());
    }

    #[test]
    fn compare_prediction_rows() {
        let rec = compare_prediction(&[4, 5, 6, 7, 8], 3, 2, 1, &k3(), &SolverConfig::default()).unwrap();
        let ExperimentResults::ComparePrediction(r) = &rec.results else { panic!() };
        let exact: Vec<_> = r.rows.iter().map(|r| r.exact.unwrap()).collect();
        assert_eq!(exact, vec![4, 6, 9, 12, 16]);
        let ratios: Vec<_> = r.rows.iter().map(|r| r.ratio.clone().unwrap()).collect();
        assert_eq!(ratios, vec!["1", "24/25", "1", "48/49", "1"]);
        let rec = compare_prediction(&[6], 4, 3, 1, &Graph::complete(4), &SolverConfig::default()).unwrap();
        let ExperimentResults::ComparePrediction(r) = &rec.results else { panic!() };
        assert_eq!((r.rows[0].exact, r.rows[0].ratio.as_deref()), (Some(8), Some("1")));
    }

    #[test]
    fn scan_full_degree_passes() {
        let rec = threshold_scan(&k3(), &Pattern::edge(), 3, 6, &[BigRational::one()], 3, 1, &SolverConfig::default()).unwrap();
        let ExperimentResults::ThresholdScan(r) = &rec.results else { panic!() };
        assert_eq!(r.rows[0].passed, 3);
        assert_eq!(r.rows[0].pass_rate.as_deref(), Some("1"));
        assert!(r.trials.iter().all(|t| t.host == graph6::encode(&Graph::complete(6))));
    }

    #[test]
    fn scan_is_seeded() {
        let fractions = [BigRational::zero(), ratio(1, 2)];
        let a = threshold_scan(&k3(), &Pattern::edge(), 3, 7, &fractions, 6, 9, &SolverConfig::default()).unwrap();
        let b = threshold_scan(&k3(), &Pattern::edge(), 3, 7, &fractions, 6, 9, &SolverConfig::default()).unwrap();
        assert_eq!(a.results_line(), b.results_line());
        for v in a.verdicts.iter().filter(|v| v.verdict == Verdict::Fails) {
            assert!(recheck_counterexample(v.counterexample.as_ref().unwrap(), &SolverConfig::default()).unwrap().is_empty());
        }
    }

    #[test]
    fn dichotomy_on_k6() {
        let rec = verify_dichotomy(&Graph::complete(6), None, 3, 2, 1, &ratio(9, 10), 10_000, &SolverConfig::default()).unwrap();
        let ExperimentResults::Dichotomy(r) = &rec.results else { panic!() };
        assert_eq!(r.optimum, Some(9));
        assert_eq!(r.enumeration_complete, Some(true));
        let edgeless = r.edgeless.as_ref().unwrap();
        assert_eq!(edgeless.ratio.as_deref(), Some("0"));
        assert!(edgeless.low_ratio);
        let top = r.subgraphs.iter().filter(|s| s.count == 9).collect::<Vec<_>>();
        assert_eq!(top.len(), 10);
        assert!(top.iter().all(|s| s.distance == 0 && !s.low_ratio));
        assert_eq!(r.frontier[0].distance, 0);
        assert_eq!(r.frontier[0].max_ratio.as_deref(), Some("1"));
        assert_eq!(rec.verdicts[0].verdict, Verdict::Holds);
    }

    #[test]
    fn dichotomy_requires_assumption() {
        let err = verify_dichotomy(&Graph::complete(6), None, 4, 2, 2, &ratio(1, 2), 10, &SolverConfig::default()).unwrap_err();
        assert!(matches!(err, Error::InvalidParameter(_)));
    }
}
