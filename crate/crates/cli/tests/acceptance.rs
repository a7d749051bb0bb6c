//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use extremal_core::counting::{copies_through_vertex, count_cliques, count_pattern, count_pattern_generic};
use extremal_core::formulas::{aes_threshold, es_threshold, f_maximizer, removal_bound_blowup, removal_bound_clique};
use extremal_core::generate::{generate, GenSpec};
use extremal_core::harness::{self, recheck_counterexample, ExperimentResults, Verdict, VerdictTally};
use extremal_core::rational::{binomial, int, ratio};
use extremal_core::solver::{self, Mode, SolverConfig};
use extremal_core::{graph6, Graph, Pattern};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    let spent = start.elapsed();
    ensure(spent < limit, || format!("took {spent:?}, limit {limit:?}"))
}

fn extremal() -> Command {
    Command::new(env!("CARGO_BIN_EXE_extremal"))
}

fn run_cli(args: &[&str]) -> Result<(i32, String), String> {
    let out = extremal().args(args).output().map_err(|e| e.to_string())?;
    Ok((out.status.code().unwrap_or(-1), String::from_utf8_lossy(&out.stdout).into_owned()))
}

fn field<'a>(stdout: &'a str, key: &str) -> Option<&'a str> {
    stdout.lines().find_map(|l| l.strip_prefix(key)).map(str::trim)
}

/// Two-coloring by breadth-first search.
fn bipartite(g: &Graph) -> bool {
    let n = g.n();
    let mut side = vec![usize::MAX; n];
    for s in 0..n {
        if side[s] != usize::MAX {
            continue;
        }
        side[s] = 0;
        let mut queue = vec![s];
        while let Some(u) = queue.pop() {
            for v in g.neighbors(u).collect::<Vec<_>>() {
                if side[v] == usize::MAX {
                    side[v] = 1 - side[u];
                    queue.push(v);
                } else if side[v] == side[u] {
                    return false;
                }
            }
        }
    }
    true
}

fn edges_of(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect()
}

fn masks_of(n: usize, edges: &[(usize, usize)], subset: u64) -> Vec<u64> {
    let mut masks = vec![0u64; n];
    for (j, &(u, v)) in edges.iter().enumerate() {
        if subset >> j & 1 == 1 {
            masks[u] |= 1 << v;
            masks[v] |= 1 << u;
        }
    }
    masks
}

fn triangles(masks: &[u64]) -> u64 {
    let n = masks.len();
    let mut c = 0;
    for a in 0..n {
        for b in a + 1..n {
            if masks[a] >> b & 1 == 0 {
                continue;
            }
            c += (masks[a] & masks[b] & !((2u64 << b) - 1)).count_ones() as u64;
        }
    }
    c
}

fn has_k4(masks: &[u64]) -> bool {
    let n = masks.len();
    (0..n).any(|a| {
        (a + 1..n).any(|b| {
            let common = masks[a] & masks[b] & !((2u64 << b) - 1);
            masks[a] >> b & 1 == 1 && (0..n).any(|c| common >> c & 1 == 1 && masks[c] & common != 0)
        })
    })
}

/// Largest edge count of a triangle-free subgraph of K_n, by trying every edge subset.
fn brute_triangle_free(n: usize) -> u64 {
    let edges = edges_of(n);
    (0u64..1 << edges.len())
        .filter(|&s| triangles(&masks_of(n, &edges, s)) == 0)
        .map(|s| s.count_ones() as u64)
        .max()
        .unwrap()
}

/// Most triangles in a K_4-free subgraph of K_n, by trying every edge subset.
fn brute_k4_free_triangles(n: usize) -> u64 {
    let edges = edges_of(n);
    (0u64..1 << edges.len())
        .map(|s| masks_of(n, &edges, s))
        .filter(|m| !has_k4(m))
        .map(|m| triangles(&m))
        .max()
        .unwrap()
}

fn turan_baseline() -> Outcome {
    let start = Instant::now();
    let mut values = Vec::new();
    for n in 4..=8usize {
        let k = format!("gen:complete:{n}");
        let (code, out) = run_cli(&["solve", "--graph", &k, "--pattern", "K2", "--forbid", "g6:Bw", "--mode", "exact"])?;
        ensure(code == 0, || format!("solve on K_{n} exited with {code}"))?;
        let value: u64 = field(&out, "optimum:").and_then(|v| v.parse().ok()).ok_or("no optimum line")?;
        let witness = graph6::decode(field(&out, "witness graph6:").ok_or("no witness line")?).map_err(|e| e.to_string())?;
        ensure(value == (n * n / 4) as u64, || format!("K_{n}: got {value}, expected {}", n * n / 4))?;
        ensure(witness.edge_count() as u64 == value, || format!("K_{n}: witness has {} edges", witness.edge_count()))?;
        ensure(bipartite(&witness), || format!("K_{n}: witness is not bipartite"))?;
        if n <= 5 {
            let oracle = brute_triangle_free(n);
            ensure(oracle == value, || format!("K_{n}: brute force gives {oracle}"))?;
        }
        values.push(value);
    }
    within(start, Duration::from_secs(30))?;
    Ok(format!("values {values:?}, witnesses bipartite, {:.1?}", start.elapsed()))
}

fn clique_extremal() -> Outcome {
    let start = Instant::now();
    let mut values = Vec::new();
    for n in 5..=7usize {
        let r = solver::max_hfree_subgraph(&Graph::complete(n), &Pattern::Clique(3), &Graph::complete(4), Mode::Exact, &SolverConfig::default())
            .map_err(|e| e.to_string())?;
        let turan = generate(&GenSpec::Turan { n, r: 3 }).unwrap();
        let expected = count_cliques(&turan, 3).unwrap();
        let oracle = brute_k4_free_triangles(n) as u128;
        ensure(r.best_count == expected, || format!("n={n}: solver {} vs Turan graph {expected}", r.best_count))?;
        ensure(r.best_count == oracle, || format!("n={n}: solver {} vs brute force {oracle}", r.best_count))?;
        values.push(r.best_count);
    }
    within(start, Duration::from_secs(120))?;
    Ok(format!("values {values:?}, {:.1?}", start.elapsed()))
}

fn blowup_closed_form() -> Outcome {
    let start = Instant::now();
    let mut checked = 0;
    for s in 1..=5usize {
        for m in 1..=3usize {
            for t in 1..=2usize {
                let g = generate(&GenSpec::Blowup { m, t: s }).unwrap();
                let got = count_pattern(&g, &Pattern::Blowup { m, t }).map_err(|e| e.to_string())?;
                let expected = binomial(s as u64, t as u64).pow(m as u32);
                ensure(num_bigint::BigInt::from(got) == expected, || format!("s={s} m={m} t={t}: {got} vs {expected}"))?;
                checked += 1;
            }
        }
    }
    within(start, Duration::from_secs(10))?;
    Ok(format!("{checked} cases, {:.1?}", start.elapsed()))
}

/// Injective homomorphisms by plain backtracking over vertex images.
fn naive_injective(t: &Graph, g: &Graph) -> u128 {
    fn go(t: &Graph, g: &Graph, image: &mut Vec<usize>, used: &mut Vec<bool>) -> u128 {
        let i = image.len();
        if i == t.n() {
            return 1;
        }
        let mut total = 0;
        for x in 0..g.n() {
            if used[x] || !(0..i).all(|j| !t.has_edge(i, j) || g.has_edge(image[j], x)) {
                continue;
            }
            used[x] = true;
            image.push(x);
            total += go(t, g, image, used);
            image.pop();
            used[x] = false;
        }
        total
    }
    go(t, g, &mut Vec::new(), &mut vec![false; g.n()])
}

/// Automorphisms by trying every permutation.
fn naive_automorphisms(t: &Graph) -> u128 {
    naive_injective(t, t)
}

fn oracle_equivalence() -> Outcome {
    let start = Instant::now();
    let patterns = [
        Pattern::Clique(2),
        Pattern::Clique(3),
        Pattern::Clique(4),
        Pattern::Clique(5),
        Pattern::Blowup { m: 2, t: 2 },
        Pattern::Blowup { m: 2, t: 3 },
        Pattern::Blowup { m: 3, t: 2 },
        Pattern::Blowup { m: 2, t: 4 },
        Pattern::Blowup { m: 4, t: 2 },
        Pattern::ConedBlowup { m: 2, t: 2 },
        Pattern::ConedBlowup { m: 3, t: 2 },
    ];
    let auts: Vec<u128> = patterns.iter().map(|p| naive_automorphisms(&p.graph())).collect();
    let mut comparisons = 0;
    for seed in 0..200u64 {
        let n = 4 + (seed % 7) as usize;
        let p = [0.3, 0.5, 0.7, 0.9][(seed / 7 % 4) as usize];
        let g = generate(&GenSpec::Gnp { n, p, seed }).unwrap();
        for (pat, &aut) in patterns.iter().zip(&auts) {
            if pat.vertex_count() > 8 {
                continue;
            }
            let fast = count_pattern(&g, pat).map_err(|e| e.to_string())?;
            let generic = count_pattern_generic(&g, pat).map_err(|e| e.to_string())?;
            let naive = naive_injective(&pat.graph(), &g) / aut;
            ensure(fast == generic && generic == naive, || {
                format!("seed {seed} {pat}: specialized {fast}, generic {generic}, naive {naive}")
            })?;
            comparisons += 1;
        }
    }
    within(start, Duration::from_secs(60))?;
    Ok(format!("{comparisons} comparisons on 200 graphs, {:.1?}", start.elapsed()))
}

fn sandwich() -> Outcome {
    let start = Instant::now();
    let config = SolverConfig::default();
    let cases = [
        (Pattern::Clique(2), Graph::complete(3), 3),
        (Pattern::Clique(3), Graph::complete(4), 4),
        (Pattern::Clique(2), Graph::complete(4), 4),
        (Pattern::Blowup { m: 2, t: 2 }, Graph::complete(3), 3),
    ];
    let mut strict = 0;
    for seed in 0..100u64 {
        let n = 5 + (seed % 4) as usize;
        let p = [0.6, 0.8, 1.0][(seed / 4 % 3) as usize];
        let g = generate(&GenSpec::Gnp { n, p, seed: 1000 + seed }).unwrap();
        let (t, h, k) = &cases[(seed % 4) as usize];
        let exact = solver::max_hfree_subgraph(&g, t, h, Mode::Exact, &config).map_err(|e| format!("seed {seed}: {e}"))?;
        let (heur, report) = solver::rebuild(&g, *k, t, h, &config).map_err(|e| format!("seed {seed}: {e}"))?;
        let unconstrained = count_pattern(&g, t).unwrap();
        ensure(report.h_free, || format!("seed {seed}: rebuild result contains the forbidden graph"))?;
        ensure(heur.best_count <= exact.best_count && exact.best_count <= unconstrained, || {
            format!("seed {seed}: {} <= {} <= {unconstrained} fails", heur.best_count, exact.best_count)
        })?;
        let sum: u128 = report.core_count + report.gains.iter().sum::<u128>();
        ensure(sum == heur.best_count, || format!("seed {seed}: core + gains = {sum}, count {}", heur.best_count))?;
        let recount = count_pattern(&g.spanning_subgraph(&heur.best_edges).unwrap(), t).unwrap();
        ensure(recount == heur.best_count, || format!("seed {seed}: rebuild witness recounts to {recount}"))?;
        if heur.best_count < exact.best_count {
            strict += 1;
        }
    }
    Ok(format!("100 instances, rebuild below optimum on {strict}, {:.1?}", start.elapsed()))
}

fn formula_spots() -> Outcome {
    let e = |x: Result<bool, extremal_core::Error>, what: &str| -> Result<(), String> {
        ensure(x.map_err(|e| e.to_string())?, || what.to_string())
    };
    e(aes_threshold(3).map(|v| v == ratio(2, 5)), "aes_threshold(3) != 2/5")?;
    e(es_threshold(3).map(|v| v == ratio(1, 3)), "es_threshold(3) != 1/3")?;
    e(removal_bound_clique(&int(10), 4, 3).map(|v| v.1 == ratio(31, 256)), "delta(4,3) != 31/256")?;
    e(removal_bound_clique(&int(10), 3, 2).map(|v| v.1 == ratio(1, 5)), "delta(3,2) != 1/5")?;
    e(f_maximizer(&int(10), 2, 2).map(|v| v == ratio(20, 3)), "f_maximizer(10,2,2) != 20/3")?;
    for m in 3..=5 {
        for t in 1..=3 {
            let r = removal_bound_blowup(&int(30), m, t).map_err(|e| e.to_string())?;
            ensure(r.ratio < int(1), || format!("ratio at m={m} t={t} is {}", r.ratio))?;
        }
    }
    Ok("all spot values exact".into())
}

fn desk_check() -> Outcome {
    let start = Instant::now();
    let config = SolverConfig::default();
    let mut tally = VerdictTally::default();
    let mut rechecked = 0;
    let mut hypothesis = 0;
    for seed in 0..25u64 {
        let spec = GenSpec::MinDegreeRandom { n: 9, eps: 1.0 / 9.0, seed };
        let g = generate(&spec).unwrap();
        ensure(g.min_degree() >= 8, || format!("seed {seed}: min degree {}", g.min_degree()))?;
        let rec = harness::verify_extremal_colorable(&g, Some(spec.to_string()), &Graph::complete(3), &Pattern::edge(), 3, &ratio(1, 9), true, &config)
            .map_err(|e| e.to_string())?;
        if let ExperimentResults::ExtremalColorable(r) = &rec.results {
            hypothesis += r.hypothesis_met as usize;
        }
        tally.merge(rec.tally());
        for v in &rec.verdicts {
            if v.verdict == Verdict::Fails {
                let ce = v.counterexample.as_ref().ok_or_else(|| format!("seed {seed}: fails without counterexample"))?;
                let problems = recheck_counterexample(ce, &config).map_err(|e| e.to_string())?;
                ensure(problems.is_empty(), || format!("seed {seed}: counterexample rejected: {problems:?}"))?;
                rechecked += 1;
            }
        }
    }
    ensure(tally.unknown == 0, || format!("{} unknown verdicts", tally.unknown))?;
    Ok(format!(
        "25 graphs, hypothesis met on {hypothesis}; verdicts {} holds, {} fails, 0 unknown; {rechecked} counterexamples rechecked; {:.1?}",
        tally.holds,
        tally.fails,
        start.elapsed()
    ))
}

fn averaging() -> Outcome {
    let patterns = [Pattern::Clique(2), Pattern::Clique(3), Pattern::Clique(4), Pattern::Blowup { m: 2, t: 2 }, Pattern::Blowup { m: 3, t: 2 }];
    for seed in 0..100u64 {
        let n = 5 + (seed % 8) as usize;
        let g = generate(&GenSpec::Gnp { n, p: 0.7, seed: 5000 + seed }).unwrap();
        let t = &patterns[(seed % 5) as usize];
        let total = count_pattern(&g, t).unwrap();
        let best = (0..n).map(|v| copies_through_vertex(&g, t, v).unwrap()).max().unwrap();
        ensure(best * n as u128 >= t.vertex_count() as u128 * total, || {
            format!("seed {seed} {t}: max {best} * {n} < {} * {total}", t.vertex_count())
        })?;
    }
    Ok("100 graphs".into())
}

fn graph6_round_trip() -> Outcome {
    for seed in 0..1000u64 {
        let n = (seed % 41) as usize;
        let p = [0.1, 0.5, 0.9][(seed % 3) as usize];
        let g = generate(&GenSpec::Gnp { n, p, seed }).unwrap();
        let s = graph6::encode(&g);
        let back = graph6::decode(&s).map_err(|e| format!("seed {seed}: {e}"))?;
        ensure(back == g, || format!("seed {seed}: decoded graph differs"))?;
        ensure(graph6::encode(&back) == s, || format!("seed {seed}: re-encoding differs"))?;
    }
    Ok("1000 graphs, n <= 40".into())
}

fn replay_determinism() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let records = dir.path().join("records.ndjson");
    let rec = records.to_str().unwrap();
    let runs: [&[&str]; 4] = [
        &["verify", "colorable", "--graph", "gen:mindeg:9:0.1111:3", "--forbid", "g6:Bw", "--k", "3", "--eps", "1/9", "--all-optima"],
        &["verify", "near", "--graph", "gen:gnp:8:0.7:2", "--forbid", "g6:Bw", "--k", "3"],
        &["scan", "--forbid", "g6:Bw", "--k", "3", "--n", "7", "--fractions", "0,1/2,1", "--trials", "6", "--scan-seed", "4"],
        &["verify", "dichotomy", "--graph", "gen:complete:6", "--k", "3", "--m", "2", "--gamma", "9/10"],
    ];
    for args in runs {
        let mut full = vec!["--threads", "1"];
        full.extend_from_slice(args);
        full.extend_from_slice(&["--out", rec]);
        let (code, _) = run_cli(&full)?;
        ensure(code == 0, || format!("{args:?} exited with {code}"))?;
    }
    let emit = |threads: &str, name: &str| -> Result<String, String> {
        let path = dir.path().join(name);
        let (code, out) = run_cli(&["--threads", threads, "replay", rec, "--emit", path.to_str().unwrap()])?;
        ensure(code == 0, || format!("replay with {threads} threads exited with {code}: {out}"))?;
        std::fs::read_to_string(&path).map_err(|e| e.to_string())
    };
    let one = emit("1", "one.ndjson")?;
    let eight = emit("8", "eight.ndjson")?;
    let original: String = harness::read_records(Path::new(rec))
        .map_err(|e| e.to_string())?
        .iter()
        .map(|r| r.results_line() + "\n")
        .collect();
    ensure(one == eight, || "replays with 1 and 8 threads differ".into())?;
    ensure(one == original, || "replay differs from the persisted record".into())?;
    Ok(format!("{} records, {} bytes identical across 1 and 8 threads", one.lines().count(), one.len()))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("Turan baseline", turan_baseline),
        ("clique-count extremal", clique_extremal),
        ("blow-up count closed form", blowup_closed_form),
        ("oracle equivalence", oracle_equivalence),
        ("sandwich and monotonicity", sandwich),
        ("formula spot values", formula_spots),
        ("minimum-degree desk check", desk_check),
        ("averaging invariant", averaging),
        ("graph6 round trip", graph6_round_trip),
        ("replay determinism", replay_determinism),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let label = format!("criterion {}", i + 1);
        if !filter.is_empty() && !filter.iter().any(|f| label.contains(f.as_str()) || name.contains(f.as_str())) {
            continue;
        }
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_else(|| "panic".into()))
        });
        match outcome {
            Ok(detail) => println!("{label} ({name}): PASS - {detail}"),
            Err(why) => {
                failed += 1;
                println!("{label} ({name}): FAIL - {why}");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
