use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Subcommand, ValueEnum};
use extremal_core::coloring::Colorer;
use extremal_core::counting::{contains, count_pattern};
use extremal_core::formulas::{evaluate, Params};
use extremal_core::harness::{self, ExperimentRecord, ExperimentResults, RecordWriter, Verdict};
use extremal_core::rational::{display_with_decimal, parse_rational};
use extremal_core::solver::{self, Edge, Mode, PartiteMode};
use extremal_core::{graph6, Graph, Pattern};
use serde::Serialize;

use crate::input::{rational, Budget, GraphArg};
use crate::Command;

/// Version of the JSON written by `--out` for the non-experiment commands.
const OUTPUT_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ModeArg {
    Exact,
    Heuristic,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum PartiteArg {
    Exact,
    LocalSearch,
}

#[derive(Debug, Subcommand)]
pub enum Experiment {
    /// Is an optimal H-free subgraph (k-1)-colorable?
    Colorable {
        #[arg(long)]
        graph: GraphArg,
        #[arg(long)]
        forbid: GraphArg,
        #[arg(long, default_value = "K2")]
        pattern: Pattern,
        #[arg(long)]
        k: usize,
        /// Minimum-degree hypothesis: min degree >= (1 - eps) n.
        #[arg(long, default_value = "1/10")]
        eps: String,
        /// Also test every optimum.
        #[arg(long)]
        all_optima: bool,
        #[command(flatten)]
        budget: Budget,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Edge deletions from an optimum to (k-1)-colorability.
    Near {
        #[arg(long)]
        graph: GraphArg,
        #[arg(long)]
        forbid: GraphArg,
        #[arg(long, default_value = "K2")]
        pattern: Pattern,
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        budget: Budget,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exact extremal numbers on K_n against the leading-term prediction.
    Compare {
        /// Comma-separated host orders.
        #[arg(long, value_delimiter = ',', required = true)]
        ns: Vec<usize>,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 1)]
        t: usize,
        /// Forbidden graph (default K_k).
        #[arg(long)]
        forbid: Option<GraphArg>,
        #[command(flatten)]
        budget: Budget,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Count ratio against distance to (k-1)-partite over maximal K_k-free subgraphs.
    Dichotomy {
        #[arg(long)]
        graph: GraphArg,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 1)]
        t: usize,
        #[arg(long)]
        gamma: String,
        /// Most maximal subgraphs enumerated.
        #[arg(long, default_value_t = 10_000)]
        limit: usize,
        #[command(flatten)]
        budget: Budget,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    version: u32,
    command: &'a str,
    result: T,
}

fn write_json<T: Serialize>(path: &Path, command: &str, result: T) -> Result<()> {
    let env = Envelope {
        version: OUTPUT_VERSION,
        command,
        result,
    };
    let mut text = serde_json::to_string(&env)?;
    text.push('\n');
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn edge_line(edges: &[Edge]) -> String {
    edges.iter().map(|(u, v)| format!("{u}-{v}")).collect::<Vec<_>>().join(" ")
}

fn parts_line(parts: &[Vec<usize>]) -> String {
    parts
        .iter()
        .map(|p| format!("{{{}}}", p.iter().map(usize::to_string).collect::<Vec<_>>().join(",")))
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn run(command: Command) -> Result<u8> {
    match command {
        Command::Generate { graph, edges } => {
            if edges {
                println!("{} {}", graph.graph.n(), graph.graph.edge_count());
                for (u, v) in graph.graph.edges() {
                    println!("{u} {v}");
                }
            } else {
                println!("{}", graph6::encode(&graph.graph));
            }
        }
        Command::Count { graph, pattern } => println!("{}", count_pattern(&graph.graph, &pattern)?),
        Command::Contains { graph, forbid } => {
            println!("{}", if contains(&graph.graph, &forbid.graph)? { "yes" } else { "no" })
        }
        Command::Color { graph, k, color_budget } => {
            let colorer = Colorer::new(color_budget);
            match k {
                Some(k) => match colorer.is_k_colorable(&graph.graph, k)? {
                    Some(colors) => {
                        println!("{k}-colorable: yes");
                        println!("coloring: {}", join(&colors));
                    }
                    None => println!("{k}-colorable: no"),
                },
                None => {
                    let r = colorer.chromatic_number(&graph.graph)?;
                    println!("chromatic number: {}", r.chromatic_number);
                    println!("coloring: {}", join(&r.witness));
                }
            }
        }
        Command::Solve {
            graph,
            pattern,
            forbid,
            mode,
            all_optima,
            budget,
            out,
        } => {
            let config = budget.config();
            let mode = match mode {
                ModeArg::Exact => Mode::Exact,
                ModeArg::Heuristic => Mode::Heuristic,
            };
            if all_optima {
                if mode == Mode::Heuristic {
                    bail!("--all-optima needs --mode exact");
                }
                let o = solver::all_optima(&graph.graph, &pattern, &forbid.graph, &config)?;
                println!("optimum: {}", o.best_count);
                println!("proof: {}", name(&o.proof));
                println!("optima: {}{}", o.edge_sets.len(), if o.complete { "" } else { " (cut at the tie limit)" });
                for set in &o.edge_sets {
                    println!("{}", edge_line(set));
                }
                if let Some(path) = out {
                    write_json(&path, "solve", &o)?;
                }
            } else {
                let r = solver::max_hfree_subgraph(&graph.graph, &pattern, &forbid.graph, mode, &config)?;
                println!("optimum: {}", r.best_count);
                println!("proof: {}", name(&r.proof));
                println!("edges: {}", r.best_edges.len());
                println!("witness: {}", edge_line(&r.best_edges));
                println!("witness graph6: {}", graph6::encode(&graph.graph.spanning_subgraph(&r.best_edges)?));
                if let Some(path) = out {
                    write_json(&path, "solve", &r)?;
                }
            }
        }
        Command::Partite {
            graph,
            k,
            pattern,
            mode,
            budget,
            out,
        } => {
            let mode = match mode {
                PartiteArg::Exact => PartiteMode::Exact,
                PartiteArg::LocalSearch => PartiteMode::LocalSearch,
            };
            let (p, count) = solver::max_partite(&graph.graph, k, &pattern, mode, &budget.config())?;
            println!("count: {count}");
            println!("parts: {}", parts_line(&p.parts()));
            if let Some(path) = out {
                write_json(&path, "partite", (&p, count))?;
            }
        }
        Command::Peel {
            graph,
            k,
            pattern,
            floor,
            out,
        } => {
            let (core, trace) = solver::peel(&graph.graph, k, &pattern, floor)?;
            println!("vertex degree order copies_removed");
            for s in &trace.steps {
                println!("{} {} {} {}", s.vertex, s.degree, s.order, s.copies_removed);
            }
            println!("stop: {}", name(&trace.stop_reason));
            println!("remaining: {}", join(&trace.remaining));
            println!("core graph6: {}", graph6::encode(&core));
            if trace.exceeded_half {
                println!("note: more than half of the vertices were removed");
            }
            if let Some(path) = out {
                write_json(&path, "peel", &trace)?;
            }
        }
        Command::Rebuild {
            graph,
            k,
            pattern,
            forbid,
            budget,
            out,
        } => {
            let (r, report) = solver::rebuild(&graph.graph, k, &pattern, &forbid.graph, &budget.config())?;
            println!("count: {}", r.best_count);
            println!("h-free: {}", if report.h_free { "yes" } else { "no" });
            println!("peeled: {}", report.trace.steps.len());
            println!("core count: {} ({})", report.core_count, if report.core_exact { "exact" } else { "local search" });
            println!("gains: {}", join(&report.gains));
            println!("parts: {}", parts_line(&report.partition.parts()));
            println!("witness: {}", edge_line(&r.best_edges));
            if let Some(path) = out {
                write_json(&path, "rebuild", (&r, &report))?;
            }
        }
        Command::Formula { id, n, k, m, t, eps, c, d } => {
            let opt = |s: Option<String>| s.map(|s| parse_rational(&s)).transpose();
            let params = Params {
                n: opt(n)?,
                k,
                m,
                t,
                eps: opt(eps)?,
                c: opt(c)?,
                d: opt(d)?,
            };
            let p = evaluate(id, &params)?;
            println!("{}", display_with_decimal(&p.value));
            if let Some(note) = &p.note {
                println!("note: {note}");
            }
        }
        Command::Verify { experiment } => return verify(experiment),
        Command::Scan {
            forbid,
            pattern,
            k,
            n,
            fractions,
            trials,
            scan_seed,
            budget,
            out,
        } => {
            let fractions = fractions.iter().map(|s| rational(s)).collect::<Result<Vec<_>>>()?;
            let rec = harness::threshold_scan(&forbid.graph, &pattern, k, n, &fractions, trials, scan_seed, &budget.config())?;
            return finish(rec, out);
        }
        Command::Replay { records, emit } => return replay(&records, emit.as_deref()),
    }
    Ok(0)
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(T::to_string).collect::<Vec<_>>().join(" ")
}

/// The serde name of a unit enum value.
fn name<T: Serialize>(x: &T) -> String {
    serde_json::to_value(x)
        .ok()
        .and_then(|v| v.as_str().map(str::to_string))
        .unwrap_or_default()
}

fn verify(experiment: Experiment) -> Result<u8> {
    let (rec, out) = match experiment {
        Experiment::Colorable {
            graph,
            forbid,
            pattern,
            k,
            eps,
            all_optima,
            budget,
            out,
        } => (
            harness::verify_extremal_colorable(&graph.graph, graph.source, &forbid.graph, &pattern, k, &rational(&eps)?, all_optima, &budget.config())?,
            out,
        ),
        Experiment::Near {
            graph,
            forbid,
            pattern,
            k,
            budget,
            out,
        } => (
            harness::verify_near_colorable(&graph.graph, graph.source, &forbid.graph, &pattern, k, &budget.config())?,
            out,
        ),
        Experiment::Compare {
            ns,
            k,
            m,
            t,
            forbid,
            budget,
            out,
        } => {
            let h = forbid.map_or_else(|| Graph::complete(k), |f| f.graph);
            (harness::compare_prediction(&ns, k, m, t, &h, &budget.config())?, out)
        }
        Experiment::Dichotomy {
            graph,
            k,
            m,
            t,
            gamma,
            limit,
            budget,
            out,
        } => (
            harness::verify_dichotomy(&graph.graph, graph.source, k, m, t, &rational(&gamma)?, limit, &budget.config())?,
            out,
        ),
    };
    finish(rec, out)
}

/// Prints the summary, appends the record and picks the exit status.
fn finish(rec: ExperimentRecord, out: Option<PathBuf>) -> Result<u8> {
    print!("{}", summary(&rec));
    if let Some(path) = out {
        RecordWriter::open(&path)?.append(&rec)?;
    }
    Ok(if rec.tally().unknown > 0 { 2 } else { 0 })
}

fn opt<T: ToString>(x: &Option<T>) -> String {
    x.as_ref().map_or_else(|| "unknown".into(), T::to_string)
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn summary(rec: &ExperimentRecord) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "experiment: {}", rec.experiment_id);
    match &rec.results {
        ExperimentResults::ExtremalColorable(r) => {
            let _ = writeln!(s, "n: {}", r.n);
            let _ = writeln!(s, "min degree: {} (hypothesis needs {}): {}", r.min_degree, r.degree_floor, if r.hypothesis_met { "met" } else { "not met" });
            let _ = writeln!(s, "forbidden: chromatic number {}, edge-critical {}", r.forbidden_chromatic_number, yes_no(r.forbidden_edge_critical));
            let _ = writeln!(s, "optimum: {}", opt(&r.optimum));
            if let Some(e) = &r.witness_edges {
                let _ = writeln!(s, "witness: {}", edge_line(e));
            }
            if let (Some(found), Some(good)) = (r.optima_found, r.optima_colorable) {
                let _ = writeln!(s, "optima: {found} listed, {good} colorable{}", if r.optima_complete == Some(false) { ", list cut" } else { "" });
            }
            let _ = writeln!(s, "rebuild: {}", opt(&r.rebuild_count));
        }
        ExperimentResults::NearColorable(r) => {
            let _ = writeln!(s, "n: {}", r.n);
            let _ = writeln!(s, "forbidden: chromatic number {}, edge-critical {}", r.forbidden_chromatic_number, yes_no(r.forbidden_edge_critical));
            let _ = writeln!(s, "optimum: {}", opt(&r.optimum));
            let _ = writeln!(s, "witness edges: {}", opt(&r.witness_edge_count));
            let _ = writeln!(
                s,
                "deletions: {}{}",
                opt(&r.deletion_count),
                if r.deletion_exact == Some(false) { " (upper bound)" } else { "" }
            );
            let _ = writeln!(s, "deletions / n^2: {}", opt(&r.deletion_ratio));
        }
        ExperimentResults::ComparePrediction(r) => {
            let _ = writeln!(s, "pattern: {}", r.pattern);
            let _ = writeln!(s, "n exact prediction ratio");
            for row in &r.rows {
                let _ = writeln!(s, "{} {} {} {}", row.n, opt(&row.exact), row.prediction, opt(&row.ratio));
            }
        }
        ExperimentResults::ThresholdScan(r) => {
            let _ = writeln!(s, "fraction floor passed failed unknown pass_rate");
            for row in &r.rows {
                let _ = writeln!(
                    s,
                    "{} {} {} {} {} {}",
                    row.fraction,
                    row.degree_floor,
                    row.passed,
                    row.failed,
                    row.unknown,
                    row.pass_rate.as_deref().unwrap_or("-")
                );
            }
        }
        ExperimentResults::Dichotomy(r) => {
            let _ = writeln!(s, "pattern: {}", r.pattern);
            let _ = writeln!(s, "optimum: {}", opt(&r.optimum));
            if let Some(c) = r.enumeration_complete {
                let _ = writeln!(s, "maximal subgraphs: {}{}", r.subgraphs.len(), if c { "" } else { " (cut at the limit)" });
            }
            let _ = writeln!(s, "distance max_ratio subgraphs{}", if r.distance_exact { "" } else { " (distances are upper bounds)" });
            for p in &r.frontier {
                let _ = writeln!(s, "{} {} {}", p.distance, p.max_ratio.as_deref().unwrap_or("-"), p.subgraphs);
            }
        }
    }
    let t = rec.tally();
    for v in &rec.verdicts {
        if rec.verdicts.len() <= 4 || v.verdict != Verdict::Holds {
            let scope = v.scope.as_ref().map(|x| format!(" [{x}]")).unwrap_or_default();
            let note = v.note.as_ref().map(|x| format!(" ({x})")).unwrap_or_default();
            let _ = writeln!(s, "{}{}: {}{}", v.claim, scope, name(&v.verdict), note);
        }
    }
    let _ = writeln!(s, "verdicts: {} holds, {} fails, {} unknown", t.holds, t.fails, t.unknown);
    s
}

fn replay(path: &Path, emit: Option<&Path>) -> Result<u8> {
    let records = harness::read_records(path)?;
    let mut emitted = String::new();
    let mut status = 0;
    for rec in &records {
        let (fresh, differences) = harness::replay(rec)?;
        if differences.is_empty() {
            println!("{}: identical", rec.experiment_id);
        } else {
            println!("{}: differs at {}", rec.experiment_id, differences.join(" "));
            status = 3;
        }
        emitted.push_str(&fresh.results_line());
        emitted.push('\n');
    }
    if let Some(emit) = emit {
        fs::File::create(emit)
            .and_then(|mut f| f.write_all(emitted.as_bytes()))
            .with_context(|| format!("writing {}", emit.display()))?;
    }
    Ok(status)
}
