//! Desk-scale experiments with persistent, replayable records.
//!
//! An [`ExperimentRecord`] is one JSON object per line. Fields are written in
//! declaration order, graphs are graph6 strings and rationals are `"p/q"`
//! strings. Everything except `timings` is a pure function of `spec` and
//! `config`, so [`replay`] must reproduce it exactly.

mod check;
mod experiments;

use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::Path;
use std::sync::Mutex;
use std::time::Instant;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::counting::Count;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::graph6;
use crate::pattern::Pattern;
use crate::rational::as_string;
use crate::solver::{Edge, Proof, SolverConfig};

pub use check::recheck_counterexample;
pub use experiments::{compare_prediction, threshold_scan, verify_dichotomy, verify_extremal_colorable, verify_near_colorable};

/// Version of the record layout. Bumped on any incompatible change.
pub const RECORD_VERSION: u32 = 1;

const GOLDEN_GAMMA: u64 = 0x9e37_79b9_7f4a_7c15;

/// The splitmix64 output function.
pub fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(GOLDEN_GAMMA);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Seed of trial `index` under a base seed: `splitmix64(seed ^ index * gamma)`.
pub fn trial_seed(seed: u64, index: u64) -> u64 {
    splitmix64(seed ^ index.wrapping_mul(GOLDEN_GAMMA))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Holds,
    Fails,
    /// A budget ran out before the claim could be decided.
    Unknown,
}

/// A subgraph refuting a claim, in a form [`recheck_counterexample`] can
/// verify without trusting the record.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub host: String,
    pub forbidden: String,
    pub pattern: Pattern,
    pub subgraph: String,
    pub edges: Vec<Edge>,
    /// Copies of `pattern` in the subgraph.
    pub count: Count,
    /// The subgraph is claimed not to be colorable with this many colors.
    pub colors: usize,
    /// The subgraph is claimed to be an optimal `forbidden`-free subgraph of the host.
    pub optimal: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimVerdict {
    pub claim: String,
    /// What the claim was checked on, e.g. one trial of a scan.
    pub scope: Option<String>,
    pub verdict: Verdict,
    pub counterexample: Option<Counterexample>,
    pub note: Option<String>,
}

/// A host graph and, when it came from a generator, the generator spec.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Host {
    pub source: Option<String>,
    pub graph6: String,
}

impl Host {
    pub fn new(g: &Graph, source: Option<String>) -> Self {
        Host {
            source,
            graph6: graph6::encode(g),
        }
    }

    pub fn graph(&self) -> Result<Graph> {
        graph6::decode(&self.graph6)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ExperimentSpec {
    ExtremalColorable {
        host: Host,
        forbidden: String,
        pattern: Pattern,
        k: usize,
        /// The hypothesis checked is `min degree >= (1 - eps) n`.
        #[serde(with = "as_string")]
        eps: BigRational,
        all_optima: bool,
    },
    NearColorable {
        host: Host,
        forbidden: String,
        pattern: Pattern,
        k: usize,
    },
    ComparePrediction {
        ns: Vec<usize>,
        k: usize,
        m: usize,
        t: usize,
        forbidden: String,
    },
    ThresholdScan {
        forbidden: String,
        pattern: Pattern,
        k: usize,
        n: usize,
        #[serde(with = "as_string_vec")]
        fractions: Vec<BigRational>,
        trials: usize,
        seed: u64,
    },
    Dichotomy {
        host: Host,
        k: usize,
        m: usize,
        t: usize,
        #[serde(with = "as_string")]
        gamma: BigRational,
        limit: usize,
    },
}

impl ExperimentSpec {
    pub fn kind(&self) -> &'static str {
        match self {
            ExperimentSpec::ExtremalColorable { .. } => "extremal-colorable",
            ExperimentSpec::NearColorable { .. } => "near-colorable",
            ExperimentSpec::ComparePrediction { .. } => "compare-prediction",
            ExperimentSpec::ThresholdScan { .. } => "threshold-scan",
            ExperimentSpec::Dichotomy { .. } => "dichotomy",
        }
    }
}

mod as_string_vec {
    use num_rational::BigRational;
    use serde::ser::SerializeSeq;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[BigRational], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for r in v {
            seq.serialize_element(&r.to_string())?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigRational>, D::Error> {
        Vec::<String>::deserialize(d)?
            .iter()
            .map(|s| crate::rational::parse_rational(s).map_err(serde::de::Error::custom))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColorableResults {
    pub n: usize,
    pub min_degree: usize,
    pub degree_floor: usize,
    pub hypothesis_met: bool,
    pub forbidden_chromatic_number: usize,
    pub forbidden_edge_critical: bool,
    pub optimum: Option<Count>,
    pub witness_edges: Option<Vec<Edge>>,
    pub proof: Option<Proof>,
    pub nodes: Option<u64>,
    pub witness_colorable: Option<bool>,
    pub optima_found: Option<usize>,
    pub optima_complete: Option<bool>,
    pub optima_colorable: Option<usize>,
    pub rebuild_count: Option<Count>,
    pub rebuild_h_free: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NearColorableResults {
    pub n: usize,
    pub forbidden_chromatic_number: usize,
    pub forbidden_edge_critical: bool,
    pub optimum: Option<Count>,
    pub witness_edges: Option<Vec<Edge>>,
    pub witness_edge_count: Option<usize>,
    pub partite_edges: Option<usize>,
    /// The partite edge count came from the exact partition search.
    pub deletion_exact: Option<bool>,
    pub deletion_count: Option<usize>,
    /// `deletion_count / n^2`.
    pub deletion_ratio: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompareRow {
    pub n: usize,
    pub exact: Option<Count>,
    pub prediction: String,
    /// `exact / prediction`.
    pub ratio: Option<String>,
    pub proof: Option<Proof>,
    pub nodes: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompareResults {
    pub pattern: Pattern,
    pub rows: Vec<CompareRow>,
    pub unknown_rows: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanTrial {
    pub fraction: String,
    pub trial: usize,
    pub seed: u64,
    pub host: String,
    pub min_degree: usize,
    pub optimum: Option<Count>,
    pub optima: Option<usize>,
    pub outcome: Verdict,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanRow {
    pub fraction: String,
    pub degree_floor: usize,
    pub trials: usize,
    pub passed: usize,
    pub failed: usize,
    pub unknown: usize,
    /// `passed / (passed + failed)`; unknown trials are excluded.
    pub pass_rate: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanResults {
    pub rows: Vec<ScanRow>,
    pub trials: Vec<ScanTrial>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DichotomyRow {
    pub edges: Vec<Edge>,
    pub count: Count,
    /// `count / optimum`, absent when the optimum is 0.
    pub ratio: Option<String>,
    /// Edge deletions needed to make the subgraph `(k-1)`-partite.
    pub distance: usize,
    pub low_ratio: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrontierPoint {
    pub distance: usize,
    pub max_ratio: Option<String>,
    pub subgraphs: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DichotomyResults {
    pub pattern: Pattern,
    pub optimum: Option<Count>,
    pub distance_exact: bool,
    /// The edgeless subgraph, kept as a reference point.
    pub edgeless: Option<DichotomyRow>,
    pub subgraphs: Vec<DichotomyRow>,
    pub enumeration_complete: Option<bool>,
    pub frontier: Vec<FrontierPoint>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "data", rename_all = "kebab-case")]
pub enum ExperimentResults {
    ExtremalColorable(ColorableResults),
    NearColorable(NearColorableResults),
    ComparePrediction(CompareResults),
    ThresholdScan(ScanResults),
    Dichotomy(DichotomyResults),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Timings {
    pub elapsed_ms: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentRecord {
    pub version: u32,
    pub experiment_id: String,
    pub spec: ExperimentSpec,
    pub config: SolverConfig,
    pub results: ExperimentResults,
    pub verdicts: Vec<ClaimVerdict>,
    pub timings: Timings,
}

impl ExperimentRecord {
    /// The record as one line of JSON, without the trailing newline.
    pub fn to_line(&self) -> String {
        serde_json::to_string(self).expect("records always serialize")
    }

    pub fn from_line(line: &str) -> Result<Self> {
        let value: Value = serde_json::from_str(line).map_err(|e| Error::Record(e.to_string()))?;
        match value.get("version").and_then(Value::as_u64) {
            Some(v) if v == RECORD_VERSION as u64 => {}
            Some(v) => return Err(Error::Record(format!("unsupported record version {v}"))),
            None => return Err(Error::Record("record has no version".into())),
        }
        serde_json::from_str(line).map_err(|e| Error::Record(e.to_string()))
    }

    /// The record as a line of JSON with `timings` removed: the part replay reproduces.
    pub fn results_line(&self) -> String {
        let mut value = serde_json::to_value(self).expect("records always serialize");
        value.as_object_mut().expect("records are objects").remove("timings");
        value.to_string()
    }

    pub fn tally(&self) -> VerdictTally {
        let mut t = VerdictTally::default();
        for v in &self.verdicts {
            t.add(v.verdict);
        }
        t
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictTally {
    pub holds: usize,
    pub fails: usize,
    pub unknown: usize,
}

impl VerdictTally {
    pub fn add(&mut self, v: Verdict) {
        match v {
            Verdict::Holds => self.holds += 1,
            Verdict::Fails => self.fails += 1,
            Verdict::Unknown => self.unknown += 1,
        }
    }

    pub fn merge(&mut self, other: VerdictTally) {
        self.holds += other.holds;
        self.fails += other.fails;
        self.unknown += other.unknown;
    }
}

/// FNV-1a, used only to name experiments. Stable across platforms and releases.
fn fnv1a(bytes: &[u8]) -> u64 {
    bytes.iter().fold(0xcbf2_9ce4_8422_2325, |h, &b| (h ^ b as u64).wrapping_mul(0x100_0000_01b3))
}

fn experiment_id(spec: &ExperimentSpec, config: &SolverConfig) -> String {
    let text = serde_json::to_string(&(spec, config)).expect("specs always serialize");
    format!("{}-{:016x}", spec.kind(), fnv1a(text.as_bytes()))
}

/// Runs an experiment from its spec.
pub fn execute(spec: &ExperimentSpec, config: &SolverConfig) -> Result<ExperimentRecord> {
    let clock = Instant::now();
    let (results, verdicts) = experiments::run(spec, config)?;
    Ok(ExperimentRecord {
        version: RECORD_VERSION,
        experiment_id: experiment_id(spec, config),
        spec: spec.clone(),
        config: config.clone(),
        results,
        verdicts,
        timings: Timings {
            elapsed_ms: clock.elapsed().as_millis() as u64,
        },
    })
}

/// Re-executes a record and lists the paths of every field that changed,
/// ignoring timings.
pub fn replay(record: &ExperimentRecord) -> Result<(ExperimentRecord, Vec<String>)> {
    let fresh = execute(&record.spec, &record.config)?;
    let differences = diff(record, &fresh);
    Ok((fresh, differences))
}

pub fn diff(a: &ExperimentRecord, b: &ExperimentRecord) -> Vec<String> {
    let mut out = Vec::new();
    let mut va = serde_json::to_value(a).expect("records always serialize");
    let mut vb = serde_json::to_value(b).expect("records always serialize");
    va.as_object_mut().unwrap().remove("timings");
    vb.as_object_mut().unwrap().remove("timings");
    diff_values("", &va, &vb, &mut out);
    out
}

fn diff_values(path: &str, a: &Value, b: &Value, out: &mut Vec<String>) {
    match (a, b) {
        (Value::Object(x), Value::Object(y)) => {
            let mut keys: Vec<&String> = x.keys().chain(y.keys()).collect();
            keys.sort();
            keys.dedup();
            for key in keys {
                let sub = format!("{path}/{key}");
                match (x.get(key), y.get(key)) {
                    (Some(p), Some(q)) => diff_values(&sub, p, q, out),
                    _ => out.push(sub),
                }
            }
        }
        (Value::Array(x), Value::Array(y)) if x.len() == y.len() => {
            for (i, (p, q)) in x.iter().zip(y).enumerate() {
                diff_values(&format!("{path}/{i}"), p, q, out);
            }
        }
        _ if a == b => {}
        _ => out.push(if path.is_empty() { "/".into() } else { path.into() }),
    }
}

/// Appends records to a file, one per line. Safe to share between threads.
pub struct RecordWriter {
    file: Mutex<File>,
}

impl RecordWriter {
    pub fn open(path: &Path) -> Result<Self> {
        let file = OpenOptions::new()
            .create(true)
            .append(true)
            .open(path)
            .map_err(|e| Error::Record(format!("{}: {e}", path.display())))?;
        Ok(RecordWriter { file: Mutex::new(file) })
    }

    pub fn append(&self, record: &ExperimentRecord) -> Result<()> {
        let mut line = record.to_line();
        line.push('\n');
        let mut file = self.file.lock().unwrap_or_else(|e| e.into_inner());
        file.write_all(line.as_bytes())
            .and_then(|_| file.flush())
            .map_err(|e| Error::Record(e.to_string()))
    }
}

pub fn read_records(path: &Path) -> Result<Vec<ExperimentRecord>> {
    let file = File::open(path).map_err(|e| Error::Record(format!("{}: {e}", path.display())))?;
    let mut out = Vec::new();
    for (i, line) in BufReader::new(file).lines().enumerate() {
        let line = line.map_err(|e| Error::Record(e.to_string()))?;
        if line.trim().is_empty() {
            continue;
        }
        out.push(ExperimentRecord::from_line(&line).map_err(|e| Error::Record(format!("line {}: {e}", i + 1)))?);
    }
    Ok(out)
}
