//! Deterministic generators for the graph families used throughout the crate.

use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rational::{ceil_mul, int, parse_rational};

/// A generator specification. `generate` is a pure function of it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GenSpec {
    Complete { n: usize },
    /// Balanced complete `r`-partite graph; the first `n mod r` parts get the extra vertex.
    Turan { n: usize, r: usize },
    /// `K_m(t)`: class `i` is vertices `i*t .. (i+1)*t`.
    Blowup { m: usize, t: usize },
    /// `K_m(t)` plus an apex (the last vertex) joined to everything.
    ConedBlowup { m: usize, t: usize },
    Cycle { n: usize },
    Gnp { n: usize, p: f64, seed: u64 },
    /// Random graph with minimum degree at least `ceil((1 - eps) n)`, capped at `n - 1`.
    MinDegreeRandom { n: usize, eps: f64, seed: u64 },
}

impl GenSpec {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParameter(msg));
        match *self {
            GenSpec::Turan { r: 0, .. } => bad("turan: r must be at least 1".into()),
            GenSpec::Cycle { n } if n < 3 => bad(format!("cycle: n must be at least 3, got {n}")),
            GenSpec::Gnp { p, .. } if !(0.0..=1.0).contains(&p) => {
                bad(format!("gnp: p must lie in [0, 1], got {p}"))
            }
            GenSpec::MinDegreeRandom { eps, .. } if !(0.0..1.0).contains(&eps) => {
                bad(format!("min-degree: eps must lie in [0, 1), got {eps}"))
            }
            _ => Ok(()),
        }
    }
}

impl fmt::Display for GenSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GenSpec::Complete { n } => write!(f, "gen:complete:{n}"),
            GenSpec::Turan { n, r } => write!(f, "gen:turan:{n}:{r}"),
            GenSpec::Blowup { m, t } => write!(f, "gen:blowup:{m}:{t}"),
            GenSpec::ConedBlowup { m, t } => write!(f, "gen:coned:{m}:{t}"),
            GenSpec::Cycle { n } => write!(f, "gen:cycle:{n}"),
            GenSpec::Gnp { n, p, seed } => write!(f, "gen:gnp:{n}:{p}:{seed}"),
            GenSpec::MinDegreeRandom { n, eps, seed } => write!(f, "gen:mindeg:{n}:{eps}:{seed}"),
        }
    }
}

impl FromStr for GenSpec {
    type Err = Error;

    /// Parses `gen:<kind>:<params...>` (the `gen:` prefix is optional).
    fn from_str(s: &str) -> Result<Self> {
        let body = s.strip_prefix("gen:").unwrap_or(s);
        let parts: Vec<&str> = body.split(':').collect();
        let err = || Error::Parse(format!("unrecognized generator spec {s:?}"));
        let num = |i: usize| -> Result<usize> {
            parts.get(i).and_then(|p| p.parse().ok()).ok_or_else(err)
        };
        let float = |i: usize| -> Result<f64> {
            parts.get(i).and_then(|p| p.parse().ok()).ok_or_else(err)
        };
        let seed = |i: usize| -> Result<u64> {
            parts.get(i).and_then(|p| p.parse().ok()).ok_or_else(err)
        };
        let arity = |k: usize| if parts.len() == k + 1 { Ok(()) } else { Err(err()) };
        let spec = match parts[0] {
            "complete" => {
                arity(1)?;
                GenSpec::Complete { n: num(1)? }
            }
            "turan" => {
                arity(2)?;
                GenSpec::Turan { n: num(1)?, r: num(2)? }
            }
            "blowup" => {
                arity(2)?;
                GenSpec::Blowup { m: num(1)?, t: num(2)? }
            }
            "coned" => {
                arity(2)?;
                GenSpec::ConedBlowup { m: num(1)?, t: num(2)? }
            }
            "cycle" => {
                arity(1)?;
                GenSpec::Cycle { n: num(1)? }
            }
            "gnp" => {
                arity(3)?;
                GenSpec::Gnp { n: num(1)?, p: float(2)?, seed: seed(3)? }
            }
            "mindeg" => {
                arity(3)?;
                GenSpec::MinDegreeRandom { n: num(1)?, eps: float(2)?, seed: seed(3)? }
            }
            _ => return Err(err()),
        };
        spec.validate()?;
        Ok(spec)
    }
}

pub fn generate(spec: &GenSpec) -> Result<Graph> {
    spec.validate()?;
    Ok(match *spec {
        GenSpec::Complete { n } => Graph::complete(n),
        GenSpec::Turan { n, r } => complete_multipartite(&turan_part_sizes(n, r)),
        GenSpec::Blowup { m, t } => complete_multipartite(&vec![t; m]),
        GenSpec::ConedBlowup { m, t } => complete_multipartite(&vec![t; m]).cone(),
        GenSpec::Cycle { n } => {
            let mut g = Graph::empty(n);
            for v in 0..n {
                g.add_edge(v, (v + 1) % n);
            }
            g
        }
        GenSpec::Gnp { n, p, seed } => gnp(n, p, &mut ChaCha8Rng::seed_from_u64(seed)),
        GenSpec::MinDegreeRandom { n, eps, seed } => {
            let floor = ceil_mul(&(int(1) - float_to_rational(eps)?), n);
            min_degree_graph(n, floor, 1.0 - eps / 2.0, seed)
        }
    })
}

/// Part sizes of the Turán graph `T(n, r)`: the first `n mod r` parts are one larger.
pub fn turan_part_sizes(n: usize, r: usize) -> Vec<usize> {
    assert!(r >= 1);
    (0..r).map(|i| n / r + usize::from(i < n % r)).collect()
}

/// Complete multipartite graph with consecutive parts of the given sizes.
pub fn complete_multipartite(sizes: &[usize]) -> Graph {
    let n: usize = sizes.iter().sum();
    let mut part = Vec::with_capacity(n);
    for (i, &s) in sizes.iter().enumerate() {
        part.extend(std::iter::repeat_n(i, s));
    }
    let mut g = Graph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            if part[u] != part[v] {
                g.add_edge(u, v);
            }
        }
    }
    g
}

fn gnp(n: usize, p: f64, rng: &mut ChaCha8Rng) -> Graph {
    let mut g = Graph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen::<f64>() < p {
                g.add_edge(u, v);
            }
        }
    }
    g
}

/// Samples `G(n, p)` and then, while some vertex has degree below `floor`, joins
/// the lowest such vertex to a uniformly chosen non-neighbor.
///
/// `floor` is capped at `n - 1`. The result is a pure function of the arguments.
pub fn min_degree_graph(n: usize, floor: usize, p: f64, seed: u64) -> Graph {
    let floor = floor.min(n.saturating_sub(1));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = gnp(n, p.clamp(0.0, 1.0), &mut rng);
    while let Some(v) = (0..n).find(|&v| g.degree(v) < floor) {
        let missing: Vec<usize> = (0..n).filter(|&u| u != v && !g.has_edge(u, v)).collect();
        let &u = missing
            .choose(&mut rng)
            .expect("a vertex below the degree floor has a non-neighbor");
        g.add_edge(u, v);
    }
    g
}

fn float_to_rational(x: f64) -> Result<BigRational> {
    // Round through the shortest decimal representation so that e.g. 0.8 is 4/5.
    parse_rational(&format!("{x}"))
}

/// Degree floor `ceil(phi * n)` for an exact fraction `phi`.
pub fn degree_floor(phi: &BigRational, n: usize) -> usize {
    if phi <= &BigRational::zero() {
        0
    } else {
        ceil_mul(phi, n)
    }
}
