//! Best `k`-partite subgraphs.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{PartiteMode, SolverConfig};
use crate::counting::{cliques_within, count_masks, count_pattern, Count};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::pattern::Pattern;

/// Assignment of (some) vertices to parts `0..k`. Parts may be empty.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Partition {
    pub k: usize,
    /// `None` for vertices outside the partition's support.
    pub assignment: Vec<Option<usize>>,
}

impl Partition {
    /// A partition of `n` vertices with nothing assigned yet.
    pub fn empty(n: usize, k: usize) -> Self {
        Partition {
            k,
            assignment: vec![None; n],
        }
    }

    pub fn from_parts(n: usize, k: usize, parts: &[Vec<usize>]) -> Result<Self> {
        if parts.len() > k {
            return Err(Error::InvalidParameter(format!("{} parts given for k = {k}", parts.len())));
        }
        let mut p = Partition::empty(n, k);
        for (i, part) in parts.iter().enumerate() {
            for &v in part {
                if v >= n {
                    return Err(Error::VertexOutOfRange { vertex: v, n });
                }
                if p.assignment[v].replace(i).is_some() {
                    return Err(Error::InvalidParameter(format!("vertex {v} appears in two parts")));
                }
            }
        }
        Ok(p)
    }

    pub fn n(&self) -> usize {
        self.assignment.len()
    }

    pub fn part(&self, v: usize) -> Option<usize> {
        self.assignment[v]
    }

    pub fn parts(&self) -> Vec<Vec<usize>> {
        let mut parts = vec![Vec::new(); self.k];
        for (v, p) in self.assignment.iter().enumerate() {
            if let Some(p) = p {
                parts[*p].push(v);
            }
        }
        parts
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.n()).filter(|&v| self.assignment[v].is_some()).collect()
    }

    /// The edges of `g` joining assigned vertices in different parts.
    pub fn multipartite_subgraph(&self, g: &Graph) -> Graph {
        let mut out = Graph::empty(g.n());
        for (u, v) in g.edges() {
            if let (Some(a), Some(b)) = (self.assignment[u], self.assignment[v]) {
                if a != b {
                    out.add_edge(u, v);
                }
            }
        }
        out
    }

    pub(crate) fn part_masks(&self) -> Vec<u64> {
        let mut masks = vec![0u64; self.k];
        for (v, p) in self.assignment.iter().enumerate() {
            if let Some(p) = p {
                masks[*p] |= 1 << v;
            }
        }
        masks
    }
}

/// Cross-part adjacency masks for a full assignment.
fn cross_masks(host: &[u64], parts: &[usize], out: &mut [u64]) {
    let mut part_mask = [0u64; 64];
    for (v, &p) in parts.iter().enumerate() {
        part_mask[p] |= 1 << v;
    }
    for (v, &p) in parts.iter().enumerate() {
        out[v] = host[v] & !part_mask[p];
    }
}

/// A `k`-partite subgraph of `g` with the most copies of `t`, as a partition
/// of all vertices together with that count.
///
/// Exact mode enumerates set partitions into at most `k` blocks in restricted
/// growth order (vertex 0 always in part 0) and keeps the first maximum.
pub fn max_partite(g: &Graph, k: usize, t: &Pattern, mode: PartiteMode, config: &SolverConfig) -> Result<(Partition, Count)> {
    if k == 0 {
        return Err(Error::InvalidParameter("max_partite needs k >= 1".into()));
    }
    g.require_small()?;
    t.validate()?;
    let n = g.n();
    if n == 0 {
        return Ok((Partition::empty(0, k), count_pattern(g, t)?));
    }
    let host = g.masks().unwrap();
    let parts = match mode {
        PartiteMode::Exact => {
            if n > config.partite_exact_max_vertices {
                return Err(Error::InstanceTooLarge {
                    what: "host vertex set",
                    size: n,
                    limit: config.partite_exact_max_vertices,
                });
            }
            exact(host, k, t)?
        }
        PartiteMode::LocalSearch => local_search(host, k, t, config)?,
    };
    let partition = Partition {
        k,
        assignment: parts.into_iter().map(Some).collect(),
    };
    let count = count_pattern(&partition.multipartite_subgraph(g), t)?;
    Ok((partition, count))
}

const PREFIX_LEN: usize = 6;

fn exact(host: &[u64], k: usize, t: &Pattern) -> Result<Vec<usize>> {
    let n = host.len();
    let mut prefixes = Vec::new();
    let mut buf = vec![0usize; n];
    growth_prefixes(&mut buf, 1, 1, n.min(PREFIX_LEN), k, &mut prefixes);
    let results: Vec<(Count, Vec<usize>)> = prefixes
        .par_iter()
        .map(|prefix| {
            let mut parts = vec![0usize; n];
            parts[..prefix.len()].copy_from_slice(prefix);
            let used = prefix.iter().max().map_or(0, |m| m + 1);
            let mut best = None;
            let mut scratch = vec![0u64; n];
            complete(host, t, k, &mut parts, prefix.len(), used, &mut scratch, &mut best)?;
            Ok(best.expect("every prefix extends to a partition"))
        })
        .collect::<Result<_>>()?;
    let mut best: Option<(Count, Vec<usize>)> = None;
    for r in results {
        if best.as_ref().is_none_or(|b| r.0 > b.0) {
            best = Some(r);
        }
    }
    Ok(best.unwrap().1)
}

fn growth_prefixes(buf: &mut [usize], pos: usize, used: usize, len: usize, k: usize, out: &mut Vec<Vec<usize>>) {
    if pos == len {
        out.push(buf[..len].to_vec());
        return;
    }
    for p in 0..(used + 1).min(k) {
        buf[pos] = p;
        growth_prefixes(buf, pos + 1, used.max(p + 1), len, k, out);
    }
}

#[allow(clippy::too_many_arguments)]
fn complete(
    host: &[u64],
    t: &Pattern,
    k: usize,
    parts: &mut [usize],
    pos: usize,
    used: usize,
    scratch: &mut [u64],
    best: &mut Option<(Count, Vec<usize>)>,
) -> Result<()> {
    if pos == parts.len() {
        cross_masks(host, parts, scratch);
        let c = count_masks(scratch, t)?;
        if best.as_ref().is_none_or(|b| c > b.0) {
            *best = Some((c, parts.to_vec()));
        }
        return Ok(());
    }
    for p in 0..(used + 1).min(k) {
        parts[pos] = p;
        complete(host, t, k, parts, pos + 1, used.max(p + 1), scratch, best)?;
    }
    Ok(())
}

/// Copies of `t` in the multipartite subgraph after moving `v` to part `p`.
fn count_with_move(host: &[u64], t: &Pattern, parts: &mut [usize], cross: &mut [u64], v: usize, p: usize) -> Result<Count> {
    let old = parts[v];
    parts[v] = p;
    cross_masks(host, parts, cross);
    let c = count_masks(cross, t);
    parts[v] = old;
    c
}

fn local_search(host: &[u64], k: usize, t: &Pattern, config: &SolverConfig) -> Result<Vec<usize>> {
    let n = host.len();
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut cross = vec![0u64; n];
    let mut best: Option<(Count, Vec<usize>)> = None;
    for _ in 0..config.local_search_restarts.max(1) {
        let mut parts: Vec<usize> = (0..n).map(|_| rng.gen_range(0..k)).collect();
        cross_masks(host, &parts, &mut cross);
        let mut current = count_masks(&cross, t)?;
        for _ in 0..config.local_search_moves_per_vertex * n {
            let mut step: Option<(Count, usize, usize)> = None;
            cross_masks(host, &parts, &mut cross);
            let mut part_mask = vec![0u64; k];
            for (u, &q) in parts.iter().enumerate() {
                part_mask[q] |= 1 << u;
            }
            for v in 0..n {
                let own = parts[v];
                for p in (0..k).filter(|&p| p != own) {
                    let after = match *t {
                        Pattern::Clique(m) if m >= 1 => {
                            let now = cliques_within(&cross, cross[v], m - 1);
                            let then = cliques_within(&cross, host[v] & !part_mask[p], m - 1);
                            current - now + then
                        }
                        _ => {
                            let mut scratch = vec![0u64; n];
                            count_with_move(host, t, &mut parts, &mut scratch, v, p)?
                        }
                    };
                    if after > step.map_or(current, |s| s.0) {
                        step = Some((after, v, p));
                    }
                }
            }
            match step {
                Some((after, v, p)) => {
                    parts[v] = p;
                    current = after;
                }
                None => break,
            }
        }
        if best.as_ref().is_none_or(|b| current > b.0) {
            best = Some((current, parts));
        }
    }
    Ok(best.unwrap().1)
}
