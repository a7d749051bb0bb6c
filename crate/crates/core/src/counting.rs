//! Counting and detecting copies of patterns.
//!
//! A copy of `T` in `G` is an injective edge-preserving map `T -> G` taken up
//! to automorphisms of `T`, so copies need not be induced. The generic counter
//! divides injective homomorphisms by `|Aut(T)|`; cliques and blow-ups have
//! dedicated enumerators that must agree with it.

use crate::error::{Error, Result};
use crate::graph::{bits, low_bits, Graph};
use crate::pattern::Pattern;

/// Exact copy counts. Every kernel graph has at most 64 vertices and generic
/// patterns at most [`GENERIC_PATTERN_LIMIT`] vertices, so injective maps stay
/// below `64^12 < 2^72`; blow-up enumeration uses checked arithmetic.
pub type Count = u128;

/// Largest pattern accepted by the generic injective-homomorphism counter.
pub const GENERIC_PATTERN_LIMIT: usize = 12;

/// Number of `m`-vertex cliques. `m = 0` gives 1 and `m = 1` gives `n`.
pub fn count_cliques(g: &Graph, m: usize) -> Result<Count> {
    g.require_small()?;
    Ok(cliques_within(g.masks().unwrap(), g.vertex_mask(), m))
}

/// Cliques of size `m` inside the vertex set `cand`.
pub(crate) fn cliques_within(masks: &[u64], cand: u64, m: usize) -> Count {
    match m {
        0 => 1,
        1 => cand.count_ones() as Count,
        2 => bits(cand)
            .map(|v| (masks[v] & cand & !low_bits(v + 1)).count_ones() as Count)
            .sum(),
        _ => {
            let mut total = 0;
            let mut rest = cand;
            while rest != 0 {
                let v = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                let next = masks[v] & rest;
                if next.count_ones() as usize >= m - 1 {
                    total += cliques_within(masks, next, m - 1);
                }
            }
            total
        }
    }
}

/// True when the vertex set `cand` spans a clique of size `m`.
pub(crate) fn has_clique_within(masks: &[u64], cand: u64, m: usize) -> bool {
    if m == 0 {
        return true;
    }
    if (cand.count_ones() as usize) < m {
        return false;
    }
    if m == 1 {
        return true;
    }
    let mut rest = cand;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        if has_clique_within(masks, masks[v] & rest, m - 1) {
            return true;
        }
    }
    false
}

/// `N(G, T)` for a host given directly as adjacency masks.
pub(crate) fn count_masks(masks: &[u64], t: &Pattern) -> Result<Count> {
    match *t {
        Pattern::Clique(m) => Ok(cliques_within(masks, low_bits(masks.len()), m)),
        _ => count_pattern(&Graph::from_masks(masks), t),
    }
}

/// Number of copies of `K_m(t)`: families of `m` pairwise disjoint `t`-sets
/// that are pairwise completely joined.
pub fn count_blowups(g: &Graph, m: usize, t: usize) -> Result<Count> {
    g.require_small()?;
    if m == 0 || t == 0 {
        return Ok(1);
    }
    blowup_classes(g.masks().unwrap(), g.vertex_mask(), 0, m, t)
}

/// Classes are chosen in increasing order of their smallest vertex; `floor`
/// masks out every vertex not above the previous class minimum.
fn blowup_classes(masks: &[u64], cand: u64, floor: u64, left: usize, t: usize) -> Result<Count> {
    let avail = cand & !floor;
    let size = avail.count_ones() as usize;
    if size < left * t {
        return Ok(0);
    }
    if left == 1 {
        return Ok(binomial_u128(size, t));
    }
    let mut total: Count = 0;
    for a in bits(avail) {
        let above = !low_bits(a + 1);
        let next_floor = low_bits(a + 1);
        let base = cand & masks[a];
        total = total
            .checked_add(class_rest(masks, base, avail & above, t - 1, next_floor, left, t)?)
            .ok_or(Error::CountOverflow)?;
    }
    Ok(total)
}

/// Completes the current class with `need` more members drawn from `pool`,
/// then recurses on the remaining classes.
fn class_rest(
    masks: &[u64],
    cand: u64,
    pool: u64,
    need: usize,
    floor: u64,
    left: usize,
    t: usize,
) -> Result<Count> {
    if need == 0 {
        return blowup_classes(masks, cand, floor, left - 1, t);
    }
    if ((cand & !floor).count_ones() as usize) < (left - 1) * t {
        return Ok(0);
    }
    let mut total: Count = 0;
    let mut rest = pool;
    while rest.count_ones() as usize >= need {
        let s = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        total = total
            .checked_add(class_rest(masks, cand & masks[s], rest, need - 1, floor, left, t)?)
            .ok_or(Error::CountOverflow)?;
    }
    Ok(total)
}

fn binomial_u128(n: usize, k: usize) -> Count {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Backtracking embedder for a fixed pattern graph.
///
/// Pattern vertices are placed in a connectivity-first order; each step
/// intersects the host neighborhoods of the images of already placed pattern
/// neighbors, then filters by degree.
#[derive(Clone, Debug)]
pub(crate) struct Embedder {
    order: Vec<usize>,
    /// For each position, the earlier positions adjacent to it in the pattern.
    back: Vec<Vec<usize>>,
    degree: Vec<usize>,
}

impl Embedder {
    /// Builds the placement order. The first `prefix.len()` positions are the
    /// given pattern vertices, in that order.
    pub(crate) fn new(pattern: &Graph, prefix: &[usize]) -> Self {
        let k = pattern.n();
        assert!(k <= GENERIC_PATTERN_LIMIT, "embedder pattern too large");
        let mut order: Vec<usize> = prefix.to_vec();
        let mut placed = vec![false; k];
        for &v in prefix {
            placed[v] = true;
        }
        while order.len() < k {
            let next = (0..k)
                .filter(|&v| !placed[v])
                .max_by_key(|&v| {
                    let links = order.iter().filter(|&&u| pattern.has_edge(u, v)).count();
                    (links, pattern.degree(v), std::cmp::Reverse(v))
                })
                .unwrap();
            placed[next] = true;
            order.push(next);
        }
        let back = (0..k)
            .map(|i| (0..i).filter(|&j| pattern.has_edge(order[i], order[j])).collect())
            .collect();
        let degree = order.iter().map(|&v| pattern.degree(v)).collect();
        Embedder { order, back, degree }
    }

    pub(crate) fn len(&self) -> usize {
        self.order.len()
    }

    /// Counts injective homomorphisms extending the images fixed for the first
    /// `pins.len()` positions.
    pub(crate) fn count(&self, masks: &[u64], pins: &[usize]) -> Count {
        let mut images = [0usize; GENERIC_PATTERN_LIMIT];
        let Some(used) = self.pin(masks, pins, &mut images) else {
            return 0;
        };
        let mut degs = [0u32; 64];
        for (d, m) in degs.iter_mut().zip(masks) {
            *d = m.count_ones();
        }
        let free = low_bits(masks.len()) & !used;
        self.count_from(masks, &degs, pins.len(), free, &mut images)
    }

    /// True when some injective homomorphism extends the pins.
    pub(crate) fn exists(&self, masks: &[u64], pins: &[usize]) -> bool {
        self.exists_within(masks, low_bits(masks.len()), pins)
    }

    /// As [`Embedder::exists`], with every unpinned image restricted to `domain`.
    pub(crate) fn exists_within(&self, masks: &[u64], domain: u64, pins: &[usize]) -> bool {
        let mut images = [0usize; GENERIC_PATTERN_LIMIT];
        let Some(used) = self.pin(masks, pins, &mut images) else {
            return false;
        };
        let mut degs = [0u32; 64];
        for (d, m) in degs.iter_mut().zip(masks) {
            *d = (m & (domain | used)).count_ones();
        }
        self.exists_from(masks, &degs, pins.len(), domain & !used, &mut images)
    }

    fn pin(&self, masks: &[u64], pins: &[usize], images: &mut [usize]) -> Option<u64> {
        let mut used = 0u64;
        for (i, &x) in pins.iter().enumerate() {
            if used >> x & 1 == 1 {
                return None;
            }
            if self.back[i].iter().any(|&j| masks[images[j]] >> x & 1 == 0) {
                return None;
            }
            images[i] = x;
            used |= 1 << x;
        }
        Some(used)
    }

    #[inline]
    fn candidates(&self, masks: &[u64], degs: &[u32], pos: usize, free: u64, images: &[usize]) -> u64 {
        let mut cand = free;
        for &j in &self.back[pos] {
            cand &= masks[images[j]];
        }
        let need = self.degree[pos] as u32;
        if need > 0 {
            let mut filtered = 0;
            for x in bits(cand) {
                if degs[x] >= need {
                    filtered |= 1 << x;
                }
            }
            cand = filtered;
        }
        cand
    }

    fn count_from(&self, masks: &[u64], degs: &[u32], pos: usize, free: u64, images: &mut [usize]) -> Count {
        if pos == self.len() {
            return 1;
        }
        let cand = self.candidates(masks, degs, pos, free, images);
        if pos + 1 == self.len() {
            return cand.count_ones() as Count;
        }
        let mut total = 0;
        for x in bits(cand) {
            images[pos] = x;
            total += self.count_from(masks, degs, pos + 1, free & !(1 << x), images);
        }
        total
    }

    fn exists_from(&self, masks: &[u64], degs: &[u32], pos: usize, free: u64, images: &mut [usize]) -> bool {
        if pos == self.len() {
            return true;
        }
        let cand = self.candidates(masks, degs, pos, free, images);
        if pos + 1 == self.len() {
            return cand != 0;
        }
        for x in bits(cand) {
            images[pos] = x;
            if self.exists_from(masks, degs, pos + 1, free & !(1 << x), images) {
                return true;
            }
        }
        false
    }
}

/// Number of injective homomorphisms from `pattern` into `host`.
pub fn injective_homomorphisms(pattern: &Graph, host: &Graph) -> Result<Count> {
    host.require_small()?;
    if pattern.n() > GENERIC_PATTERN_LIMIT {
        return Err(Error::PatternTooLarge {
            vertices: pattern.n(),
            limit: GENERIC_PATTERN_LIMIT,
        });
    }
    if pattern.n() > host.n() {
        return Ok(0);
    }
    Ok(Embedder::new(pattern, &[]).count(host.masks().unwrap(), &[]))
}

/// Number of copies of `t` in `g` through the generic counter, regardless of
/// the pattern kind.
pub fn count_pattern_generic(g: &Graph, t: &Pattern) -> Result<Count> {
    t.validate()?;
    let homs = injective_homomorphisms(&t.graph(), g)?;
    Ok(homs / t.automorphism_count()?)
}

/// `N(G, T)`: the number of (not necessarily induced) copies of `t` in `g`.
pub fn count_pattern(g: &Graph, t: &Pattern) -> Result<Count> {
    t.validate()?;
    match *t {
        Pattern::Clique(m) => count_cliques(g, m),
        Pattern::Blowup { m, t } => count_blowups(g, m, t),
        _ => count_pattern_generic(g, t),
    }
}

/// True iff `g` has a subgraph isomorphic to `h`.
pub fn contains(g: &Graph, h: &Graph) -> Result<bool> {
    g.require_small()?;
    if h.n() > g.n() || h.edge_count() > g.edge_count() {
        return Ok(false);
    }
    Ok(Embedder::new(h, &[]).exists(g.masks().unwrap(), &[]))
}

/// Number of copies of `t` that contain vertex `v`.
pub fn copies_through_vertex(g: &Graph, t: &Pattern, v: usize) -> Result<Count> {
    g.check_vertex(v)?;
    g.require_small()?;
    t.validate()?;
    match *t {
        Pattern::Clique(m) => {
            let masks = g.masks().unwrap();
            Ok(if m == 0 { 0 } else { cliques_within(masks, masks[v], m - 1) })
        }
        _ => {
            let (rest, _) = g.remove_vertex(v)?;
            Ok(count_pattern(g, t)? - count_pattern(&rest, t)?)
        }
    }
}

/// Detects copies of a fixed forbidden graph `H` created by adding one edge.
///
/// One pinned embedder is kept per orbit of oriented edges of `H` under its
/// automorphism group, so a new edge `uv` is tested with each representative
/// `(a, b)` mapped onto `(u, v)`.
#[derive(Clone, Debug)]
pub struct EdgeAnchoredDetector {
    forbidden: Graph,
    anchored: Vec<Embedder>,
    whole: Embedder,
}

impl EdgeAnchoredDetector {
    pub fn new(h: &Graph) -> Result<Self> {
        if h.n() > GENERIC_PATTERN_LIMIT {
            return Err(Error::PatternTooLarge {
                vertices: h.n(),
                limit: GENERIC_PATTERN_LIMIT,
            });
        }
        let mut reps: Vec<(usize, usize)> = Vec::new();
        let hm = h.masks().expect("small pattern");
        for (a, b) in h.edges() {
            for oriented in [(a, b), (b, a)] {
                let equivalent = reps.iter().any(|&(x, y)| {
                    Embedder::new(h, &[x, y]).exists(hm, &[oriented.0, oriented.1])
                });
                if !equivalent {
                    reps.push(oriented);
                }
            }
        }
        Ok(EdgeAnchoredDetector {
            forbidden: h.clone(),
            anchored: reps.iter().map(|&(a, b)| Embedder::new(h, &[a, b])).collect(),
            whole: Embedder::new(h, &[]),
        })
    }

    pub fn forbidden(&self) -> &Graph {
        &self.forbidden
    }

    /// True when the host (given as masks, already containing edge `uv`) has a
    /// copy of `H` using that edge.
    pub fn copy_through_edge(&self, masks: &[u64], u: usize, v: usize) -> bool {
        self.anchored.iter().any(|e| e.exists(masks, &[u, v]))
    }

    /// True when the host contains `H` anywhere.
    pub fn contained_in(&self, masks: &[u64]) -> bool {
        self.forbidden.n() <= masks.len() && self.whole.exists(masks, &[])
    }
}
