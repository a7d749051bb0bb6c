//! Simple undirected graphs stored as per-vertex neighbor bitmasks.
//!
//! Graphs on at most 64 vertices use one `u64` word per vertex, which is the
//! representation every search kernel in this crate operates on. Larger graphs
//! use several words per vertex; they support construction, I/O and the
//! elementary queries here, while the kernels reject them with
//! [`Error::GraphTooLarge`].

use std::fmt;

use crate::error::{Error, Result};

/// Largest vertex count handled by the single-word kernels.
pub const KERNEL_MAX_VERTICES: usize = 64;

/// A simple undirected graph on vertices `0..n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    words: usize,
    adj: Vec<u64>,
}

/// Maps each vertex of a derived graph back to its id in the source graph.
pub type Remap = Vec<usize>;

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        Graph {
            n,
            words,
            adj: vec![0; n * words],
        }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v);
            }
        }
        g
    }

    /// Builds a graph from an edge list. Duplicate edges are merged; loops and
    /// out-of-range endpoints are rejected.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            g.check_vertex(u)?;
            g.check_vertex(v)?;
            if u == v {
                return Err(Error::InvalidParameter(format!("self-loop at vertex {u}")));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    /// Builds a graph on at most 64 vertices from neighbor masks.
    ///
    /// The masks are symmetrized and the diagonal is cleared.
    pub fn from_masks(masks: &[u64]) -> Self {
        let n = masks.len();
        assert!(n <= KERNEL_MAX_VERTICES);
        let mut g = Graph::empty(n);
        for (u, &m) in masks.iter().enumerate() {
            let mut rest = m & !(1u64 << u) & low_bits(n);
            while rest != 0 {
                let v = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                g.add_edge(u, v);
            }
        }
        g
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// True when the single-word kernels can run on this graph.
    #[inline]
    pub fn is_small(&self) -> bool {
        self.n <= KERNEL_MAX_VERTICES
    }

    pub(crate) fn require_small(&self) -> Result<()> {
        if self.is_small() {
            Ok(())
        } else {
            Err(Error::GraphTooLarge {
                n: self.n,
                limit: KERNEL_MAX_VERTICES,
            })
        }
    }

    /// Neighbor masks, one word per vertex. Only available for `n <= 64`.
    #[inline]
    pub fn masks(&self) -> Option<&[u64]> {
        if self.words == 1 {
            Some(&self.adj)
        } else {
            None
        }
    }

    /// Neighbor mask of `v`. Panics when `n > 64`.
    #[inline]
    pub fn mask(&self, v: usize) -> u64 {
        debug_assert!(self.words == 1, "mask() requires n <= 64");
        self.adj[v]
    }

    /// Mask with bit `v` set for every vertex. Panics when `n > 64`.
    #[inline]
    pub fn vertex_mask(&self) -> u64 {
        assert!(self.is_small());
        low_bits(self.n)
    }

    pub(crate) fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.n,
            })
        }
    }

    #[inline]
    fn row(&self, v: usize) -> &[u64] {
        &self.adj[v * self.words..(v + 1) * self.words]
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    /// Adds edge `uv`. Both endpoints must be in range and distinct.
    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u < self.n && v < self.n && u != v, "invalid edge {u}-{v}");
        self.adj[u * self.words + v / 64] |= 1 << (v % 64);
        self.adj[v * self.words + u / 64] |= 1 << (u % 64);
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        assert!(u < self.n && v < self.n, "invalid edge {u}-{v}");
        self.adj[u * self.words + v / 64] &= !(1 << (v % 64));
        self.adj[v * self.words + u / 64] &= !(1 << (u % 64));
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Minimum degree; 0 for graphs with at most one vertex.
    pub fn min_degree(&self) -> usize {
        if self.n <= 1 {
            return 0;
        }
        (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn edge_count(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).sum::<usize>() / 2
    }

    /// Neighbors of `v` in increasing order.
    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.row(v).iter().enumerate().flat_map(|(wi, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    None
                } else {
                    let b = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    Some(wi * 64 + b)
                }
            })
        })
    }

    /// Edges as `(u, v)` pairs with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            for v in self.neighbors(u) {
                if v > u {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Removes `v`; vertices above `v` shift down by one.
    pub fn remove_vertex(&self, v: usize) -> Result<(Graph, Remap)> {
        self.check_vertex(v)?;
        let keep: Vec<usize> = (0..self.n).filter(|&u| u != v).collect();
        self.induced_subgraph(&keep)
    }

    /// The subgraph induced by `vertices`, relabelled `0..len` in the given order.
    ///
    /// The returned remap sends each new id to the original id.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Result<(Graph, Remap)> {
        let mut seen = vec![false; self.n];
        for &v in vertices {
            self.check_vertex(v)?;
            if std::mem::replace(&mut seen[v], true) {
                return Err(Error::InvalidParameter(format!(
                    "vertex {v} listed twice in vertex set"
                )));
            }
        }
        let mut g = Graph::empty(vertices.len());
        for (i, &u) in vertices.iter().enumerate() {
            for (j, &v) in vertices.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.add_edge(i, j);
                }
            }
        }
        Ok((g, vertices.to_vec()))
    }

    /// The spanning subgraph with exactly the given edges, which must belong to `self`.
    pub fn spanning_subgraph(&self, edges: &[(usize, usize)]) -> Result<Graph> {
        let mut g = Graph::empty(self.n);
        for &(u, v) in edges {
            self.check_vertex(u)?;
            self.check_vertex(v)?;
            if u == v || !self.has_edge(u, v) {
                return Err(Error::InvalidParameter(format!(
                    "edge {u}-{v} is not an edge of the host graph"
                )));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    /// The graph obtained by deleting all edges of `self` that are not in `other`.
    pub fn intersection(&self, other: &Graph) -> Graph {
        assert_eq!(self.n, other.n);
        Graph {
            n: self.n,
            words: self.words,
            adj: self.adj.iter().zip(&other.adj).map(|(a, b)| a & b).collect(),
        }
    }

    /// True when every edge of `self` is an edge of `other`.
    pub fn is_subgraph_of(&self, other: &Graph) -> bool {
        self.n == other.n && self.adj.iter().zip(&other.adj).all(|(a, b)| a & !b == 0)
    }

    /// Disjoint union; vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let mut g = Graph::empty(self.n + other.n);
        for (u, v) in self.edges() {
            g.add_edge(u, v);
        }
        for (u, v) in other.edges() {
            g.add_edge(u + self.n, v + self.n);
        }
        g
    }

    /// Adds a vertex adjacent to every existing vertex.
    pub fn cone(&self) -> Graph {
        let mut g = Graph::empty(self.n + 1);
        for (u, v) in self.edges() {
            g.add_edge(u, v);
        }
        for u in 0..self.n {
            g.add_edge(u, self.n);
        }
        g
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut i = 0;
            while i < comp.len() {
                let u = comp[i];
                i += 1;
                for w in self.neighbors(u) {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

/// Mask with the lowest `n` bits set (`n <= 64`).
#[inline]
pub fn low_bits(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Iterates over the set bits of a mask in increasing order.
#[inline]
pub fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let b = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(b)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{generate, GenSpec};

    fn cycle(n: usize) -> Graph {
        generate(&GenSpec::Cycle { n }).unwrap()
    }

    #[test]
    fn remove_vertex_from_k4_gives_k3() {
        let (g, remap) = Graph::complete(4).remove_vertex(0).unwrap();
        assert_eq!(g, Graph::complete(3));
        assert_eq!(remap, vec![1, 2, 3]);
    }

    #[test]
    fn remove_vertex_from_c5_gives_p4() {
        let (g, remap) = cycle(5).remove_vertex(2).unwrap();
        // remaining cycle order 3-4-0-1 relabelled as 2-3-0-1
        assert_eq!(remap, vec![0, 1, 3, 4]);
        assert_eq!(g.edges(), vec![(0, 1), (0, 3), (2, 3)]);
        let mut degs: Vec<_> = (0..4).map(|v| g.degree(v)).collect();
        degs.sort();
        assert_eq!(degs, vec![1, 1, 2, 2]);
        assert_eq!(g.components().len(), 1);
    }

    #[test]
    fn remove_vertex_from_turan_6_3() {
        let t = generate(&GenSpec::Turan { n: 6, r: 3 }).unwrap();
        let (g, _) = t.remove_vertex(0).unwrap();
        assert_eq!(g.n(), 5);
        assert_eq!(g.edge_count(), 8);
    }

    #[test]
    fn remove_vertex_out_of_range() {
        assert_eq!(
            Graph::complete(3).remove_vertex(3),
            Err(Error::VertexOutOfRange { vertex: 3, n: 3 })
        );
    }

    #[test]
    fn induced_subgraph_examples() {
        let (g, _) = Graph::complete(5).induced_subgraph(&[0, 1, 2]).unwrap();
        assert_eq!(g, Graph::complete(3));

        let (g, _) = cycle(5).induced_subgraph(&[0, 1, 3]).unwrap();
        assert_eq!(g.edges(), vec![(0, 1)]);

        // turan(6,3) parts {0,1},{2,3},{4,5}: one full part plus one other vertex
        let t = generate(&GenSpec::Turan { n: 6, r: 3 }).unwrap();
        let (g, _) = t.induced_subgraph(&[0, 1, 2]).unwrap();
        assert_eq!(g.edge_count(), 2);
        assert_eq!(g.degree(2), 2);
    }

    #[test]
    fn induced_subgraph_rejects_bad_sets() {
        let g = Graph::complete(4);
        assert!(g.induced_subgraph(&[0, 4]).is_err());
        assert!(g.induced_subgraph(&[1, 1]).is_err());
    }

    #[test]
    fn min_degree_conventions() {
        assert_eq!(Graph::empty(0).min_degree(), 0);
        assert_eq!(Graph::empty(1).min_degree(), 0);
        assert_eq!(Graph::complete(5).min_degree(), 4);
    }

    #[test]
    fn multiword_graphs() {
        let mut g = Graph::empty(130);
        g.add_edge(0, 129);
        g.add_edge(64, 65);
        assert!(g.has_edge(129, 0));
        assert_eq!(g.degree(129), 1);
        assert_eq!(g.edges(), vec![(0, 129), (64, 65)]);
        assert!(g.masks().is_none());
        let (h, _) = g.remove_vertex(1).unwrap();
        assert!(h.has_edge(0, 128));
        assert!(h.has_edge(63, 64));
    }

    #[test]
    fn from_masks_symmetrizes() {
        let g = Graph::from_masks(&[0b010, 0, 0b001]);
        assert_eq!(g.edges(), vec![(0, 1), (0, 2)]);
    }
}
