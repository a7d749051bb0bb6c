//! Exact colorability and chromatic-number computations.
//!
//! Every answer is exact: a negative answer means the backtracking search was
//! exhausted, and running out of the node budget is reported as
//! [`Error::BudgetExceeded`], never as "not colorable".

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{bits, Graph};

/// Default node limit for a single colorability search.
pub const DEFAULT_COLOR_BUDGET: u64 = 20_000_000;

/// A proper coloring with the minimum number of colors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColorResult {
    pub chromatic_number: usize,
    /// `witness[v]` is the color of `v`, in `0..chromatic_number`.
    pub witness: Vec<usize>,
}

/// Independent check that `colors` is a proper coloring of `g` with colors below `k`.
pub fn is_proper_coloring(g: &Graph, colors: &[usize], k: usize) -> bool {
    colors.len() == g.n()
        && colors.iter().all(|&c| c < k)
        && g.edges().iter().all(|&(u, v)| colors[u] != colors[v])
}

/// Relabels colors in order of first appearance along vertex ids.
fn canonicalize(colors: &mut [usize]) {
    let mut map: Vec<Option<usize>> = vec![None; colors.len() + 1];
    let mut next = 0;
    for c in colors.iter_mut() {
        if map[*c].is_none() {
            map[*c] = Some(next);
            next += 1;
        }
        *c = map[*c].unwrap();
    }
}

/// Exact coloring search with a node budget shared across one query.
#[derive(Debug, Clone, Copy)]
pub struct Colorer {
    pub node_limit: u64,
}

impl Default for Colorer {
    fn default() -> Self {
        Colorer {
            node_limit: DEFAULT_COLOR_BUDGET,
        }
    }
}

struct Search<'a> {
    masks: &'a [u64],
    k: usize,
    nodes: u64,
    limit: u64,
    colors: Vec<Option<usize>>,
}

impl Search<'_> {
    /// DSATUR-ordered backtracking over the uncolored vertices in `todo`.
    /// `forbidden[v]` holds the colors already used on neighbors of `v`.
    fn run(&mut self, todo: u64, forbidden: &mut [u64], max_used: usize) -> Result<bool> {
        if todo == 0 {
            return Ok(true);
        }
        self.nodes += 1;
        if self.nodes > self.limit {
            return Err(Error::BudgetExceeded { nodes: self.nodes });
        }
        let v = bits(todo)
            .max_by_key(|&v| {
                (
                    forbidden[v].count_ones(),
                    (self.masks[v] & todo).count_ones(),
                    std::cmp::Reverse(v),
                )
            })
            .unwrap();
        let rest = todo & !(1 << v);
        let top = (max_used + 1).min(self.k);
        for c in 0..top {
            if forbidden[v] >> c & 1 == 1 {
                continue;
            }
            let touched = self.masks[v] & rest;
            let saved: Vec<u64> = bits(touched).map(|w| forbidden[w]).collect();
            let mut dead = false;
            for w in bits(touched) {
                forbidden[w] |= 1 << c;
                if forbidden[w].count_ones() as usize >= self.k {
                    dead = true;
                }
            }
            if !dead {
                self.colors[v] = Some(c);
                if self.run(rest, forbidden, max_used.max(c + 1))? {
                    return Ok(true);
                }
                self.colors[v] = None;
            }
            for (w, old) in bits(touched).zip(saved) {
                forbidden[w] = old;
            }
        }
        Ok(false)
    }
}

impl Colorer {
    pub fn new(node_limit: u64) -> Self {
        Colorer { node_limit }
    }

    /// A proper coloring with at most `k` colors, or `None` if none exists.
    pub fn is_k_colorable(&self, g: &Graph, k: usize) -> Result<Option<Vec<usize>>> {
        g.require_small()?;
        let n = g.n();
        if n == 0 {
            return Ok(Some(Vec::new()));
        }
        if k == 0 {
            return Ok(None);
        }
        if g.edge_count() == 0 {
            return Ok(Some(vec![0; n]));
        }
        if k >= n {
            return Ok(Some((0..n).collect()));
        }
        let masks = g.masks().unwrap();
        let mut search = Search {
            masks,
            k,
            nodes: 0,
            limit: self.node_limit,
            colors: vec![None; n],
        };
        for comp in g.components() {
            let todo = comp.iter().fold(0u64, |acc, &v| acc | 1 << v);
            let mut forbidden = vec![0u64; n];
            if !search.run(todo, &mut forbidden, 0)? {
                return Ok(None);
            }
        }
        let mut colors: Vec<usize> = search.colors.into_iter().map(|c| c.unwrap()).collect();
        canonicalize(&mut colors);
        assert!(
            is_proper_coloring(g, &colors, k),
            "coloring search produced an improper coloring"
        );
        Ok(Some(colors))
    }

    pub fn chromatic_number(&self, g: &Graph) -> Result<ColorResult> {
        if g.n() == 0 {
            return Ok(ColorResult {
                chromatic_number: 0,
                witness: Vec::new(),
            });
        }
        let start = if g.edge_count() == 0 { 1 } else { 2 };
        for k in start..=g.n() {
            if let Some(witness) = self.is_k_colorable(g, k)? {
                return Ok(ColorResult {
                    chromatic_number: k,
                    witness,
                });
            }
        }
        unreachable!("every graph is n-colorable")
    }

    /// The lexicographically first edge whose removal lowers the chromatic number.
    pub fn critical_edge(&self, h: &Graph) -> Result<Option<(usize, usize)>> {
        if h.edge_count() == 0 {
            return Err(Error::InvalidParameter(
                "edge-criticality needs a graph with at least one edge".into(),
            ));
        }
        let chi = self.chromatic_number(h)?.chromatic_number;
        for (u, v) in h.edges() {
            let mut minus = h.clone();
            minus.remove_edge(u, v);
            if self.is_k_colorable(&minus, chi - 1)?.is_some() {
                return Ok(Some((u, v)));
            }
        }
        Ok(None)
    }

    /// The lowest vertex `v` with `chi(h - v) = chi(h) - 1`, if any.
    pub fn critical_vertex(&self, h: &Graph) -> Result<Option<usize>> {
        if h.n() == 0 {
            return Err(Error::InvalidParameter("critical vertex of the empty graph".into()));
        }
        let chi = self.chromatic_number(h)?.chromatic_number;
        for v in 0..h.n() {
            let (minus, _) = h.remove_vertex(v)?;
            if self.is_k_colorable(&minus, chi - 1)?.is_some() {
                return Ok(Some(v));
            }
        }
        Ok(None)
    }
}

pub fn is_k_colorable(g: &Graph, k: usize) -> Result<Option<Vec<usize>>> {
    Colorer::default().is_k_colorable(g, k)
}

pub fn chromatic_number(g: &Graph) -> Result<ColorResult> {
    Colorer::default().chromatic_number(g)
}

/// `Some(edge)` when removing `edge` lowers the chromatic number of `h`.
pub fn is_edge_critical(h: &Graph) -> Result<Option<(usize, usize)>> {
    Colorer::default().critical_edge(h)
}

pub fn critical_vertex(h: &Graph) -> Result<Option<usize>> {
    Colorer::default().critical_vertex(h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{generate, GenSpec};

    fn cycle(n: usize) -> Graph {
        generate(&GenSpec::Cycle { n }).unwrap()
    }

    #[test]
    fn odd_cycle() {
        assert_eq!(is_k_colorable(&cycle(5), 2).unwrap(), None);
        let w = is_k_colorable(&cycle(5), 3).unwrap().unwrap();
        assert!(is_proper_coloring(&cycle(5), &w, 3));
        assert_eq!(chromatic_number(&cycle(5)).unwrap().chromatic_number, 3);
    }

    #[test]
    fn turan_witness_is_its_parts() {
        let g = generate(&GenSpec::Turan { n: 9, r: 3 }).unwrap();
        let w = is_k_colorable(&g, 3).unwrap().unwrap();
        assert_eq!(w, vec![0, 0, 0, 1, 1, 1, 2, 2, 2]);
    }

    #[test]
    fn k5_minus_edge() {
        let mut g = Graph::complete(5);
        g.remove_edge(0, 1);
        assert!(is_k_colorable(&g, 4).unwrap().is_some());
        assert!(is_k_colorable(&g, 3).unwrap().is_none());
    }

    #[test]
    fn chromatic_numbers() {
        assert_eq!(chromatic_number(&Graph::complete(4)).unwrap().chromatic_number, 4);
        let b = generate(&GenSpec::Blowup { m: 3, t: 2 }).unwrap();
        assert_eq!(chromatic_number(&b).unwrap().chromatic_number, 3);
        assert_eq!(chromatic_number(&Graph::empty(0)).unwrap().chromatic_number, 0);
        assert_eq!(chromatic_number(&Graph::empty(3)).unwrap().chromatic_number, 1);
        let r = chromatic_number(&cycle(7)).unwrap();
        assert_eq!(r.witness.iter().max().unwrap() + 1, r.chromatic_number);
    }

    #[test]
    fn edge_criticality() {
        assert!(is_edge_critical(&Graph::complete(4)).unwrap().is_some());
        assert_eq!(is_edge_critical(&cycle(4)).unwrap(), None);
        // triangle 0-1-2 with pendant 2-3
        let g = Graph::from_edges(4, &[(0, 1), (0, 2), (1, 2), (2, 3)]).unwrap();
        let e = is_edge_critical(&g).unwrap().unwrap();
        assert_eq!(e, (0, 1));
        assert!(is_edge_critical(&Graph::empty(3)).is_err());
        for k in 2..=6 {
            assert!(is_edge_critical(&Graph::complete(k)).unwrap().is_some());
        }
    }

    #[test]
    fn critical_vertices() {
        assert_eq!(critical_vertex(&Graph::complete(4)).unwrap(), Some(0));
        assert_eq!(critical_vertex(&cycle(5)).unwrap(), Some(0));
        // K_3(2) minus a vertex is K_{1,2,2}, still 3-chromatic.
        let b = generate(&GenSpec::Blowup { m: 3, t: 2 }).unwrap();
        assert_eq!(critical_vertex(&b).unwrap(), None);
    }

    #[test]
    fn budget_is_distinct_from_false() {
        let colorer = Colorer::new(3);
        let g = generate(&GenSpec::Gnp { n: 30, p: 0.5, seed: 4 }).unwrap();
        assert!(matches!(
            colorer.is_k_colorable(&g, 4),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn disconnected_components() {
        let g = cycle(5).disjoint_union(&Graph::complete(4));
        assert_eq!(chromatic_number(&g).unwrap().chromatic_number, 4);
        let w = is_k_colorable(&g, 4).unwrap().unwrap();
        assert!(is_proper_coloring(&g, &w, 4));
    }
}
