#![allow(dead_code)]

use extremal_core::Graph;

/// Injective homomorphisms from `t` into `g` by plain backtracking.
pub fn naive_injective(t: &Graph, g: &Graph) -> u128 {
    fn go(t: &Graph, g: &Graph, image: &mut Vec<usize>, used: &mut [bool]) -> u128 {
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

pub fn naive_copies(t: &Graph, g: &Graph) -> u128 {
    naive_injective(t, g) / naive_injective(t, t)
}

/// Whether `g` has a proper coloring with `k` colors, trying every assignment.
pub fn naive_colorable(g: &Graph, k: usize) -> bool {
    let n = g.n() as u32;
    if k == 0 {
        return n == 0;
    }
    let edges = g.edges();
    (0..(k as u64).pow(n)).any(|code| {
        let color = |v: usize| code / (k as u64).pow(v as u32) % k as u64;
        edges.iter().all(|&(u, v)| color(u) != color(v))
    })
}

/// The spanning subgraph of `g` on the edges selected by the bits of `subset`.
pub fn subset_graph(g: &Graph, edges: &[(usize, usize)], subset: u64) -> Graph {
    let mut out = Graph::empty(g.n());
    for (j, &(u, v)) in edges.iter().enumerate() {
        if subset >> j & 1 == 1 {
            out.add_edge(u, v);
        }
    }
    out
}

/// `a` precedes `b` when the lowest edge in exactly one of them is in `a`.
pub fn lex_before(a: u64, b: u64) -> bool {
    let d = a ^ b;
    d != 0 && a & d & d.wrapping_neg() != 0
}
