//! Exact chromatic invariants: clique number, chromatic number, and
//! color-critical edges. Everything is complete backtracking — patterns are
//! small, so no heuristics.

use crate::graph::{Edge, Graph};
use crate::{Error, Result};

/// Exact clique number by branch and bound over candidate masks.
pub fn clique_number(g: &Graph) -> usize {
    fn grow(g: &Graph, cand: u16, size: usize, best: &mut usize) {
        if size > *best {
            *best = size;
        }
        let mut rest = cand;
        while rest != 0 {
            if size + rest.count_ones() as usize <= *best {
                return;
            }
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            grow(g, rest & g.neighbors(v), size + 1, best);
        }
    }
    let mut best = 0;
    grow(g, g.vertex_mask(), 0, &mut best);
    best
}

fn colorable(g: &Graph, k: usize) -> bool {
    // vertices in descending degree order; a vertex may only open color
    // class max_used + 1, which kills color-permutation symmetry
    let n = g.n();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(g.degree(v)));
    let mut colors = vec![usize::MAX; n];

    fn assign(g: &Graph, order: &[usize], colors: &mut [usize], idx: usize, used: usize, k: usize) -> bool {
        if idx == order.len() {
            return true;
        }
        let v = order[idx];
        let mut forbidden = 0u32;
        let mut nb = g.neighbors(v);
        while nb != 0 {
            let u = nb.trailing_zeros() as usize;
            if colors[u] != usize::MAX {
                forbidden |= 1 << colors[u];
            }
            nb &= nb - 1;
        }
        let limit = (used + 1).min(k);
        for c in 0..limit {
            if forbidden & (1 << c) == 0 {
                colors[v] = c;
                if assign(g, order, colors, idx + 1, used.max(c + 1), k) {
                    return true;
                }
                colors[v] = usize::MAX;
            }
        }
        false
    }
    assign(g, &order, &mut colors, 0, 0, k)
}

/// Exact chromatic number. Searches upward from the clique-number lower
/// bound; each level is a complete backtracking k-coloring search.
pub fn chromatic_number(g: &Graph) -> usize {
    if g.n() == 0 {
        return 0;
    }
    if g.edge_count() == 0 {
        return 1;
    }
    let mut k = clique_number(g);
    while !colorable(g, k) {
        k += 1;
    }
    k
}

/// Edges whose deletion lowers the chromatic number.
///
/// Errors when the graph has no edges to classify.
pub fn color_critical_edges(g: &Graph) -> Result<Vec<Edge>> {
    let edges = g.edges();
    if edges.is_empty() {
        return Err(Error::NoEdges);
    }
    let chi = chromatic_number(g);
    let mut out = Vec::new();
    for e in edges {
        let h = g.without_edge(e)?;
        // deleting one edge drops chi by at most one, so a (chi-1)-coloring
        // check of h decides criticality
        if chromatic_number(&h) < chi {
            out.push(e);
        }
    }
    Ok(out)
}
