//! Loop-free undirected graphs on at most 16 vertices.
//!
//! The adjacency relation is stored as one `u16` neighbor mask per vertex,
//! so every set operation the counting kernels need (neighborhood
//! intersection, candidate filtering, degree) is a couple of word ops.

use std::fmt;

use crate::{Error, Result};

/// Hard capacity: a neighbor mask must fit one machine word.
pub const MAX_VERTICES: usize = 16;

/// An undirected edge, stored with `u < v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    u: u8,
    v: u8,
}

impl Edge {
    /// Builds an edge, normalizing the endpoint order. Loops are rejected.
    pub fn new(u: usize, v: usize) -> Result<Edge> {
        if u == v {
            return Err(Error::LoopEdge(u));
        }
        if u >= MAX_VERTICES || v >= MAX_VERTICES {
            return Err(Error::VertexOutOfRange(u.max(v), MAX_VERTICES));
        }
        let (u, v) = if u < v { (u, v) } else { (v, u) };
        Ok(Edge { u: u as u8, v: v as u8 })
    }

    pub fn u(&self) -> usize {
        self.u as usize
    }

    pub fn v(&self) -> usize {
        self.v as usize
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.u, self.v)
    }
}

/// Immutable small graph: vertex count plus per-vertex neighbor bit masks.
///
/// Invariants (enforced by every constructor):
/// * symmetry: bit `u` of `adj[v]` is set iff bit `v` of `adj[u]` is set,
/// * no loops: bit `v` of `adj[v]` is clear,
/// * bits at or above `n` are clear in every mask.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Graph {
    n: u8,
    adj: [u16; MAX_VERTICES],
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Graph> {
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices(n));
        }
        Ok(Graph { n: n as u8, adj: [0; MAX_VERTICES] })
    }

    /// Builds a graph from an explicit edge list.
    ///
    /// Rejects `n > 16`, loops, endpoints outside `0..n` and duplicates.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            if u == v {
                return Err(Error::LoopEdge(u));
            }
            if u >= n || v >= n {
                return Err(Error::VertexOutOfRange(u.max(v), n));
            }
            if g.has_edge(u, v) {
                return Err(Error::DuplicateEdge(u.min(v), u.max(v)));
            }
            g.adj[u] |= 1 << v;
            g.adj[v] |= 1 << u;
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    /// Mask with the low `n` bits set.
    pub fn vertex_mask(&self) -> u16 {
        if self.n == 16 {
            u16::MAX
        } else {
            (1u16 << self.n) - 1
        }
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        debug_assert!(u < self.n() && v < self.n());
        self.adj[u] & (1 << v) != 0
    }

    /// Neighbor mask of `v`.
    pub fn neighbors(&self, v: usize) -> u16 {
        debug_assert!(v < self.n());
        self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n()).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn edge_count(&self) -> usize {
        self.adj[..self.n()].iter().map(|m| m.count_ones() as usize).sum::<usize>() / 2
    }

    /// Edges in `(u, v)` order with `u < v`, ascending.
    pub fn edges(&self) -> Vec<Edge> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n() {
            let above = ((1u32 << (u + 1)) - 1) as u16;
            let mut rest = self.adj[u] & !above;
            while rest != 0 {
                let v = rest.trailing_zeros() as usize;
                out.push(Edge { u: u as u8, v: v as u8 });
                rest &= rest - 1;
            }
        }
        out
    }

    /// Adds an edge in place. Callers inside the crate guarantee validity.
    pub(crate) fn add_edge_unchecked(&mut self, u: usize, v: usize) {
        debug_assert!(u != v && u < self.n() && v < self.n());
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
    }

    /// The same graph without edge `e`; errors if `e` is absent.
    pub fn without_edge(&self, e: Edge) -> Result<Graph> {
        if e.v() >= self.n() || !self.has_edge(e.u(), e.v()) {
            return Err(Error::NotAnEdge(e.u(), e.v()));
        }
        let mut g = *self;
        g.adj[e.u()] &= !(1 << e.v());
        g.adj[e.v()] &= !(1 << e.u());
        Ok(g)
    }

    /// Subgraph induced by the vertex set `mask`, relabeled in ascending order.
    pub fn induced_subgraph(&self, mask: u16) -> Graph {
        let mask = mask & self.vertex_mask();
        let mut map = [0u8; MAX_VERTICES];
        let mut k = 0usize;
        for v in 0..self.n() {
            if mask & (1 << v) != 0 {
                map[v] = k as u8;
                k += 1;
            }
        }
        let mut g = Graph { n: k as u8, adj: [0; MAX_VERTICES] };
        for v in 0..self.n() {
            if mask & (1 << v) == 0 {
                continue;
            }
            let mut nb = self.adj[v] & mask;
            while nb != 0 {
                let u = nb.trailing_zeros() as usize;
                g.adj[map[v] as usize] |= 1 << map[u];
                nb &= nb - 1;
            }
        }
        g
    }

    /// Relabels vertices: vertex `v` becomes `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        debug_assert_eq!(perm.len(), self.n());
        let mut g = Graph { n: self.n, adj: [0; MAX_VERTICES] };
        for v in 0..self.n() {
            let mut nb = self.adj[v];
            while nb != 0 {
                let u = nb.trailing_zeros() as usize;
                if u > v {
                    g.adj[perm[v]] |= 1 << perm[u];
                    g.adj[perm[u]] |= 1 << perm[v];
                }
                nb &= nb - 1;
            }
        }
        g
    }

    /// Appends one vertex adjacent to the vertices in `nbrs`.
    pub fn with_appended_vertex(&self, nbrs: u16) -> Result<Graph> {
        let n = self.n();
        if n + 1 > MAX_VERTICES {
            return Err(Error::TooManyVertices(n + 1));
        }
        debug_assert_eq!(nbrs & !self.vertex_mask(), 0);
        let mut g = *self;
        g.n += 1;
        g.adj[n] = nbrs;
        let mut nb = nbrs;
        while nb != 0 {
            let u = nb.trailing_zeros() as usize;
            g.adj[u] |= 1 << n;
            nb &= nb - 1;
        }
        Ok(g)
    }

    /// Disjoint union, `other`'s vertices relabeled after `self`'s.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph> {
        let n = self.n() + other.n();
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices(n));
        }
        let mut g = *self;
        g.n = n as u8;
        for v in 0..other.n() {
            g.adj[self.n() + v] = other.adj[v] << self.n();
        }
        Ok(g)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges=[", self.n)?;
        for (i, e) in self.edges().iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "])")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_graph() {
        let g = Graph::new(0, &[]).unwrap();
        assert_eq!(g.n(), 0);
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn triangle() {
        let g = Graph::new(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(g.edge_count(), 3);
        assert!(g.has_edge(2, 0));
        assert_eq!(g.degree(1), 2);
    }

    #[test]
    fn four_cycle_degrees() {
        let g = Graph::new(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        for v in 0..4 {
            assert_eq!(g.degree(v), 2);
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(Graph::new(17, &[]), Err(Error::TooManyVertices(17))));
        assert!(matches!(Graph::new(3, &[(0, 0)]), Err(Error::LoopEdge(0))));
        assert!(matches!(Graph::new(3, &[(0, 5)]), Err(Error::VertexOutOfRange(5, 3))));
        assert!(matches!(
            Graph::new(3, &[(0, 1), (1, 0)]),
            Err(Error::DuplicateEdge(0, 1))
        ));
    }

    #[test]
    fn edges_roundtrip() {
        let edges = [(0, 2), (1, 3), (0, 1), (2, 3)];
        let g = Graph::new(4, &edges).unwrap();
        let listed = g.edges();
        assert_eq!(listed.len(), 4);
        let g2 = Graph::new(4, &listed.iter().map(|e| (e.u(), e.v())).collect::<Vec<_>>()).unwrap();
        assert_eq!(g, g2);
    }

    #[test]
    fn induced_subgraph_examples() {
        // any 3 vertices of K4 give K3
        let k4 = Graph::new(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        let h = k4.induced_subgraph(0b1101);
        assert_eq!(h.n(), 3);
        assert_eq!(h.edge_count(), 3);

        // three consecutive vertices of C5 give the path on 3 vertices
        let c5 = Graph::new(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]).unwrap();
        let p = c5.induced_subgraph(0b00111);
        assert_eq!(p.edge_count(), 2);
        assert_eq!(p.degree(1), 2);

        // two opposite vertices of C4 are non-adjacent
        let c4 = Graph::new(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        let e = c4.induced_subgraph(0b0101);
        assert_eq!(e.n(), 2);
        assert_eq!(e.edge_count(), 0);
    }

    #[test]
    fn permuted_preserves_structure() {
        let g = Graph::new(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        let h = g.permuted(&[2, 0, 3, 1]);
        assert_eq!(h.edge_count(), 4);
        for v in 0..4 {
            assert_eq!(h.degree(v), 2);
        }
    }
}
