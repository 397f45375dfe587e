//! Canonical labeling and automorphism counting for small graphs.
//!
//! The scheme is iterative degree/neighborhood refinement followed by
//! backtracking over the coarsest equitable partition, taking the
//! lexicographically smallest upper-triangle bit string over all leaves of
//! the search tree. Two graphs are isomorphic iff they produce the same
//! string, and the number of leaf labelings achieving it is exactly the
//! order of the automorphism group.
//!
//! The triangle bits are packed in the same column order as graph6, so the
//! bits determined by the leading singleton cells of a partition form a
//! prefix of the string; that makes the prefix prune a single masked
//! compare. Cells that induce a complete or empty subgraph and see the rest
//! of the graph uniformly contribute a factorial of tied leaves without
//! being expanded, which keeps graphs with huge automorphism groups (empty
//! graphs, complete multipartite graphs, stars) cheap.

use std::cmp::Ordering;

use crate::graph::{Graph, MAX_VERTICES};

/// Label-invariant signature of an isomorphism class.
///
/// Equality and hashing use only the vertex count and the canonical bit
/// string; the stored top-label orbit is expressed in the *input* graph's
/// labels and is internal bookkeeping for the enumerator.
#[derive(Clone, Copy, Debug)]
pub struct CanonicalForm {
    n: u8,
    bits: u128,
    aut_count: u64,
    last_orbit: u16,
}

impl PartialEq for CanonicalForm {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.bits == other.bits
    }
}

impl Eq for CanonicalForm {}

impl std::hash::Hash for CanonicalForm {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.n.hash(state);
        self.bits.hash(state);
    }
}

impl CanonicalForm {
    /// Vertex count of the underlying graph.
    pub fn n(&self) -> usize {
        self.n as usize
    }

    /// Packed canonical upper triangle (column order, bit `t` of the word
    /// is bit `t` of the string).
    pub fn bits(&self) -> u128 {
        self.bits
    }

    /// Canonical byte string: vertex count followed by the packed triangle.
    /// Equal bytes iff isomorphic inputs.
    pub fn bytes(&self) -> Vec<u8> {
        let nbits = self.n() * (self.n().saturating_sub(1)) / 2;
        let mut out = vec![self.n];
        for byte in 0..(nbits + 7) / 8 {
            let mut b = 0u8;
            for k in 0..8 {
                let t = byte * 8 + k;
                if t < nbits && self.bits >> t & 1 == 1 {
                    b |= 1 << (7 - k);
                }
            }
            out.push(b);
        }
        out
    }

    /// Order of the automorphism group.
    pub fn aut_count(&self) -> u64 {
        self.aut_count
    }

    /// The canonically relabeled representative graph.
    pub fn graph(&self) -> Graph {
        let mut edges = Vec::new();
        let mut t = 0usize;
        for j in 1..self.n() {
            for i in 0..j {
                if self.bits >> t & 1 == 1 {
                    edges.push((i, j));
                }
                t += 1;
            }
        }
        Graph::new(self.n(), &edges).expect("canonical bits decode to a valid graph")
    }

    /// graph6 encoding of the canonical representative.
    pub fn to_graph6(&self) -> String {
        crate::graph6::write_graph6(&self.graph())
    }

    /// Vertices (of the *input* labeling) that receive the top canonical
    /// label under at least one optimal labeling. They form one orbit of
    /// the automorphism group, which is what the enumerator's parent rule
    /// needs.
    pub(crate) fn last_label_orbit(&self) -> u16 {
        self.last_orbit
    }
}

/// Ordered partition of the vertices: `order` lists vertices by position,
/// `cell_len[p]` is the cell length at each cell start position (0 inside
/// a cell).
#[derive(Clone, Copy)]
struct Partition {
    order: [u8; MAX_VERTICES],
    cell_len: [u8; MAX_VERTICES],
    n: u8,
}

impl Partition {
    fn unit(n: usize) -> Partition {
        let mut order = [0u8; MAX_VERTICES];
        for (v, o) in order.iter_mut().enumerate().take(n) {
            *o = v as u8;
        }
        let mut cell_len = [0u8; MAX_VERTICES];
        if n > 0 {
            cell_len[0] = n as u8;
        }
        Partition { order, cell_len, n: n as u8 }
    }

    fn n(&self) -> usize {
        self.n as usize
    }

    fn cell_mask(&self, start: usize) -> u16 {
        let mut m = 0u16;
        for p in start..start + self.cell_len[start] as usize {
            m |= 1 << self.order[p];
        }
        m
    }

    /// Number of leading singleton cells.
    fn discrete_prefix(&self) -> usize {
        let mut p = 0;
        while p < self.n() && self.cell_len[p] == 1 {
            p += 1;
        }
        p
    }

    /// First position whose cell has at least two vertices, if any.
    fn first_nonsingleton(&self) -> Option<usize> {
        let mut p = 0;
        while p < self.n() {
            let len = self.cell_len[p] as usize;
            if len >= 2 {
                return Some(p);
            }
            p += len;
        }
        None
    }

    /// Splits every cell by neighbor counts into every other cell until no
    /// cell splits. Sub-cells are ordered by ascending count, which is a
    /// label-invariant choice.
    fn refine(&mut self, g: &Graph) {
        let n = self.n();
        'restart: loop {
            let mut s = 0;
            while s < n {
                let splitter = self.cell_mask(s);
                let s_len = self.cell_len[s] as usize;
                let mut c = 0;
                while c < n {
                    let c_len = self.cell_len[c] as usize;
                    if c_len >= 2 && self.split_cell(g, c, splitter) {
                        continue 'restart;
                    }
                    c += c_len;
                }
                s += s_len;
            }
            return;
        }
    }

    /// Splits the cell at `c` by `|N(v) & splitter|`. Returns true if it
    /// actually split.
    fn split_cell(&mut self, g: &Graph, c: usize, splitter: u16) -> bool {
        let len = self.cell_len[c] as usize;
        let mut keyed: [(u8, u8); MAX_VERTICES] = [(0, 0); MAX_VERTICES];
        let mut distinct = false;
        for i in 0..len {
            let v = self.order[c + i];
            let k = (g.neighbors(v as usize) & splitter).count_ones() as u8;
            keyed[i] = (k, v);
            if i > 0 && k != keyed[0].0 {
                distinct = true;
            }
        }
        if !distinct {
            return false;
        }
        keyed[..len].sort(); // ascending count; vertex id only breaks ties within a sub-cell
        let mut start = c;
        for i in 0..len {
            self.order[c + i] = keyed[i].1;
            self.cell_len[c + i] = 0;
            if i > 0 && keyed[i].0 != keyed[i - 1].0 {
                self.cell_len[start] = (c + i - start) as u8;
                start = c + i;
            }
        }
        self.cell_len[start] = (c + len - start) as u8;
        true
    }

    /// Moves `v` to the front of its cell at `c` as a singleton.
    fn individualize(&self, c: usize, v: u8) -> Partition {
        let mut q = *self;
        let len = q.cell_len[c] as usize;
        let pos = (c..c + len).find(|&p| q.order[p] == v).expect("v in cell");
        q.order.copy_within(c..pos, c + 1);
        q.order[c] = v;
        q.cell_len[c] = 1;
        q.cell_len[c + 1] = (len - 1) as u8;
        q
    }

    /// True when every non-singleton cell induces a complete or empty
    /// subgraph and all its vertices have the same neighbors outside the
    /// cell. Swapping vertices inside such a cell is then an automorphism,
    /// so every ordering below this node produces the same bit string.
    fn all_cells_homogeneous(&self, g: &Graph) -> bool {
        let n = self.n();
        let mut c = 0;
        while c < n {
            let len = self.cell_len[c] as usize;
            if len >= 2 {
                let m = self.cell_mask(c);
                let v0 = self.order[c] as usize;
                let inside0 = g.neighbors(v0) & m;
                let complete = inside0 == m & !(1 << v0);
                if !(complete || inside0 == 0) {
                    return false;
                }
                let outside0 = g.neighbors(v0) & !m;
                for p in c + 1..c + len {
                    let v = self.order[p] as usize;
                    if g.neighbors(v) & !m != outside0 {
                        return false;
                    }
                    let inside = g.neighbors(v) & m;
                    let want = if complete { m & !(1 << v) } else { 0 };
                    if inside != want {
                        return false;
                    }
                }
            }
            c += len;
        }
        true
    }

    /// Upper-triangle bits of the current order restricted to pairs among
    /// the first `upto` positions.
    fn triangle_bits(&self, g: &Graph, upto: usize) -> u128 {
        let mut bits = 0u128;
        let mut t = 0usize;
        for j in 1..upto {
            let vj = self.order[j] as usize;
            for i in 0..j {
                if g.has_edge(self.order[i] as usize, vj) {
                    bits |= 1 << t;
                }
                t += 1;
            }
        }
        bits
    }

    /// Product of factorials of cell sizes: how many leaf orderings the
    /// homogeneous shortcut stands for.
    fn ordering_weight(&self) -> u64 {
        let mut w = 1u64;
        let mut c = 0;
        while c < self.n() {
            let len = self.cell_len[c] as usize;
            w *= FACTORIALS[len];
            c += len;
        }
        w
    }

    /// Mask of the final cell's vertices (they receive the top labels).
    fn last_cell_mask(&self) -> u16 {
        let mut c = 0;
        let mut last = 0;
        while c < self.n() {
            last = c;
            c += self.cell_len[c] as usize;
        }
        self.cell_mask(last)
    }
}

const FACTORIALS: [u64; 17] = {
    let mut f = [1u64; 17];
    let mut i = 1;
    while i < 17 {
        f[i] = f[i - 1] * i as u64;
        i += 1;
    }
    f
};

/// Lexicographic comparison of triangle bit strings (bit 0 first).
fn lex_cmp(a: u128, b: u128) -> Ordering {
    if a == b {
        return Ordering::Equal;
    }
    let t = (a ^ b).trailing_zeros();
    if a >> t & 1 == 0 {
        Ordering::Less
    } else {
        Ordering::Greater
    }
}

struct SearchState<'a> {
    g: &'a Graph,
    best: Option<u128>,
    aut: u64,
    last_orbit: u16,
}

impl SearchState<'_> {
    fn offer(&mut self, bits: u128, weight: u64, last_cell: u16) {
        match self.best {
            None => {
                self.best = Some(bits);
                self.aut = weight;
                self.last_orbit = last_cell;
            }
            Some(b) => match lex_cmp(bits, b) {
                Ordering::Less => {
                    self.best = Some(bits);
                    self.aut = weight;
                    self.last_orbit = last_cell;
                }
                Ordering::Equal => {
                    self.aut += weight;
                    self.last_orbit |= last_cell;
                }
                Ordering::Greater => {}
            },
        }
    }

    fn search(&mut self, p: &Partition) {
        if let Some(best) = self.best {
            // Bits among the leading singleton cells are fixed for the whole
            // subtree; prune when they already exceed the best string.
            let pfx = p.discrete_prefix();
            let fixed = pfx * (pfx.saturating_sub(1)) / 2;
            if fixed > 0 {
                let mask = if fixed >= 128 { u128::MAX } else { (1u128 << fixed) - 1 };
                if lex_cmp(p.triangle_bits(self.g, pfx), best & mask) == Ordering::Greater {
                    return;
                }
            }
        }
        if p.all_cells_homogeneous(self.g) {
            let bits = p.triangle_bits(self.g, p.n());
            self.offer(bits, p.ordering_weight(), p.last_cell_mask());
            return;
        }
        let c = p.first_nonsingleton().expect("non-homogeneous partition has a splittable cell");
        let len = p.cell_len[c] as usize;
        for i in 0..len {
            let v = p.order[c + i];
            let mut q = p.individualize(c, v);
            q.refine(self.g);
            self.search(&q);
        }
    }
}

/// Computes the canonical form of `g`: label-invariant bit string, the
/// automorphism group order, and (internally) the orbit of vertices that
/// can take the top canonical label.
pub fn canonical_form(g: &Graph) -> CanonicalForm {
    let n = g.n();
    if n == 0 {
        return CanonicalForm { n: 0, bits: 0, aut_count: 1, last_orbit: 0 };
    }
    let mut p = Partition::unit(n);
    p.refine(g);
    let mut state = SearchState { g, best: None, aut: 0, last_orbit: 0 };
    state.search(&p);
    CanonicalForm {
        n: n as u8,
        bits: state.best.expect("at least one leaf"),
        aut_count: state.aut,
        last_orbit: state.last_orbit,
    }
}

/// True iff the two graphs are isomorphic.
pub fn is_isomorphic(a: &Graph, b: &Graph) -> bool {
    a.n() == b.n()
        && a.edge_count() == b.edge_count()
        && canonical_form(a).bits == canonical_form(b).bits
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::new(n, &edges).unwrap()
    }

    fn clique(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        Graph::new(n, &edges).unwrap()
    }

    fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::new(n, &edges).unwrap()
    }

    #[test]
    fn relabeled_c4_has_identical_bytes() {
        let c4 = cycle(4);
        // vertices listed in order 0,2,1,3
        let other = Graph::new(4, &[(0, 2), (2, 1), (1, 3), (3, 0)]).unwrap();
        assert_eq!(canonical_form(&c4).bytes(), canonical_form(&other).bytes());
        assert!(is_isomorphic(&c4, &other));
    }

    #[test]
    fn known_automorphism_counts() {
        assert_eq!(canonical_form(&clique(3)).aut_count(), 6);
        assert_eq!(canonical_form(&path(4)).aut_count(), 2);
        assert_eq!(canonical_form(&cycle(4)).aut_count(), 8);
        assert_eq!(canonical_form(&cycle(5)).aut_count(), 10);
        assert_eq!(canonical_form(&Graph::new(4, &[]).unwrap()).aut_count(), 24);
        assert_eq!(canonical_form(&Graph::new(0, &[]).unwrap()).aut_count(), 1);
        // star on 9 vertices: 8! leaf orderings collapse into the shortcut
        let star: Vec<_> = (1..9).map(|v| (0, v)).collect();
        let s8 = Graph::new(9, &star).unwrap();
        assert_eq!(canonical_form(&s8).aut_count(), 40320);
    }

    #[test]
    fn path_vs_star_not_isomorphic() {
        let k13 = Graph::new(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert!(!is_isomorphic(&path(4), &k13));
    }

    #[test]
    fn matching_complement_of_two_edges_is_c4() {
        // K4 minus the perfect matching {0-1, 2-3}
        let g = Graph::new(4, &[(0, 2), (0, 3), (1, 2), (1, 3)]).unwrap();
        assert!(is_isomorphic(&g, &cycle(4)));
    }

    /// Direct oracle: |Aut(G)| by checking all n! permutations.
    fn aut_brute(g: &Graph) -> u64 {
        let n = g.n();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut count = 0u64;
        permute(&mut perm, 0, &mut |p| {
            if &g.permuted(p) == g {
                count += 1;
            }
        });
        count
    }

    fn permute(perm: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
        if k == perm.len() {
            f(perm);
            return;
        }
        for i in k..perm.len() {
            perm.swap(k, i);
            permute(perm, k + 1, f);
            perm.swap(k, i);
        }
    }

    #[test]
    fn aut_count_matches_permutation_brute_force() {
        // all labeled graphs on up to 5 vertices
        for n in 0..=5usize {
            let pairs: Vec<(usize, usize)> =
                (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
            for code in 0u32..1 << pairs.len() {
                let chosen: Vec<(usize, usize)> = pairs
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| code & (1 << i) != 0)
                    .map(|(_, &e)| e)
                    .collect();
                let g = Graph::new(n, &chosen).unwrap();
                assert_eq!(
                    canonical_form(&g).aut_count(),
                    aut_brute(&g),
                    "aut mismatch for {g:?}"
                );
            }
        }
    }

    #[test]
    fn canonical_invariant_under_permutation_on_6_vertex_samples() {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for code in (0u32..1 << 15).step_by(97) {
            let pairs: Vec<(usize, usize)> =
                (0..6).flat_map(|u| (u + 1..6).map(move |v| (u, v))).collect();
            let chosen: Vec<(usize, usize)> = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| code & (1 << i) != 0)
                .map(|(_, &e)| e)
                .collect();
            let g = Graph::new(6, &chosen).unwrap();
            let base = canonical_form(&g);
            let mut perm: Vec<usize> = (0..6).collect();
            for _ in 0..10 {
                perm.shuffle(&mut rng);
                let h = g.permuted(&perm);
                let cf = canonical_form(&h);
                assert_eq!(base.bits(), cf.bits());
                assert_eq!(base.aut_count(), cf.aut_count());
            }
        }
    }
}
