//! Exact copy counting.
//!
//! The backtracking embedding kernel places pattern vertices in a
//! connectivity-respecting order and intersects candidate sets through the
//! host's neighbor masks; everything else in the crate that needs a count
//! goes through it. Copies are always embeddings divided by the pattern's
//! automorphism group order, and the division is asserted exact.

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;

use crate::canon::canonical_form;
use crate::families::ClassVector;
use crate::graph::{Edge, Graph};
use crate::{Error, Result};

/// Copy/embedding counts of one pattern in one host.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CountReport {
    /// Unlabeled copies: `embeddings / aut`.
    pub copies: u64,
    /// Injective edge-preserving maps from the pattern into the host.
    pub embeddings: u64,
    /// Order of the pattern's automorphism group.
    pub aut: u64,
}

/// Placement order for the pattern: start at a max-degree vertex, then
/// greedily take the vertex with the most already-placed neighbors
/// (ties to higher degree). Returns the order plus, per step, the mask of
/// earlier pattern vertices adjacent / non-adjacent to the placed one.
struct Plan {
    order: Vec<usize>,
    /// `nbr_prev[i]`: indices into `order[..i]` that are pattern neighbors
    /// of `order[i]`, as a bitmask over step indices.
    nbr_prev: Vec<u16>,
}

fn plan(h: &Graph) -> Plan {
    let m = h.n();
    let mut order = Vec::with_capacity(m);
    let mut placed = 0u16;
    for _ in 0..m {
        let best = (0..m)
            .filter(|&v| placed & (1 << v) == 0)
            .max_by_key(|&v| {
                let link = (h.neighbors(v) & placed).count_ones();
                (link, h.degree(v))
            })
            .unwrap();
        order.push(best);
        placed |= 1 << best;
    }
    let nbr_prev = order
        .iter()
        .enumerate()
        .map(|(i, &v)| {
            let mut mask = 0u16;
            for (j, &u) in order[..i].iter().enumerate() {
                if h.has_edge(u, v) {
                    mask |= 1 << j;
                }
            }
            mask
        })
        .collect();
    Plan { order, nbr_prev }
}

/// Core backtracking count. `images[i]` is the host vertex for step `i`;
/// pre-pinned steps are given in `pinned` (already validated). When
/// `induced`, non-edges of the pattern must map to non-edges. When
/// `stop_at_one`, returns at most 1.
fn embed_count(
    h: &Graph,
    g: &Graph,
    p: &Plan,
    pinned: &[Option<usize>],
    induced: bool,
    stop_at_one: bool,
) -> u64 {
    let m = h.n();
    if m > g.n() {
        return 0;
    }
    let mut images = vec![0usize; m];
    let mut used: u16 = 0;
    // seed used-mask with pins
    for &pv in pinned.iter().flatten() {
        used |= 1 << pv;
    }
    let mut count = 0u64;
    rec(h, g, p, pinned, induced, stop_at_one, 0, &mut images, used, &mut count);
    return count;

    #[allow(clippy::too_many_arguments)]
    fn rec(
        h: &Graph,
        g: &Graph,
        p: &Plan,
        pinned: &[Option<usize>],
        induced: bool,
        stop_at_one: bool,
        step: usize,
        images: &mut [usize],
        used: u16,
        count: &mut u64,
    ) {
        if step == images.len() {
            *count += 1;
            return;
        }
        if stop_at_one && *count > 0 {
            return;
        }
        let hv = p.order[step];
        let hdeg = h.degree(hv);
        // host candidates must be adjacent to the images of all placed
        // pattern neighbors
        let mut nbr_imgs = 0u16;
        let mut prev = p.nbr_prev[step];
        while prev != 0 {
            let j = prev.trailing_zeros() as usize;
            nbr_imgs |= 1 << images[j];
            prev &= prev - 1;
        }
        let placed_imgs = images[..step].iter().fold(0u16, |acc, &iv| acc | 1 << iv);
        // pins are pre-marked in `used`, so a pinned step offers exactly its
        // own vertex while unpinned steps skip every pin
        let mut cand = match pinned[step] {
            Some(pv) => 1u16 << pv,
            None => g.vertex_mask() & !used,
        };
        while cand != 0 {
            let gv = cand.trailing_zeros() as usize;
            cand &= cand - 1;
            if g.degree(gv) < hdeg {
                continue;
            }
            let gn = g.neighbors(gv);
            if gn & nbr_imgs != nbr_imgs {
                continue;
            }
            if induced && gn & (placed_imgs & !nbr_imgs) != 0 {
                continue;
            }
            images[step] = gv;
            rec(h, g, p, pinned, induced, stop_at_one, step + 1, images, used | 1 << gv, count);
            if stop_at_one && *count > 0 {
                return;
            }
        }
    }
}

fn embeddings_of(h: &Graph, g: &Graph, induced: bool) -> u64 {
    assert!(h.n() >= 1, "pattern must have at least one vertex");
    let p = plan(h);
    let pins = vec![None; h.n()];
    embed_count(h, g, &p, &pins, induced, false)
}

/// Counts copies of `h` in `g` as (not necessarily induced) subgraphs.
pub fn count_subgraph(h: &Graph, g: &Graph) -> CountReport {
    let embeddings = embeddings_of(h, g, false);
    let aut = canonical_form(h).aut_count();
    assert_eq!(embeddings % aut, 0, "embeddings must split into orbits of Aut(H)");
    CountReport { copies: embeddings / aut, embeddings, aut }
}

/// Counts induced copies of `h` in `g` (non-edges preserved too).
pub fn count_induced(h: &Graph, g: &Graph) -> u64 {
    let embeddings = embeddings_of(h, g, true);
    let aut = canonical_form(h).aut_count();
    assert_eq!(embeddings % aut, 0);
    embeddings / aut
}

/// True iff `g` contains a copy of `f` as a subgraph.
pub fn contains(f: &Graph, g: &Graph) -> bool {
    if f.n() == 0 {
        return true;
    }
    if f.n() > g.n() || f.edge_count() > g.edge_count() || f.max_degree() > g.max_degree() {
        return false;
    }
    // sorted-degree dominance: the i-th largest host degree must cover the
    // i-th largest pattern degree
    let mut fd: Vec<usize> = (0..f.n()).map(|v| f.degree(v)).collect();
    let mut gd: Vec<usize> = (0..g.n()).map(|v| g.degree(v)).collect();
    fd.sort_unstable_by(|a, b| b.cmp(a));
    gd.sort_unstable_by(|a, b| b.cmp(a));
    if fd.iter().zip(&gd).any(|(a, b)| a > b) {
        return false;
    }
    let p = plan(f);
    let pins = vec![None; f.n()];
    embed_count(f, g, &p, &pins, false, true) > 0
}

/// True iff `g` has a copy of `f` whose image includes host vertex `v`.
/// Cheaper than [`contains`] when the rest of `g` is known clean.
pub fn contains_through(f: &Graph, g: &Graph, v: usize) -> bool {
    if f.n() == 0 || f.n() > g.n() {
        return f.n() == 0;
    }
    let p = plan(f);
    let mut pins = vec![None; f.n()];
    for step in 0..f.n() {
        pins[step] = Some(v);
        if embed_count(f, g, &p, &pins, false, true) > 0 {
            return true;
        }
        pins[step] = None;
    }
    false
}

/// Number of copies of `h` whose edge set contains the host edge `e`.
pub fn copies_containing_edge(h: &Graph, g: &Graph, e: Edge) -> Result<u64> {
    if e.v() >= g.n() || !g.has_edge(e.u(), e.v()) {
        return Err(Error::NotAnEdge(e.u(), e.v()));
    }
    let p = plan(h);
    let step_of: Vec<usize> = {
        let mut s = vec![0; h.n()];
        for (i, &v) in p.order.iter().enumerate() {
            s[v] = i;
        }
        s
    };
    let mut embeddings = 0u64;
    // an injective map sends at most one pattern edge onto {a, b}, so
    // summing pinned counts over ordered pattern edges counts each
    // qualifying embedding exactly once
    for he in h.edges() {
        for (x, y) in [(he.u(), he.v()), (he.v(), he.u())] {
            let mut pins = vec![None; h.n()];
            pins[step_of[x]] = Some(e.u());
            pins[step_of[y]] = Some(e.v());
            embeddings += embed_count(h, g, &p, &pins, false, false);
        }
    }
    let aut = canonical_form(h).aut_count();
    assert_eq!(embeddings % aut, 0);
    Ok(embeddings / aut)
}

/// Number of host edges lying in at least one triangle.
pub fn edges_in_triangles(g: &Graph) -> usize {
    g.edges()
        .into_iter()
        .filter(|e| g.neighbors(e.u()) & g.neighbors(e.v()) != 0)
        .count()
}

/// Slack of the triple-count identity:
/// `|E|(n-2) - 2 * induced-P3 - 3 * triangles`. Nonnegative because any
/// three vertices span at most one triangle or one induced path, and zero
/// exactly when every triple does.
pub fn pair_count_slack(g: &Graph) -> u64 {
    let n = g.n() as i64;
    let p3 = Graph::new(3, &[(0, 1), (1, 2)]).unwrap();
    let k3 = Graph::new(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
    let pairs = g.edge_count() as i64 * (n - 2).max(0);
    let slack = pairs - 2 * count_induced(&p3, g) as i64 - 3 * count_subgraph(&k3, g).copies as i64;
    assert!(slack >= 0, "triple-count identity violated");
    slack as u64
}

/// Exact number of `K_r` copies in the Turán graph with `k - 1` parts on
/// `n` vertices: the elementary symmetric polynomial of degree `r` in the
/// class sizes. Requires `1 <= r <= k - 1`.
pub fn turan_clique_count(r: usize, k: usize, n: usize) -> Result<u128> {
    if r < 1 || r >= k {
        return Err(Error::CliqueRange { r, k });
    }
    let sizes = crate::families::turan_class_sizes(k - 1, n);
    // coefficient extraction from prod (1 + s_i x)
    let mut coeff = vec![0u128; r + 1];
    coeff[0] = 1;
    for &s in &sizes {
        for j in (1..=r).rev() {
            coeff[j] += coeff[j - 1] * s as u128;
        }
    }
    Ok(coeff[r])
}

/// Exact number of 4-vertex paths in the bipartite Turán graph `T_2(n)`:
/// every edge lies in `3 * floor(n/2 - 1) * ceil(n/2 - 1)` of them.
pub fn turan_p4_count(n: usize) -> u64 {
    if n < 4 {
        return 0;
    }
    let (n, fl, ce) = (n as u64, (n / 2 - 1) as u64, (n - n / 2 - 1) as u64);
    (n * n / 4) * fl * ce
}

/// Exact number of 4-cycles in `T_2(n)`:
/// `floor(n^2/4) * floor((n-2)^2/4) / 4`.
pub fn turan_c4_count(n: usize) -> u64 {
    if n < 4 {
        return 0;
    }
    let n = n as u64;
    let prod = (n * n / 4) * ((n - 2) * (n - 2) / 4);
    debug_assert_eq!(prod % 4, 0);
    prod / 4
}

/// Falling factorial `s (s-1) ... (s-j+1)` as a big integer.
fn falling(s: usize, j: usize) -> BigUint {
    let mut out = BigUint::from(1u32);
    for t in 0..j {
        if t >= s {
            return BigUint::zero();
        }
        out *= BigUint::from(s - t);
    }
    out
}

/// Embeddings of `h` into the complete multipartite graph with the given
/// part sizes, by pure arithmetic (no 16-vertex cap): sum over proper part
/// assignments of the product of falling factorials. Exposed for the
/// optimizer, which compares hosts sharing the same pattern.
pub fn multipartite_embeddings(h: &Graph, sizes: &[usize]) -> BigUint {
    let m = h.n();
    assert!(m >= 1, "pattern must have at least one vertex");
    let full: u32 = (1u32 << m) - 1;
    // independence table over pattern-vertex subsets
    let mut independent = vec![false; 1 << m];
    independent[0] = true;
    for mask in 1u32..=full {
        let v = mask.trailing_zeros() as usize;
        let rest = mask & (mask - 1);
        independent[mask as usize] =
            independent[rest as usize] && (h.neighbors(v) as u32) & rest == 0;
    }
    // f[t] = weighted ways to assign the pattern vertices in t to the parts
    // processed so far, each part an independent set
    let mut f = vec![BigUint::zero(); 1 << m];
    f[0] = BigUint::from(1u32);
    for &s in sizes {
        let mut fall = Vec::with_capacity(m + 1);
        for j in 0..=m {
            fall.push(falling(s, j));
        }
        let mut next = vec![BigUint::zero(); 1 << m];
        for t in 0u32..=full {
            if f[t as usize].is_zero() {
                continue;
            }
            // enumerate independent subsets u of the complement of t
            let comp = full & !t;
            let mut u = comp;
            loop {
                if independent[u as usize] {
                    let add = &f[t as usize] * &fall[u.count_ones() as usize];
                    next[(t | u) as usize] += add;
                }
                if u == 0 {
                    break;
                }
                u = (u - 1) & comp;
            }
        }
        f = next;
    }
    f[full as usize].clone()
}

/// Copies of `h` in the complete multipartite graph on `cv` — exact big
/// integer arithmetic, class sizes unrestricted. Matches
/// [`count_subgraph`] on buildable hosts.
pub fn multipartite_count(h: &Graph, cv: &ClassVector) -> BigUint {
    let emb = multipartite_embeddings(h, cv.sizes());
    let aut = BigUint::from(canonical_form(h).aut_count());
    assert!((&emb % &aut).is_zero(), "embeddings must split into orbits of Aut(H)");
    emb / aut
}

/// Signed difference helper used by the optimizer's vertex-move reports.
pub(crate) fn big_diff(after: &BigUint, before: &BigUint) -> BigInt {
    BigInt::from(after.clone()) - BigInt::from(before.clone())
}
