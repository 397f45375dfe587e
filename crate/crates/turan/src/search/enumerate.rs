//! One representative per isomorphism class, by canonical augmentation.
//!
//! Each parent (a canonical representative on `k` vertices) is extended by
//! a new vertex with every neighbor mask. A child survives only if
//!
//! * the pruner keeps it (valid subtree pruning for hereditary predicates:
//!   a pruned graph's extensions all contain it as a subgraph),
//! * the new vertex lies in the orbit that receives the top canonical
//!   label — the "remove the canonically last vertex" parent rule, so the
//!   child is built from its one canonical parent, and
//! * its canonical form was not already produced from this parent (two
//!   neighbor masks equivalent under an automorphism of the parent build
//!   the same child).
//!
//! Together these yield every class exactly once. Work splits at depth two
//! of the augmentation tree; subtree results merge with an associative,
//! commutative fold, so outputs are identical for any worker count.

use std::collections::HashSet;

use rayon::prelude::*;

use crate::canon::canonical_form;
use crate::graph::Graph;
use crate::{Error, Result};

/// Exhaustive enumeration is capped here; beyond it the class counts
/// explode past desk scale.
pub const MAX_SEARCH_VERTICES: usize = 10;

/// Vertex count at which the augmentation tree is split into parallel
/// subtrees.
const SPLIT_LEVEL: usize = 3;

fn check_capacity(n: usize) -> Result<()> {
    if n > MAX_SEARCH_VERTICES {
        return Err(Error::SearchCapacity { n, cap: MAX_SEARCH_VERTICES });
    }
    Ok(())
}

/// Children of `g` surviving the keep predicate, the parent rule and
/// same-parent deduplication, as canonical representatives.
fn children(g: &Graph, keep: &(impl Fn(&Graph, usize) -> bool + ?Sized)) -> Vec<Graph> {
    let k = g.n();
    let mut seen: HashSet<u128> = HashSet::new();
    let mut out = Vec::new();
    for nbrs in 0..(1u32 << k) {
        let child = g.with_appended_vertex(nbrs as u16).expect("capacity checked by caller");
        if !keep(&child, k) {
            continue;
        }
        let cf = canonical_form(&child);
        if cf.last_label_orbit() & (1 << k) == 0 {
            continue;
        }
        if seen.insert(cf.bits()) {
            out.push(cf.graph());
        }
    }
    out
}

fn dfs<A>(
    g: &Graph,
    n: usize,
    keep: &(impl Fn(&Graph, usize) -> bool + ?Sized),
    acc: &mut A,
    leaf: &(impl Fn(&mut A, &Graph) + ?Sized),
) {
    if g.n() == n {
        leaf(acc, g);
        return;
    }
    for child in children(g, keep) {
        dfs(&child, n, keep, acc, leaf);
    }
}

/// Sequential stream over all isomorphism classes of `n`-vertex graphs
/// passing `pruner`, one canonical representative each.
///
/// Subtree pruning is only exhaustive for hereditary pruners (preserved
/// under taking subgraphs), such as freeness from a fixed forbidden graph.
pub fn enumerate_graphs(
    n: usize,
    pruner: impl Fn(&Graph) -> bool,
    visit: impl FnMut(&Graph),
) -> Result<()> {
    check_capacity(n)?;
    let root = Graph::empty(n.min(1))?;
    let mut visit = visit;
    if !pruner(&root) {
        return Ok(());
    }
    if n == 0 {
        visit(&root);
        return Ok(());
    }
    let keep = |g: &Graph, _v: usize| pruner(g);
    // the accumulator carries the FnMut visitor through the Fn-typed walker
    dfs(&root, n, &keep, &mut visit, &|vis, g| vis(g));
    Ok(())
}

/// Collects the classes of [`enumerate_graphs`].
pub fn enumerate_classes(n: usize, pruner: impl Fn(&Graph) -> bool) -> Result<Vec<Graph>> {
    let mut out = Vec::new();
    enumerate_graphs(n, pruner, |g| out.push(*g))?;
    Ok(out)
}

/// Number of isomorphism classes passing the pruner.
pub fn count_classes(n: usize, pruner: impl Fn(&Graph) -> bool) -> Result<u64> {
    let mut count = 0u64;
    enumerate_graphs(n, pruner, |_| count += 1)?;
    Ok(count)
}

/// Parallel enumeration folding every surviving `n`-vertex class into an
/// accumulator. `keep(child, new_vertex)` decides survival (the new vertex
/// index lets forbidden-subgraph checks search only through it). The merge
/// must be associative and commutative; results are then deterministic for
/// any worker count.
pub(crate) fn enumerate_fold<A, K, L, M>(n: usize, keep: K, leaf: L, zero: A, merge: M) -> Result<A>
where
    A: Clone + Send + Sync,
    K: Fn(&Graph, usize) -> bool + Sync,
    L: Fn(&mut A, &Graph) + Sync,
    M: Fn(A, A) -> A + Send + Sync,
{
    check_capacity(n)?;
    let root = Graph::empty(n.min(1))?;
    let mut acc = zero.clone();
    if !keep(&root, 0) {
        return Ok(acc);
    }
    if n == 0 {
        leaf(&mut acc, &root);
        return Ok(acc);
    }
    // sequential run-up to the split level
    let split = SPLIT_LEVEL.min(n);
    let mut seeds = vec![root];
    while seeds[0].n() < split {
        seeds = seeds.iter().flat_map(|g| children(g, &keep)).collect();
        if seeds.is_empty() {
            return Ok(acc);
        }
    }
    if seeds[0].n() == n {
        for g in &seeds {
            leaf(&mut acc, g);
        }
        return Ok(acc);
    }
    let folded = seeds
        .par_iter()
        .map(|seed| {
            let mut sub = zero.clone();
            dfs(seed, n, &keep, &mut sub, &leaf);
            sub
        })
        .reduce(|| zero.clone(), &merge);
    Ok(merge(acc, folded))
}
