//! Exact optimization of copy counts over complete multipartite hosts:
//! which class vector on `n` vertices with `r` parts holds the most copies
//! of a pattern, and from which part count onward the balanced vector wins.

use num_bigint::{BigInt, BigUint};

use crate::chromatic::chromatic_number;
use crate::count::{big_diff, multipartite_count, multipartite_embeddings};
use crate::families::{turan_class_sizes, ClassVector};
use crate::graph::Graph;
use crate::{Error, Result};

/// Probe totals and part counts are capped well inside exact-arithmetic
/// comfort; the composition scan is exponential in spirit, not in practice.
pub const MAX_OPTIMIZE_TOTAL: usize = 40;
pub const MAX_K: usize = 12;

/// Result of the exhaustive composition scan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultipartiteOptimum {
    /// All optimal nonincreasing class vectors, in descending
    /// lexicographic order. No tie-breaking is hidden.
    pub optima: Vec<ClassVector>,
    /// The maximum number of copies.
    pub value: BigUint,
    /// Whether the balanced (Turán) vector attains the maximum.
    pub balanced_is_optimal: bool,
}

impl MultipartiteOptimum {
    /// First optimal vector in the reported order.
    pub fn best(&self) -> &ClassVector {
        &self.optima[0]
    }
}

/// Nonincreasing compositions of `n` into exactly `r` positive parts,
/// descending lexicographic order.
fn partitions_exact(n: usize, r: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, r: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if r == 1 {
            if n <= max && n >= 1 {
                cur.push(n);
                out.push(cur.clone());
                cur.pop();
            }
            return;
        }
        let hi = max.min(n.saturating_sub(r - 1));
        let lo = n.div_ceil(r);
        for first in (lo..=hi).rev() {
            cur.push(first);
            rec(n - first, r - 1, first, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if r >= 1 && n >= r {
        rec(n, r, n, &mut Vec::new(), &mut out);
    }
    out
}

/// Exact argmax of copies of `h` over all complete `r`-partite hosts on
/// `n` vertices, by scanning every nonincreasing composition.
///
/// Errors when `r < chi(h)` (every host would hold zero copies) and on
/// range violations.
pub fn optimize_multipartite(h: &Graph, r: usize, n: usize) -> Result<MultipartiteOptimum> {
    if h.n() == 0 {
        return Err(Error::Invalid("pattern must have at least one vertex".into()));
    }
    if n > MAX_OPTIMIZE_TOTAL {
        return Err(Error::Invalid(format!(
            "composition scan capped at {MAX_OPTIMIZE_TOTAL} vertices, got {n}"
        )));
    }
    if r > n {
        return Err(Error::PartsExceedVertices { r, n });
    }
    let chi = chromatic_number(h);
    if r < chi {
        return Err(Error::TooFewParts { need: chi, got: r });
    }
    // compare embeddings: the Aut(H) factor is shared by all hosts
    let mut best: Option<BigUint> = None;
    let mut optima: Vec<Vec<usize>> = Vec::new();
    for sizes in partitions_exact(n, r) {
        let emb = multipartite_embeddings(h, &sizes);
        match &best {
            Some(b) if *b > emb => {}
            Some(b) if *b == emb => optima.push(sizes),
            _ => {
                best = Some(emb);
                optima = vec![sizes];
            }
        }
    }
    let balanced = {
        let mut t = turan_class_sizes(r, n);
        t.sort_unstable_by(|a, b| b.cmp(a));
        t
    };
    let balanced_is_optimal = optima.contains(&balanced);
    let optima: Result<Vec<ClassVector>> = optima.into_iter().map(ClassVector::new).collect();
    let optima = optima?;
    let value = multipartite_count(h, &optima[0]);
    Ok(MultipartiteOptimum { optima, value, balanced_is_optimal })
}

/// Change in the number of copies of `h` when one vertex moves from part
/// `from` to part `to` of the class vector. Emptying a part is allowed;
/// the emptied part simply disappears from the host.
pub fn vertex_move_delta(h: &Graph, cv: &ClassVector, from: usize, to: usize) -> Result<BigInt> {
    let r = cv.r();
    if from >= r {
        return Err(Error::InvalidPart(from));
    }
    if to >= r {
        return Err(Error::InvalidPart(to));
    }
    let before = multipartite_count(h, cv);
    if from == to {
        return Ok(BigInt::from(0));
    }
    let mut sizes = cv.sizes().to_vec();
    sizes[from] -= 1;
    sizes[to] += 1;
    sizes.retain(|&s| s > 0);
    let after = multipartite_count(h, &ClassVector::new(sizes)?);
    Ok(big_diff(&after, &before))
}

/// Smallest `k <= k_max` such that for every `k' in [k, k_max]` and every
/// probe total `n`, the balanced vector is optimal for `h` over complete
/// `(k'-1)`-partite hosts. Returns `None` when even `k_max` fails.
///
/// This is empirical evidence over the probed totals, not a proof.
pub fn find_k0(h: &Graph, k_max: usize, probes: &[usize]) -> Result<Option<usize>> {
    if k_max < 2 || k_max > MAX_K {
        return Err(Error::Invalid(format!("k_max must be in 2..={MAX_K}, got {k_max}")));
    }
    if probes.is_empty() {
        return Err(Error::Invalid("need at least one probe total".into()));
    }
    if let Some(&bad) = probes.iter().find(|&&p| p > MAX_OPTIMIZE_TOTAL) {
        return Err(Error::Invalid(format!(
            "probe totals capped at {MAX_OPTIMIZE_TOTAL}, got {bad}"
        )));
    }
    let balanced_everywhere = |k: usize| -> bool {
        probes.iter().all(|&n| {
            k - 1 <= n
                && matches!(
                    optimize_multipartite(h, k - 1, n),
                    Ok(opt) if opt.balanced_is_optimal
                )
        })
    };
    let mut k0 = None;
    for k in (2..=k_max).rev() {
        if balanced_everywhere(k) {
            k0 = Some(k);
        } else {
            break;
        }
    }
    Ok(k0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::count::count_subgraph;
    use crate::families::{complete_multipartite, parse_family};

    fn build(s: &str) -> Graph {
        parse_family(s).unwrap().build().unwrap()
    }

    fn cv(sizes: &[usize]) -> ClassVector {
        ClassVector::new(sizes.to_vec()).unwrap()
    }

    #[test]
    fn partitions_cover_all_compositions() {
        assert_eq!(
            partitions_exact(8, 2),
            vec![vec![7, 1], vec![6, 2], vec![5, 3], vec![4, 4]]
        );
        assert_eq!(partitions_exact(3, 3), vec![vec![1, 1, 1]]);
        assert_eq!(partitions_exact(2, 3), Vec::<Vec<usize>>::new());
    }

    #[test]
    fn four_cycle_prefers_balance() {
        let opt = optimize_multipartite(&build("C4"), 2, 8).unwrap();
        assert_eq!(opt.optima, vec![cv(&[4, 4])]);
        assert!(opt.balanced_is_optimal);
        assert_eq!(opt.value, BigUint::from(36u32), "C(4,2)^2");
    }

    #[test]
    fn star_prefers_imbalance() {
        let opt = optimize_multipartite(&build("S3"), 2, 8).unwrap();
        assert_eq!(opt.best(), &cv(&[6, 2]));
        assert_eq!(opt.value, BigUint::from(40u32));
        assert!(!opt.balanced_is_optimal);
    }

    #[test]
    fn triangles_prefer_balance() {
        let opt = optimize_multipartite(&build("K3"), 3, 9).unwrap();
        assert_eq!(opt.optima, vec![cv(&[3, 3, 3])]);
        assert!(opt.balanced_is_optimal);
    }

    #[test]
    fn too_few_parts_is_an_error() {
        assert!(matches!(
            optimize_multipartite(&build("K3"), 2, 8),
            Err(Error::TooFewParts { need: 3, got: 2 })
        ));
    }

    #[test]
    fn optimum_agrees_with_kernel_counts() {
        // cross-check against direct counting on buildable hosts
        for (h, r) in [("C4", 2), ("K3", 3), ("S3", 2), ("P4", 2)] {
            let h = build(h);
            for n in r..=9usize {
                let opt = optimize_multipartite(&h, r, n).unwrap();
                let brute = partitions_exact(n, r)
                    .into_iter()
                    .map(|sizes| {
                        let host = complete_multipartite(&cv(&sizes)).unwrap();
                        count_subgraph(&h, &host).copies
                    })
                    .max()
                    .unwrap();
                assert_eq!(opt.value, BigUint::from(brute));
            }
        }
    }

    #[test]
    fn move_deltas() {
        let d = vertex_move_delta(&build("C4"), &cv(&[6, 2]), 0, 1).unwrap();
        assert_eq!(d, BigInt::from(15));
        let d = vertex_move_delta(&build("K3"), &cv(&[3, 3, 3]), 0, 1).unwrap();
        assert_eq!(d, BigInt::from(24 - 27));
        // forward and backward moves cancel
        let fwd = vertex_move_delta(&build("P4"), &cv(&[5, 3]), 0, 1).unwrap();
        let back = vertex_move_delta(&build("P4"), &cv(&[4, 4]), 1, 0).unwrap();
        assert_eq!(fwd + back, BigInt::from(0));
        assert!(vertex_move_delta(&build("P4"), &cv(&[4, 4]), 2, 0).is_err());
    }

    #[test]
    fn emptying_a_part_is_recorded_as_part_loss() {
        // (1,5) -> (6): triangles drop to zero
        let d = vertex_move_delta(&build("K2"), &cv(&[1, 5]), 0, 1).unwrap();
        assert_eq!(d, BigInt::from(-5), "5 cross edges disappear");
    }

    #[test]
    fn k0_evidence_values() {
        assert_eq!(find_k0(&build("C4"), 8, &[12, 24]).unwrap(), Some(3));
        assert_eq!(find_k0(&build("K3"), 8, &[12, 24]).unwrap(), Some(4));
        let s3 = find_k0(&build("S3"), 8, &[12, 24]).unwrap();
        assert!(s3.is_some() && s3.unwrap() > 3, "unbalanced optimum at two parts");
        assert!(find_k0(&build("C4"), 13, &[12]).is_err());
        assert!(find_k0(&build("C4"), 8, &[]).is_err());
    }
}
