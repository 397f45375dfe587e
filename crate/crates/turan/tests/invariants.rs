//! Cross-module invariant sweeps that need the enumerator: label
//! invariance of the canonical form, the orbit-stabilizer accounting of
//! automorphism counts, and the walk-growth inequalities.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use turan::spectral::DEFAULT_TOL;
use turan::*;

fn build(s: &str) -> Graph {
    parse_family(s).unwrap().build().unwrap()
}

#[test]
fn canonical_form_is_label_invariant_up_to_7_vertices() {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
    for n in 1..=7usize {
        let classes = enumerate_classes(n, |_| true).unwrap();
        for g in classes {
            let base = canonical_form(&g);
            let mut perm: Vec<usize> = (0..n).collect();
            for _ in 0..50 {
                perm.shuffle(&mut rng);
                let cf = canonical_form(&g.permuted(&perm));
                assert_eq!(base, cf, "canonical form moved under relabeling of {g:?}");
                assert_eq!(base.aut_count(), cf.aut_count(), "aut moved on {g:?}");
                assert_eq!(base.bytes(), cf.bytes());
            }
        }
    }
}

#[test]
fn aut_times_labeled_copies_is_n_factorial() {
    // group all labeled graphs by canonical form; each class must satisfy
    // |Aut| * (distinct labeled copies) = n!
    for n in 0..=6usize {
        let factorial: u64 = (1..=n as u64).product();
        let pairs: Vec<(usize, usize)> =
            (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        let mut labeled: HashMap<u128, (u64, u64)> = HashMap::new();
        for code in 0u64..1 << pairs.len() {
            let chosen: Vec<(usize, usize)> = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| code & (1 << i) != 0)
                .map(|(_, &e)| e)
                .collect();
            let cf = canonical_form(&Graph::new(n, &chosen).unwrap());
            let entry = labeled.entry(cf.bits()).or_insert((cf.aut_count(), 0));
            entry.1 += 1;
        }
        for (bits, (aut, copies)) in labeled {
            assert_eq!(aut * copies, factorial.max(1), "n={n}, class {bits:x}");
        }
    }
}

#[test]
fn canonical_bytes_equal_iff_isomorphic_on_all_4_vertex_graphs() {
    let pairs: Vec<(usize, usize)> = (0..4).flat_map(|u| (u + 1..4).map(move |v| (u, v))).collect();
    let mut graphs = Vec::new();
    for code in 0u64..1 << 6 {
        let chosen: Vec<(usize, usize)> = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| code & (1 << i) != 0)
            .map(|(_, &e)| e)
            .collect();
        graphs.push(Graph::new(4, &chosen).unwrap());
    }
    for a in &graphs {
        for b in &graphs {
            let same_bytes = canonical_form(a).bytes() == canonical_form(b).bytes();
            assert_eq!(same_bytes, is_isomorphic(a, b));
        }
    }
}

#[test]
fn graph6_round_trips_canonical_output() {
    for n in 0..=6usize {
        for g in enumerate_classes(n, |_| true).unwrap() {
            let s = write_graph6(&g);
            assert_eq!(parse_graph6(&s).unwrap(), g);
            assert_eq!(write_graph6(&parse_graph6(&s).unwrap()), s);
        }
    }
}

#[test]
fn walks_bounded_by_spectral_radius_powers() {
    // walks(m) <= n * mu^m for every m; one extra step multiplies by at
    // most mu only from an even anchor (odd anchors oscillate on bipartite
    // graphs, e.g. the 3-vertex path at m = 3)
    for n in 1..=8usize {
        for g in enumerate_classes(n, |_| true).unwrap() {
            let mu = spectral_radius(&g, DEFAULT_TOL).unwrap().mu;
            let mut walks = Vec::new();
            for m in 0..=7usize {
                walks.push(walk_count(&g, m).to_f64().unwrap());
            }
            for (m, w) in walks.iter().enumerate() {
                assert!(
                    *w <= n as f64 * mu.powi(m as i32) * (1.0 + 10.0 * DEFAULT_TOL) + 1e-9,
                    "walks({m}) = {w} exceeds n*mu^{m} on {g:?}"
                );
            }
            for m in (0..=6).step_by(2) {
                assert!(
                    walks[m + 1] <= mu * walks[m] * (1.0 + 10.0 * DEFAULT_TOL) + 1e-9,
                    "walks({}) > mu * walks({m}) on {g:?}",
                    m + 1
                );
            }
        }
    }
}

#[test]
fn twice_paths_bounded_by_walks() {
    for n in 1..=7usize {
        for g in enumerate_classes(n, |_| true).unwrap() {
            for l in 3..=5usize {
                let walks = walk_count(&g, l - 1);
                let copies = if l <= n {
                    count_subgraph(&build(&format!("P{l}")), &g).copies
                } else {
                    0
                };
                assert!(BigUint::from(2 * copies) <= walks, "l={l}, {g:?}");
            }
        }
    }
}

#[test]
fn enumerator_streams_match_collected_classes() {
    let mut streamed = Vec::new();
    enumerate_graphs(5, |_| true, |g| streamed.push(*g)).unwrap();
    assert_eq!(streamed, enumerate_classes(5, |_| true).unwrap());
    assert_eq!(streamed.len() as u64, count_classes(5, |_| true).unwrap());
}
