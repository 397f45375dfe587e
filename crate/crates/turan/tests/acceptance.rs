//! Acceptance suite: one test per exit criterion, each printing a
//! `criterion N: PASS` line on success (visible with `--nocapture`).
//!
//! Hard assertions are exact unless a tolerance is stated inline. Claims
//! the underlying theory makes only "for n large enough" are reported per
//! n and never asserted as equalities; the direction-safe inequalities
//! (lower bounds from explicit constructions) are asserted.

use std::time::Instant;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use turan::spectral::DEFAULT_TOL;
use turan::*;

fn build(s: &str) -> Graph {
    parse_family(s).unwrap().build().unwrap()
}

fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        for first in (1..=max.min(n)).rev() {
            cur.push(first);
            rec(n - first, first, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// Criterion 1: max triangle count in K4-free graphs equals the closed
/// form over the three-part Turán graph classes for n = 4..8; under five
/// minutes end to end.
#[test]
fn criterion_1_triangles_without_k4_match_turan_closed_form() {
    let started = Instant::now();
    let (h, f) = (build("K3"), build("K4"));
    let expected = [2u64, 4, 8, 12, 18];
    for (i, n) in (4..=8usize).enumerate() {
        let rec = ex_generalized(n, &h, &f).unwrap();
        assert_eq!(rec.value, expected[i], "n={n}");
        assert_eq!(rec.value as u128, turan_clique_count(3, 4, n).unwrap(), "n={n}");
    }
    let elapsed = started.elapsed();
    assert!(elapsed.as_secs() < 300, "took {elapsed:?}");
    println!("criterion 1: PASS (exact clique maxima at n=4..8, {elapsed:.2?})");
}

/// Criterion 2: max edge count in triangle-free graphs is floor(n^2/4)
/// with the bipartite Turán graph as unique witness, n = 4..9.
#[test]
fn criterion_2_max_edges_triangle_free_unique_turan_witness() {
    let (h, f) = (build("K2"), build("K3"));
    for n in 4..=9usize {
        let rec = ex_generalized(n, &h, &f).unwrap();
        assert_eq!(rec.value as usize, n * n / 4, "n={n}");
        assert!(rec.unique_extremal, "n={n}");
        assert!(rec.turan_is_extremal, "n={n}");
        let witness = parse_graph6(&rec.witnesses[0]).unwrap();
        assert!(is_isomorphic(&witness, &turan(2, n).unwrap()), "n={n}");
    }
    println!("criterion 2: PASS (unique bipartite maxima at n=4..9)");
}

/// Criterion 3: max edges avoiding the two-triangle fan. Hard: the value
/// is at least floor(n^2/4) + 1, witnessed by the Turán graph plus one
/// intra-class edge, which must itself verify fan-free. Equality per n is
/// reported, not asserted.
#[test]
fn criterion_3_fan_free_edge_maxima_bounded_by_construction() {
    let (h, f) = (build("K2"), build("F2"));
    for n in 5..=9usize {
        // T_2(n) plus one edge inside the first class
        let t = turan(2, n).unwrap();
        let mut edges: Vec<(usize, usize)> =
            t.edges().iter().map(|e| (e.u(), e.v())).collect();
        edges.push((0, 1));
        let construction = Graph::new(n, &edges).unwrap();
        assert!(!contains(&f, &construction), "construction must be fan-free at n={n}");
        let lower = count_subgraph(&h, &construction).copies;
        assert_eq!(lower as usize, n * n / 4 + 1);

        let rec = ex_generalized(n, &h, &f).unwrap();
        assert!(rec.value >= lower, "n={n}: oracle {} below construction {lower}", rec.value);
        println!(
            "  fan-free edges n={n}: oracle={} construction={lower} equal={}",
            rec.value,
            rec.value == lower
        );
    }
    println!("criterion 3: PASS (construction lower bound holds at n=5..9)");
}

fn goodness_criterion(
    label: &str,
    pairs: &[(&str, &str, fn(usize) -> u64)],
    n_lo: usize,
    n_hi: usize,
) {
    for (h_s, f_s, turan_count) in pairs {
        let (h, f) = (build(h_s), build(f_s));
        let verdict = check_turan_good(&h, &f, n_lo, n_hi).unwrap();
        for row in &verdict.rows {
            assert_eq!(
                row.turan_value,
                turan_count(row.n),
                "{h_s} vs {f_s}: closed form mismatch at n={}",
                row.n
            );
            // hard: the Turán graph is F-free, so the oracle dominates it
            assert!(
                row.value >= row.turan_value,
                "{h_s} vs {f_s}: oracle below Turán count at n={}",
                row.n
            );
        }
        println!(
            "  {h_s} vs {f_s}: values={:?} threshold={:?}",
            verdict.rows.iter().map(|r| (r.n, r.value, r.equal)).collect::<Vec<_>>(),
            verdict.threshold
        );
    }
    println!("{label}: PASS (hard lower bounds hold; thresholds reported)");
}

/// Criterion 4: goodness scans against the book B2 for the 4-path and the
/// 4-cycle, n = 5..8.
#[test]
fn criterion_4_book_goodness_scans() {
    goodness_criterion(
        "criterion 4",
        &[("P4", "B2", turan_p4_count), ("C4", "B2", turan_c4_count)],
        5,
        8,
    );
}

/// Criterion 5: the same scans against the 5-cycle.
#[test]
fn criterion_5_five_cycle_goodness_scans() {
    goodness_criterion(
        "criterion 5",
        &[("P4", "C5", turan_p4_count), ("C4", "C5", turan_c4_count)],
        5,
        8,
    );
}

/// Criterion 6: the 4-cycle against the two-triangle fan.
#[test]
fn criterion_6_fan_goodness_scan() {
    goodness_criterion("criterion 6", &[("C4", "F2", turan_c4_count)], 5, 8);
}

/// Criterion 7: identity suite. The triple-count slack vanishes on every
/// complete multipartite graph with at most 9 vertices and is positive on
/// the triangle plus isolated vertex; the path-to-cycle inequality
/// 2k * N(C_2k) <= N(P_2k) holds for all graphs on at most 8 vertices with
/// equality on complete bipartite hosts. Exact.
#[test]
fn criterion_7_identity_suite() {
    for n in 3..=9usize {
        for sizes in partitions(n) {
            let cv = ClassVector::new(sizes).unwrap();
            let host = complete_multipartite(&cv).unwrap();
            assert_eq!(pair_count_slack(&host), 0, "slack nonzero on {cv}");
        }
    }
    let k3_k1 = build("K3").disjoint_union(&Graph::new(1, &[]).unwrap()).unwrap();
    assert!(pair_count_slack(&k3_k1) > 0);

    let (p4, c4, p6, c6) = (build("P4"), build("C4"), build("P6"), build("C6"));
    for n in 1..=8usize {
        for g in enumerate_classes(n, |_| true).unwrap() {
            for (k, p, c) in [(2u64, &p4, &c4), (3, &p6, &c6)] {
                let cycles =
                    if c.n() <= n { count_subgraph(c, &g).copies } else { 0 };
                let paths = if p.n() <= n { count_subgraph(p, &g).copies } else { 0 };
                assert!(2 * k * cycles <= paths, "k={k} on {g:?}");
            }
        }
    }
    // equality on complete bipartite hosts
    for a in 1..=7usize {
        for b in a..=7 {
            if a + b > 8 {
                continue;
            }
            let host = complete_multipartite(&ClassVector::new(vec![b, a]).unwrap()).unwrap();
            for (k, p, c) in [(2u64, &p4, &c4), (3, &p6, &c6)] {
                let cycles =
                    if c.n() <= a + b { count_subgraph(c, &host).copies } else { 0 };
                let paths =
                    if p.n() <= a + b { count_subgraph(p, &host).copies } else { 0 };
                assert_eq!(2 * k * cycles, paths, "a={a} b={b} k={k}");
            }
        }
    }
    println!("criterion 7: PASS (identity suite exact on n<=9 / n<=8)");
}

/// Criterion 8: spectral suite. For every graph on at most 7 vertices and
/// l in {3,4,5}: 2 N(P_l) <= walks(l-1) <= n * mu^(l-1) * (1 + 1e-6); mu
/// matches the closed forms for complete, complete bipartite and cycle
/// graphs within 1e-8.
#[test]
fn criterion_8_spectral_suite() {
    for n in 1..=7usize {
        for g in enumerate_classes(n, |_| true).unwrap() {
            let mu = spectral_radius(&g, DEFAULT_TOL).unwrap().mu;
            for l in 3..=5usize {
                let walks = walk_count(&g, l - 1);
                let copies = if l <= n {
                    count_subgraph(&build(&format!("P{l}")), &g).copies
                } else {
                    0
                };
                assert!(BigUint::from(2 * copies) <= walks, "l={l} on {g:?}");
                let walks_f = walks.to_f64().unwrap();
                let bound = n as f64 * mu.powi(l as i32 - 1);
                assert!(
                    walks_f <= bound * (1.0 + 1e-6) + f64::EPSILON,
                    "l={l} on {g:?}: walks {walks_f} > bound {bound}"
                );
                assert!(check_path_bound(&g, l).unwrap(), "l={l} on {g:?}");
            }
        }
    }
    // closed forms within 1e-8
    for n in 1..=16usize {
        let mu = spectral_radius(&build(&format!("K{n}")), DEFAULT_TOL).unwrap().mu;
        assert!((mu - (n as f64 - 1.0)).abs() < 1e-8, "complete graph n={n}");
    }
    for n in 3..=16usize {
        let mu = spectral_radius(&build(&format!("C{n}")), DEFAULT_TOL).unwrap().mu;
        assert!((mu - 2.0).abs() < 1e-8, "cycle n={n}");
    }
    for a in 1..=8usize {
        for b in a..=8 {
            if a + b > 16 {
                continue;
            }
            let host = complete_multipartite(&ClassVector::new(vec![b, a]).unwrap()).unwrap();
            let mu = spectral_radius(&host, DEFAULT_TOL).unwrap().mu;
            assert!(
                (mu - (a as f64 * b as f64).sqrt()).abs() < 1e-8,
                "complete bipartite {a},{b}"
            );
        }
    }
    println!("criterion 8: PASS (walk/spectral chain on n<=7; closed forms to 1e-8)");
}

/// Criterion 9: enumerator calibration — class counts 11, 34, 156, 1044 at
/// n = 4..7, exact, under a minute.
#[test]
fn criterion_9_enumerator_calibration() {
    let started = Instant::now();
    let expected = [(4usize, 11u64), (5, 34), (6, 156), (7, 1044)];
    for (n, want) in expected {
        assert_eq!(count_classes(n, |_| true).unwrap(), want, "n={n}");
    }
    let elapsed = started.elapsed();
    assert!(elapsed.as_secs() < 60, "took {elapsed:?}");
    println!("criterion 9: PASS (11/34/156/1044 in {elapsed:.2?})");
}

/// Criterion 10: optimizer evidence — the 3-leaf star prefers the (6,2)
/// split of 8 vertices over two parts with 40 copies, and the balanced
/// vector is optimal for the 4-cycle from three colors on at all probes.
#[test]
fn criterion_10_optimizer_evidence() {
    let opt = optimize_multipartite(&build("S3"), 2, 8).unwrap();
    assert_eq!(opt.best().sizes(), &[6, 2]);
    assert_eq!(opt.value, BigUint::from(40u32));
    assert!(!opt.balanced_is_optimal, "unbalanced optimum must exist");

    let k0 = find_k0(&build("C4"), 8, &[12, 24]).unwrap();
    assert_eq!(k0, Some(3));
    println!("criterion 10: PASS (star optimum (6,2) value 40; 4-cycle balanced from 3)");
}
