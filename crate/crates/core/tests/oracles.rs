//! Library routines against the naive references in `common`.

mod common;

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sparse_local::graph::{gen_er, ErParams};
use sparse_local::iso::{
    brute_force_embed, colorful_search, find_subgraph, find_subgraph_multi, pattern_core, Pattern, TrialConfig,
};
use sparse_local::local::{count_cycles, count_dense_subgraphs, edge_surplus};
use sparse_local::scatter::{
    brute_force_sentence, check_sentence, max_scattered, BasicLocalSentence, LocalPredicate,
};
use sparse_local::stats::{mean, std_err};
use sparse_local::{Graph, Seed};

use common::*;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[test]
fn cycle_counts_match_subset_enumeration() {
    let mut r = rng(1);
    for _ in 0..60 {
        let n = r.gen_range(3..=11);
        let g = gnp(n, r.gen_range(0.2..0.8), &mut r);
        for k in 3..=n.min(7) {
            assert_eq!(count_cycles(&g, k).unwrap(), cycles_by_subsets(&g, k), "n={n} k={k} {g:?}");
        }
    }
}

#[test]
fn dense_counts_match_subset_enumeration() {
    let mut r = rng(2);
    for _ in 0..80 {
        let n = r.gen_range(1..=10);
        let g = gnp(n, r.gen_range(0.1..0.9), &mut r);
        for k in 1..=n.min(6) {
            for m in 0..3 {
                let got = count_dense_subgraphs(&g, k, m, 2.0).unwrap().count;
                assert_eq!(got, dense_by_subsets(&g, k, m), "n={n} k={k} m={m} {g:?}");
            }
        }
    }
}

#[test]
fn dense_counts_on_sparse_graphs_with_isolated_vertices() {
    // many isolated vertices exercise the closed-form completion
    for seed in 0..20 {
        let g = er(14, 1.5, seed);
        for k in 3..=5 {
            for m in 0..2 {
                assert_eq!(
                    count_dense_subgraphs(&g, k, m, 1.5).unwrap().count,
                    dense_by_subsets(&g, k, m),
                    "seed={seed} k={k} m={m}"
                );
            }
        }
    }
}

#[test]
fn surplus_matches_matrix_count() {
    let mut r = rng(3);
    for _ in 0..50 {
        let n = r.gen_range(1..=15);
        let g = gnp(n, 0.3, &mut r);
        let a = adjacency_matrix(&g);
        let s: Vec<usize> = (0..n).filter(|_| r.gen_bool(0.6)).collect();
        if s.is_empty() {
            continue;
        }
        assert_eq!(edge_surplus(&g, &s).unwrap(), induced_edges(&a, &s) as i64 - s.len() as i64);
    }
}

#[test]
fn colorful_search_lists_exactly_the_core_embeddings() {
    let mut r = rng(4);
    let cfg = TrialConfig::with_epsilon(1e-9);
    for i in 0..40 {
        let n = r.gen_range(4..=9);
        let g = gnp(n, r.gen_range(0.3..0.7), &mut r);
        let h = connected_pattern(r.gen_range(2..=4), 0.4, &mut r);
        let core = pattern_core(&Pattern::new(h).unwrap());
        let got: Vec<Vec<usize>> = colorful_search(&g, &core, &cfg, Seed::new(i))
            .unwrap()
            .into_iter()
            .map(|e| e.map)
            .collect();
        assert_eq!(got, all_embeddings(&g, &core.core), "instance {i}");
    }
}

#[test]
fn colorful_search_single_trial_is_sound() {
    let mut r = rng(5);
    let cfg = TrialConfig {
        trials: Some(1),
        ..TrialConfig::default()
    };
    for i in 0..60 {
        let g = gnp(r.gen_range(4..=9), 0.5, &mut r);
        let h = connected_pattern(r.gen_range(2..=5), 0.3, &mut r);
        let core = pattern_core(&Pattern::new(h).unwrap());
        let all: BTreeSet<Vec<usize>> = all_embeddings(&g, &core.core).into_iter().collect();
        for e in colorful_search(&g, &core, &cfg, Seed::new(i)).unwrap() {
            assert!(all.contains(&e.map));
        }
    }
}

#[test]
fn find_subgraph_agrees_with_reference() {
    let mut r = rng(6);
    let cfg = TrialConfig::with_epsilon(1e-6);
    for i in 0..80 {
        let g = er(r.gen_range(5..=25), r.gen_range(1.0..5.0), i);
        let h = connected_pattern(r.gen_range(2..=5), 0.3, &mut r);
        let expected = embeds(&g, &h);
        let got = find_subgraph(&g, &Pattern::new(h.clone()).unwrap(), &cfg, Seed::new(i)).unwrap();
        if let Some(e) = &got {
            assert!(e.verify(&g, &h));
        }
        assert_eq!(got.is_some(), expected, "instance {i}");
        assert_eq!(brute_force_embed(&g, &h).is_some(), expected, "instance {i}");
    }
}

#[test]
fn brute_force_handles_disconnected_patterns() {
    let mut r = rng(7);
    for i in 0..60 {
        let g = gnp(r.gen_range(3..=9), 0.4, &mut r);
        let h = gnp(r.gen_range(1..=5), 0.4, &mut r);
        let got = brute_force_embed(&g, &h);
        assert_eq!(got.is_some(), embeds(&g, &h), "instance {i}");
        if let Some(e) = got {
            assert!(e.verify(&g, &h));
        }
    }
}

/// Two patterns disjointly: a copy of the union pattern.
fn disjoint_union(a: &Graph, b: &Graph) -> Graph {
    let off = a.n();
    Graph::from_edges(a.n() + b.n(), a.edges().chain(b.edges().map(|(u, v)| (u + off, v + off)))).unwrap()
}

#[test]
fn multi_agrees_with_reference_on_small_graphs() {
    let mut r = rng(8);
    let cfg = TrialConfig::with_epsilon(1e-3);
    let (mut found, mut present) = (0, 0);
    for i in 0..40 {
        let g = er(r.gen_range(6..=20), r.gen_range(1.5..4.0), 100 + i);
        let a = connected_pattern(r.gen_range(1..=3), 0.3, &mut r);
        let b = connected_pattern(r.gen_range(1..=3), 0.3, &mut r);
        let expected = embeds(&g, &disjoint_union(&a, &b));
        let parts = [Pattern::new(a.clone()).unwrap(), Pattern::new(b.clone()).unwrap()];
        let got = find_subgraph_multi(&g, &parts, &cfg, Seed::new(i)).unwrap();
        if let Some(es) = &got {
            assert!(expected, "instance {i}: false positive");
            assert!(es[0].verify(&g, &a) && es[1].verify(&g, &b));
            let used: BTreeSet<usize> = es.iter().flat_map(|e| e.map.iter().copied()).collect();
            assert_eq!(used.len(), a.n() + b.n());
        }
        present += usize::from(expected);
        found += usize::from(got.is_some());
    }
    assert!(present > 10);
    assert_eq!(found, present);
}

#[test]
fn max_scattered_matches_reference() {
    let mut r = rng(9);
    for i in 0..60 {
        let n = r.gen_range(1..=40);
        let g = er(n, r.gen_range(0.5..3.0), 200 + i);
        let red: Vec<usize> = (0..n).filter(|_| r.gen_bool(0.7)).collect();
        for radius in 1..=2 {
            let set = max_scattered(&g, &red, radius).unwrap();
            assert_eq!(set.len(), max_scattered_size(&g, &red, radius), "instance {i} r={radius}");
            assert!(scattered_in(&floyd(&g), &red, &set, radius), "instance {i} r={radius}");
        }
    }
}

#[test]
fn sentences_match_reference_semantics() {
    let mut r = rng(10);
    let tri = Graph::from_edges(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
    let p3 = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
    for i in 0..90 {
        let n = r.gen_range(0..=25);
        let g = er(n, r.gen_range(1.0..4.0), 300 + i);
        let s = r.gen_range(1..=3);
        let radius = r.gen_range(0..=2);
        let pr = r.gen_range(0..=2);
        let (pred, reference) = match i % 4 {
            0 => (
                LocalPredicate::contains_pattern(Pattern::new(tri.clone()).unwrap(), pr),
                RefPredicate::Pattern(tri.clone(), pr),
            ),
            1 => (
                LocalPredicate::contains_pattern(Pattern::new(p3.clone()).unwrap(), pr),
                RefPredicate::Pattern(p3.clone(), pr),
            ),
            2 => {
                let t = r.gen_range(0..=4);
                (LocalPredicate::min_degree_in_ball(t, pr), RefPredicate::Degree(t, pr))
            }
            _ => {
                let m = r.gen_range(-2..=1);
                (LocalPredicate::surplus_at_least(m, pr), RefPredicate::Surplus(m, pr))
            }
        };
        let sent = BasicLocalSentence::new(s, radius, pred).unwrap();
        let expected = ref_sentence(&g, s, radius, &reference);
        let got = check_sentence(&g, &sent).unwrap();
        assert_eq!(got.holds, expected, "instance {i}: n={n} s={s} r={radius} {reference:?}");
        assert_eq!(brute_force_sentence(&g, &sent).unwrap(), expected, "instance {i}");
        if let Some(w) = got.witnesses {
            let d = floyd(&g);
            assert_eq!(w.len(), s);
            for (j, &a) in w.iter().enumerate() {
                assert!(ref_predicate(&g, &d, a, &reference));
                for &b in &w[j + 1..] {
                    assert!(d[a][b] > 2 * radius);
                }
            }
        }
    }
}

#[test]
fn er_edge_count_is_binomial() {
    // E|E| = C(n,2)·p; sample mean over 400 graphs within 4 standard errors
    let (n, d) = (300, 4.0);
    let counts: Vec<f64> = (0..400)
        .map(|s| gen_er(ErParams::new(n, d).unwrap(), Seed::new(5000 + s)).unwrap().m() as f64)
        .collect();
    let expected = (n * (n - 1) / 2) as f64 * d / n as f64;
    assert!((mean(&counts) - expected).abs() <= 4.0 * std_err(&counts), "{} vs {expected}", mean(&counts));
}

#[test]
fn er_pair_frequencies_are_uniform() {
    // every pair of a 6-vertex graph appears with probability p
    let (n, d) = (6, 2.4);
    let trials = 20_000;
    let mut hits = vec![vec![0u32; n]; n];
    for s in 0..trials {
        let g = gen_er(ErParams::new(n, d).unwrap(), Seed::new(s)).unwrap();
        for (u, v) in g.edges() {
            hits[u][v] += 1;
        }
    }
    let p = d / n as f64;
    let se = (p * (1.0 - p) / trials as f64).sqrt();
    for (u, row) in hits.iter().enumerate() {
        for (v, &h) in row.iter().enumerate().skip(u + 1) {
            let f = h as f64 / trials as f64;
            assert!((f - p).abs() <= 4.5 * se, "pair ({u},{v}) frequency {f}");
        }
    }
}

fn petersen() -> Graph {
    let outer = (0..5).map(|i| (i, (i + 1) % 5));
    let spokes = (0..5).map(|i| (i, i + 5));
    let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
    Graph::from_edges(10, outer.chain(spokes).chain(inner)).unwrap()
}

#[test]
fn petersen_cycle_counts() {
    let g = petersen();
    assert_eq!(cycles_by_subsets(&g, 5), 12);
    for k in 3..=8 {
        assert_eq!(count_cycles(&g, k).unwrap(), cycles_by_subsets(&g, k), "k={k}");
    }
    let c5 = Graph::from_edges(5, (0..5).map(|i| (i, (i + 1) % 5))).unwrap();
    let e = find_subgraph(&g, &Pattern::new(c5.clone()).unwrap(), &TrialConfig::default(), Seed::new(0))
        .unwrap()
        .expect("Petersen has 5-cycles");
    assert!(e.verify(&g, &c5));
}

#[test]
fn triangle_has_six_self_embeddings() {
    let tri = Graph::from_edges(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
    let core = pattern_core(&Pattern::new(tri.clone()).unwrap());
    let got = colorful_search(&tri, &core, &TrialConfig::with_epsilon(1e-9), Seed::new(3)).unwrap();
    assert_eq!(got.len(), 6);
    assert_eq!(all_embeddings(&tri, &tri).len(), 6);
}
