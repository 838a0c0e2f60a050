mod common;

use std::collections::BTreeSet;

use common::{graph, graph_and_perm, isomorphic_by_permutation, permutations};
use proptest::prelude::*;
use taugraph_core::canon::{automorphism_count, canonicalize, CanonicalCode};
use taugraph_core::minor::has_minor;
use taugraph_core::pendant::pendant_appearances;
use taugraph_core::structure::{bridges, component_count, two_core};
use taugraph_core::weight::{weight, Weighting};
use taugraph_core::{Graph, RootedGraph};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn codes_agree_with_permutation_oracle(a in graph(0, 7), b in graph(0, 7)) {
        let same_code = canonicalize(&a).unwrap() == canonicalize(&b).unwrap();
        prop_assert_eq!(same_code, isomorphic_by_permutation(&a, &b));
    }

    #[test]
    fn codes_are_relabelling_invariant((g, p) in graph_and_perm(0, 7)) {
        let code = canonicalize(&g).unwrap();
        prop_assert_eq!(&code, &canonicalize(&g.relabel(&p)).unwrap());
        prop_assert_eq!(CanonicalCode::from_hex(&code.to_hex()).unwrap(), code);
    }

    #[test]
    fn aut_times_copies_is_factorial(g in graph(1, 6)) {
        let copies: BTreeSet<Option<u64>> = permutations(g.n()).iter().map(|p| g.relabel(p).edge_mask()).collect();
        let factorial: u64 = (1..=g.n() as u64).product();
        prop_assert_eq!(automorphism_count(&g).unwrap() * copies.len() as u64, factorial);
    }

    #[test]
    fn edge_changes_move_kappa_by_at_most_one(g in graph(2, 9), pick in any::<prop::sample::Index>()) {
        let pairs = Graph::edge_pairs(g.n());
        let (u, v) = pairs[pick.index(pairs.len())];
        let k = component_count(&g);
        let mut h = g.clone();
        h.toggle_edge(u, v);
        let k2 = component_count(&h);
        if g.has_edge(u, v) {
            let is_bridge = bridges(&g).contains(&(u, v));
            prop_assert_eq!(k2, if is_bridge { k + 1 } else { k });
        } else {
            prop_assert!(k2 == k || k2 + 1 == k);
        }
    }

    #[test]
    fn two_core_is_idempotent(g in graph(0, 10)) {
        let (core, _) = two_core(&g);
        prop_assert!((0..core.n()).all(|v| core.degree(v) >= 2));
        prop_assert_eq!(two_core(&core).0, core.clone());
        prop_assert_eq!(core.is_empty(), taugraph_core::structure::is_forest(&g));
    }

    #[test]
    fn weight_is_multiplicative(a in graph(0, 6), b in graph(0, 6), l0 in 1u32..5, l1 in 1u32..5, nu in 1u32..5) {
        let union = a.disjoint_union(&b);
        let diag = Weighting::new(l1 as f64 / 2.0, nu as f64 / 3.0).unwrap();
        let ext = Weighting::extended(l0 as f64 / 2.0, l1 as f64 / 2.0, nu as f64 / 3.0).unwrap();
        for w in [diag, ext] {
            let lhs = weight(&union, &w);
            let rhs = weight(&a, &w) * weight(&b, &w);
            prop_assert!((lhs - rhs).abs() <= 1e-12 * rhs.abs().max(1.0));
        }
    }

    #[test]
    fn minors_are_monotone_under_edge_addition(g in graph(3, 7), pick in any::<prop::sample::Index>()) {
        let pairs = Graph::edge_pairs(g.n());
        let (u, v) = pairs[pick.index(pairs.len())];
        let mut bigger = g.clone();
        bigger.add_edge(u, v);
        for h in [Graph::cycle(3), Graph::complete(4), Graph::cycle(4), Graph::path(2).multiple(2)] {
            if has_minor(&g, &h).unwrap() {
                prop_assert!(has_minor(&bigger, &h).unwrap());
            }
        }
        prop_assert!(has_minor(&g, &g).unwrap());
    }

    #[test]
    fn pendant_count_matches_subset_scan(g in graph(2, 8), hk in 1usize..4, hmask in any::<u8>(), root in 0usize..3) {
        let pairs = Graph::pair_count(hk);
        let h = Graph::from_edge_mask(hk, hmask as u64 & ((1u64 << pairs) - 1)).unwrap();
        prop_assume!(taugraph_core::structure::is_connected(&h) && hk < g.n());
        let rooted = RootedGraph::new(h.clone(), root % hk).unwrap();
        prop_assert_eq!(pendant_appearances(&g, &rooted), subset_scan(&g, &h));
    }
}

/// f_H(g) by checking every vertex subset of the right size.
fn subset_scan(g: &Graph, h: &Graph) -> usize {
    let n = g.n();
    let k = h.n();
    let mut count = 0;
    for set in 0u32..1 << n {
        if set.count_ones() as usize != k {
            continue;
        }
        let w: Vec<usize> = (0..n).filter(|&v| set >> v & 1 == 1).collect();
        if g.induced(&w) != *h {
            continue;
        }
        let leaving: Vec<(usize, usize)> = w
            .iter()
            .flat_map(|&x| g.neighbors(x).filter(|&y| set >> y & 1 == 0).map(move |y| (x, y)))
            .collect();
        if leaving.len() == 1 && leaving[0].0 == w[0] {
            count += 1;
        }
    }
    count
}

#[test]
fn minors_are_transitive_on_a_fixed_corpus() {
    let corpus = [
        Graph::complete(5),
        Graph::complete(4),
        Graph::cycle(5),
        Graph::cycle(4),
        Graph::cycle(3),
        Graph::path(4),
        Graph::path(3),
        Graph::star(3),
        Graph::complete_bipartite(2, 3),
        Graph::path(2).multiple(2),
    ];
    let rel: Vec<Vec<bool>> = corpus
        .iter()
        .map(|a| corpus.iter().map(|b| has_minor(a, b).unwrap()).collect())
        .collect();
    for i in 0..corpus.len() {
        assert!(rel[i][i]);
        for j in 0..corpus.len() {
            for k in 0..corpus.len() {
                if rel[i][j] && rel[j][k] {
                    assert!(rel[i][k], "transitivity fails for {i} {j} {k}");
                }
            }
        }
    }
}
