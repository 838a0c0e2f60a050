#![allow(dead_code)]

use proptest::prelude::*;
use taugraph_core::Graph;

/// Labelled graphs with `lo..=hi` vertices, uniform over edge masks.
pub fn graph(lo: usize, hi: usize) -> impl Strategy<Value = Graph> {
    (lo..=hi, any::<u64>()).prop_map(|(n, bits)| {
        let pairs = Graph::pair_count(n);
        let mask = if pairs == 64 { bits } else { bits & ((1u64 << pairs) - 1) };
        Graph::from_edge_mask(n, mask).unwrap()
    })
}

/// A graph together with a permutation of its vertices.
pub fn graph_and_perm(lo: usize, hi: usize) -> impl Strategy<Value = (Graph, Vec<usize>)> {
    graph(lo, hi).prop_flat_map(|g| {
        let n = g.n();
        (Just(g), Just((0..n).collect::<Vec<_>>()).prop_shuffle())
    })
}

/// Every permutation of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    loop {
        out.push(p.clone());
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| p[i] < p[i + 1]) else {
            return out;
        };
        let j = (i + 1..n).rev().find(|&j| p[j] > p[i]).unwrap();
        p.swap(i, j);
        p[i + 1..].reverse();
    }
}

/// Isomorphism by trying every permutation.
pub fn isomorphic_by_permutation(a: &Graph, b: &Graph) -> bool {
    a.n() == b.n() && a.edge_count() == b.edge_count() && permutations(a.n()).iter().any(|p| a.relabel(p) == *b)
}
