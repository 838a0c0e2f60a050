//! Per-graph structure: components, bridges, the 2-core and the Big/Frag split.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Connected components, each sorted ascending, ordered by least vertex.
pub fn components(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.n();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    let mut stack = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        stack.push(s);
        let mut comp = Vec::new();
        while let Some(u) = stack.pop() {
            comp.push(u);
            for v in g.neighbors(u) {
                if !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// Component label per vertex, labels numbered by least vertex.
pub fn component_labels(g: &Graph) -> Vec<usize> {
    let mut label = vec![0; g.n()];
    for (i, comp) in components(g).iter().enumerate() {
        for &v in comp {
            label[v] = i;
        }
    }
    label
}

/// κ(g); zero for the empty graph.
pub fn component_count(g: &Graph) -> usize {
    if g.n() <= 64 {
        // word-parallel flood fill
        let mut remaining: u64 = if g.n() == 64 { !0 } else { (1u64 << g.n()) - 1 };
        let mut count = 0;
        while remaining != 0 {
            let mut frontier = remaining & remaining.wrapping_neg();
            let mut comp = frontier;
            while frontier != 0 {
                let v = frontier.trailing_zeros() as usize;
                frontier &= frontier - 1;
                let fresh = g.row_word(v) & !comp;
                comp |= fresh;
                frontier |= fresh;
            }
            remaining &= !comp;
            count += 1;
        }
        count
    } else {
        components(g).len()
    }
}

pub fn is_connected(g: &Graph) -> bool {
    component_count(g) == 1
}

pub fn is_forest(g: &Graph) -> bool {
    g.edge_count() + component_count(g) == g.n()
}

/// Bridges as `(u, v)` pairs with `u < v`, sorted.
pub fn bridges(g: &Graph) -> Vec<(usize, usize)> {
    let n = g.n();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut out = Vec::new();
    let mut time = 0;
    // (vertex, parent, neighbour list, cursor)
    let mut stack: Vec<(usize, usize, Vec<usize>, usize)> = Vec::new();
    for s in 0..n {
        if disc[s] != usize::MAX {
            continue;
        }
        disc[s] = time;
        low[s] = time;
        time += 1;
        stack.push((s, usize::MAX, g.neighbors(s).collect(), 0));
        while let Some(top) = stack.last_mut() {
            let (u, parent) = (top.0, top.1);
            if top.3 < top.2.len() {
                let v = top.2[top.3];
                top.3 += 1;
                if v == parent {
                    continue;
                }
                if disc[v] == usize::MAX {
                    disc[v] = time;
                    low[v] = time;
                    time += 1;
                    stack.push((v, u, g.neighbors(v).collect(), 0));
                } else {
                    low[u] = low[u].min(disc[v]);
                }
            } else {
                stack.pop();
                if let Some(p) = stack.last() {
                    let p = p.0;
                    low[p] = low[p].min(low[u]);
                    if low[u] > disc[p] {
                        out.push((p.min(u), p.max(u)));
                    }
                }
            }
        }
    }
    out.sort_unstable();
    out
}

/// `(e0, e1)`: bridge and non-bridge edge counts.
pub fn bridge_partition(g: &Graph) -> (usize, usize) {
    let e = g.edge_count();
    let e0 = bridges(g).len();
    (e0, e - e0)
}

/// The 2-core and the original labels of its vertices (ascending). Core
/// vertex `i` is original vertex `vertex_map[i]`.
pub fn two_core(g: &Graph) -> (Graph, Vec<usize>) {
    let n = g.n();
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut alive = vec![true; n];
    let mut queue: Vec<usize> = (0..n).filter(|&v| deg[v] < 2).collect();
    while let Some(v) = queue.pop() {
        if !alive[v] {
            continue;
        }
        alive[v] = false;
        for u in g.neighbors(v) {
            if alive[u] {
                deg[u] -= 1;
                if deg[u] == 1 {
                    queue.push(u);
                }
            }
        }
    }
    let keep: Vec<usize> = (0..n).filter(|&v| alive[v]).collect();
    (g.induced(&keep), keep)
}

/// Number of vertices in the 2-core.
pub fn core_size(g: &Graph) -> usize {
    two_core(g).1.len()
}

/// 2-connected in the strict sense: at least three vertices, connected, and
/// no cut vertex.
pub fn is_biconnected(g: &Graph) -> bool {
    g.n() >= 3 && is_connected(g) && (0..g.n()).all(|v| is_connected(&g.remove_vertex(v)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BigFrag {
    pub big: Graph,
    pub big_vertices: Vec<usize>,
    pub frag: Graph,
    pub frag_vertices: Vec<usize>,
}

/// Largest component (ties to the lexicographically least sorted vertex
/// list) and the subgraph induced on everything else.
pub fn big_frag_split(g: &Graph) -> Result<BigFrag> {
    if g.n() == 0 {
        return Err(Error::EmptyGraph);
    }
    let comps = components(g);
    let mut best = 0;
    for (i, c) in comps.iter().enumerate() {
        let b = &comps[best];
        if c.len() > b.len() || (c.len() == b.len() && c < b) {
            best = i;
        }
    }
    let big_vertices = comps[best].clone();
    let mut in_big = vec![false; g.n()];
    for &v in &big_vertices {
        in_big[v] = true;
    }
    let frag_vertices: Vec<usize> = (0..g.n()).filter(|&v| !in_big[v]).collect();
    Ok(BigFrag {
        big: g.induced(&big_vertices),
        frag: g.induced(&frag_vertices),
        big_vertices,
        frag_vertices,
    })
}

/// frag(g): vertices outside the big component; 0 for the empty graph.
pub fn frag_size(g: &Graph) -> usize {
    match components(g).iter().map(Vec::len).max() {
        Some(m) => g.n() - m,
        None => 0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tri_pendant() -> Graph {
        Graph::from_edges(4, &[(0, 1), (1, 2), (0, 2), (2, 3)]).unwrap()
    }

    #[test]
    fn component_counts() {
        assert_eq!(component_count(&Graph::empty()), 0);
        assert_eq!(component_count(&Graph::from_edges(5, &[(0, 1), (1, 2)]).unwrap()), 3);
        let two_tri = Graph::cycle(3).multiple(2);
        assert_eq!(component_count(&two_tri), 2);
        assert_eq!(component_count(&Graph::path(150)), 1);
        assert_eq!(component_count(&Graph::new(70)), 70);
    }

    #[test]
    fn bridge_partitions() {
        assert_eq!(bridge_partition(&Graph::cycle(3)), (0, 3));
        assert_eq!(bridge_partition(&Graph::path(4)), (3, 0));
        assert_eq!(bridge_partition(&tri_pendant()), (1, 3));
        assert_eq!(bridges(&tri_pendant()), vec![(2, 3)]);
    }

    #[test]
    fn biconnectivity() {
        assert!(is_biconnected(&Graph::cycle(3)));
        assert!(is_biconnected(&Graph::complete_bipartite(3, 3)));
        assert!(!is_biconnected(&Graph::path(2)));
        assert!(!is_biconnected(&tri_pendant()));
        assert!(!is_biconnected(&Graph::cycle(3).multiple(2)));
    }

    #[test]
    fn two_core_examples() {
        let (core, map) = two_core(&Graph::star(4));
        assert!(core.is_empty() && map.is_empty());
        let c5 = Graph::cycle(5);
        assert_eq!(two_core(&c5).0, c5);
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4)]).unwrap();
        let (core, map) = two_core(&g);
        assert_eq!(map, vec![0, 1, 2]);
        assert_eq!(core, Graph::cycle(3));
    }

    #[test]
    fn big_frag_examples() {
        let p = Graph::path(4);
        let bf = big_frag_split(&p).unwrap();
        assert_eq!(bf.big, p);
        assert!(bf.frag.is_empty());

        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (3, 4)]).unwrap();
        let bf = big_frag_split(&g).unwrap();
        assert_eq!(bf.big_vertices, vec![0, 1, 2]);
        assert_eq!(bf.frag, Graph::path(2));

        // equal orders: the component holding the least label wins
        let g = Graph::from_edges(4, &[(2, 3), (0, 1)]).unwrap();
        let bf = big_frag_split(&g).unwrap();
        assert_eq!(bf.big_vertices, vec![0, 1]);
        assert_eq!(bf.frag_vertices, vec![2, 3]);
        assert_eq!(bf.big_vertices.len() + bf.frag_vertices.len(), 4);

        assert_eq!(big_frag_split(&Graph::empty()), Err(Error::EmptyGraph));
    }
}
