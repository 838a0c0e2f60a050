//! Pendant appearances of a rooted graph.
//!
//! `h` has a pendant appearance at `W` in `g` when the increasing bijection
//! from `0..h.n()` onto `W` is an isomorphism `h -> g[W]`, and exactly one
//! edge of `g` leaves `W`, at the least element of `W`. The attachment vertex
//! is always the least element of `W`; the designated root of `h` does not
//! enter the count.
//!
//! Because `h` is connected, such a `W` is always the side of a bridge: it is
//! the component of `g - e` containing the attachment end of the leaving edge
//! `e`. Only bridges therefore need to be inspected.

use alloc::vec;
use alloc::vec::Vec;

use crate::graph::{Graph, RootedGraph};
use crate::structure::bridges;

/// One pendant appearance: the vertex set and the single leaving edge
/// `(root, outside)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Appearance {
    pub vertices: Vec<usize>,
    pub root_edge: (usize, usize),
}

/// Every pendant appearance of `h` in `g`, ordered by vertex set.
pub fn pendant_appearance_sets(g: &Graph, h: &RootedGraph) -> Vec<Appearance> {
    let hg = h.graph();
    let k = hg.n();
    if k == 0 || k >= g.n() {
        return Vec::new();
    }
    let mut out = Vec::new();
    for (a, b) in bridges(g) {
        for (inner, outer) in [(a, b), (b, a)] {
            let side = side_of_bridge(g, inner, outer, k);
            let Some(side) = side else { continue };
            if side[0] != inner {
                continue;
            }
            if g.induced(&side) == *hg {
                out.push(Appearance {
                    vertices: side,
                    root_edge: (inner, outer),
                });
            }
        }
    }
    out.sort_by(|x, y| x.vertices.cmp(&y.vertices));
    out
}

/// Vertex set (sorted) of the component of `g - inner·outer` holding
/// `inner`, or `None` once it grows past `limit`.
fn side_of_bridge(g: &Graph, inner: usize, outer: usize, limit: usize) -> Option<Vec<usize>> {
    let mut seen = vec![false; g.n()];
    seen[inner] = true;
    seen[outer] = true;
    let mut stack = vec![inner];
    let mut side = vec![inner];
    while let Some(u) = stack.pop() {
        for v in g.neighbors(u) {
            if !seen[v] {
                seen[v] = true;
                side.push(v);
                if side.len() > limit {
                    return None;
                }
                stack.push(v);
            }
        }
    }
    if side.len() != limit {
        return None;
    }
    side.sort_unstable();
    Some(side)
}

/// f_H(g).
pub fn pendant_appearances(g: &Graph, h: &RootedGraph) -> usize {
    pendant_appearance_sets(g, h).len()
}

/// Number of pendant appearances sharing a vertex or their root edge with
/// another pendant appearance of `h`.
pub fn overlapping_pendant_appearances(g: &Graph, h: &RootedGraph) -> usize {
    let apps = pendant_appearance_sets(g, h);
    let same_edge = |x: (usize, usize), y: (usize, usize)| x == y || (x.0 == y.1 && x.1 == y.0);
    (0..apps.len())
        .filter(|&i| {
            (0..apps.len()).any(|j| {
                j != i
                    && (same_edge(apps[i].root_edge, apps[j].root_edge)
                        || apps[i].vertices.iter().any(|v| apps[j].vertices.contains(v)))
            })
        })
        .count()
}
