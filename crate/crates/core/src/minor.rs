//! Minor containment for small graphs.
//!
//! Every minor of `g` is a subgraph of some contraction of `g`, so the search
//! walks contractions of `g` (memoised up to isomorphism) and at each one asks
//! whether `h` embeds as a subgraph.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use crate::canon::{canonicalize_with_cap, CanonicalCode};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::structure::is_forest;

pub const DEFAULT_NODE_BUDGET: u64 = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MinorConfig {
    /// Maximum number of search nodes (contractions plus embedding steps).
    pub node_budget: u64,
}

impl Default for MinorConfig {
    fn default() -> Self {
        MinorConfig {
            node_budget: DEFAULT_NODE_BUDGET,
        }
    }
}

pub fn has_minor(g: &Graph, h: &Graph) -> Result<bool> {
    has_minor_with(g, h, MinorConfig::default())
}

pub fn has_minor_with(g: &Graph, h: &Graph, cfg: MinorConfig) -> Result<bool> {
    if h.n() > g.n() || h.edge_count() > g.edge_count() {
        return Ok(false);
    }
    if is_forest(g) && !is_forest(h) {
        return Ok(false);
    }
    let mut search = MinorSearch {
        h,
        h_order: embedding_order(h),
        visited: BTreeSet::new(),
        nodes: 0,
        budget: cfg.node_budget,
    };
    search.run(g)
}

struct MinorSearch<'a> {
    h: &'a Graph,
    h_order: Vec<usize>,
    visited: BTreeSet<CanonicalCode>,
    nodes: u64,
    budget: u64,
}

impl MinorSearch<'_> {
    fn tick(&mut self) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::BudgetExceeded { budget: self.budget });
        }
        Ok(())
    }

    fn run(&mut self, g: &Graph) -> Result<bool> {
        self.tick()?;
        if g.n() < self.h.n() || g.edge_count() < self.h.edge_count() {
            return Ok(false);
        }
        if self.embeds(g)? {
            return Ok(true);
        }
        if g.n() == self.h.n() {
            return Ok(false);
        }
        let code = canonicalize_with_cap(g, 64)?;
        if !self.visited.insert(code) {
            return Ok(false);
        }
        let edges: Vec<(usize, usize)> = g.edges().collect();
        for (u, v) in edges {
            if self.run(&g.contract(u, v))? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Subgraph (not necessarily induced) embedding of `h` into `g`.
    fn embeds(&mut self, g: &Graph) -> Result<bool> {
        let mut image = vec![usize::MAX; self.h.n()];
        let mut used = vec![false; g.n()];
        let g_deg: Vec<usize> = (0..g.n()).map(|v| g.degree(v)).collect();
        self.extend(g, &g_deg, 0, &mut image, &mut used)
    }

    fn extend(
        &mut self,
        g: &Graph,
        g_deg: &[usize],
        depth: usize,
        image: &mut [usize],
        used: &mut [bool],
    ) -> Result<bool> {
        if depth == self.h_order.len() {
            return Ok(true);
        }
        self.tick()?;
        let x = self.h_order[depth];
        let need = self.h.degree(x);
        for y in 0..g.n() {
            if used[y] || g_deg[y] < need {
                continue;
            }
            let ok = self.h_order[..depth]
                .iter()
                .all(|&p| !self.h.has_edge(x, p) || g.has_edge(y, image[p]));
            if !ok {
                continue;
            }
            image[x] = y;
            used[y] = true;
            let found = self.extend(g, g_deg, depth + 1, image, used)?;
            used[y] = false;
            if found {
                return Ok(true);
            }
        }
        image[x] = usize::MAX;
        Ok(false)
    }
}

/// Order vertices of `h` so each one, where possible, is adjacent to an
/// earlier one; within that, prefer high degree.
fn embedding_order(h: &Graph) -> Vec<usize> {
    let n = h.n();
    let mut placed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    while order.len() < n {
        let next = (0..n)
            .filter(|&v| !placed[v])
            .max_by_key(|&v| {
                let links = order.iter().filter(|&&u| h.has_edge(u, v)).count();
                (links, h.degree(v), n - v)
            })
            .expect("unplaced vertex remains");
        placed[next] = true;
        order.push(next);
    }
    order
}
