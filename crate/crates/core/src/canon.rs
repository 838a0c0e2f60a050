//! Canonical codes and automorphism counts for small graphs.
//!
//! Both searches run over labellings that respect an isomorphism-invariant
//! colour refinement (1-dimensional Weisfeiler-Leman). The canonical code is
//! the lexicographically greatest adjacency code among those labellings; the
//! search prunes on code prefixes and on orbits of automorphisms found along
//! the way.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::graph::Graph;

pub const DEFAULT_AUT_CAP: usize = 9;
pub const DEFAULT_CANON_CAP: usize = 16;

/// Isomorphism-invariant byte code of a graph: the vertex count followed by
/// the packed lower-triangular adjacency bits under the canonical labelling.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalCode(Vec<u8>);

impl CanonicalCode {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn vertex_count(&self) -> usize {
        self.0[0] as usize
    }

    pub fn to_hex(&self) -> String {
        const HEX: &[u8; 16] = b"0123456789abcdef";
        let mut s = String::with_capacity(self.0.len() * 2);
        for &b in &self.0 {
            s.push(HEX[(b >> 4) as usize] as char);
            s.push(HEX[(b & 15) as usize] as char);
        }
        s
    }

    pub fn from_hex(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s.len() % 2 != 0 {
            return Err(Error::invalid("canonical code hex must have even, non-zero length"));
        }
        let digit = |c: u8| match c {
            b'0'..=b'9' => Ok(c - b'0'),
            b'a'..=b'f' => Ok(c - b'a' + 10),
            _ => Err(Error::invalid("canonical code must be lowercase hex")),
        };
        let bytes = s.as_bytes();
        let mut out = Vec::with_capacity(bytes.len() / 2);
        for pair in bytes.chunks(2) {
            out.push(digit(pair[0])? << 4 | digit(pair[1])?);
        }
        let n = out[0] as usize;
        if out.len() != 1 + Graph::pair_count(n).div_ceil(8) {
            return Err(Error::invalid("canonical code length does not match its vertex count"));
        }
        Ok(CanonicalCode(out))
    }

    /// The canonical representative encoded by this code.
    pub fn to_graph(&self) -> Graph {
        let n = self.vertex_count();
        let mut g = Graph::new(n);
        let mut bit = 0;
        for i in 0..n {
            for j in 0..i {
                if self.0[1 + bit / 8] >> (7 - bit % 8) & 1 == 1 {
                    g.add_edge(i, j);
                }
                bit += 1;
            }
        }
        g
    }
}

impl fmt::Debug for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalCode({})", self.to_hex())
    }
}

impl fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

/// Stable colour classes from iterated degree refinement. Colours are ranks
/// of refinement signatures and therefore comparable across graphs.
pub fn refine_colours(g: &Graph) -> Vec<u32> {
    let n = g.n();
    let mut colour: Vec<u32> = (0..n).map(|v| g.degree(v) as u32).collect();
    let mut classes = count_distinct(&colour);
    loop {
        let sigs: Vec<(u32, Vec<u32>)> = (0..n)
            .map(|v| {
                let mut nb: Vec<u32> = g.neighbors(v).map(|u| colour[u]).collect();
                nb.sort_unstable();
                (colour[v], nb)
            })
            .collect();
        let mut ranks: BTreeMap<&(u32, Vec<u32>), u32> = BTreeMap::new();
        for s in &sigs {
            ranks.insert(s, 0);
        }
        for (i, r) in ranks.values_mut().enumerate() {
            *r = i as u32;
        }
        let next: Vec<u32> = sigs.iter().map(|s| ranks[s]).collect();
        let next_classes = ranks.len();
        colour = next;
        if next_classes == classes {
            return colour;
        }
        classes = next_classes;
    }
}

fn count_distinct(xs: &[u32]) -> usize {
    let mut v = xs.to_vec();
    v.sort_unstable();
    v.dedup();
    v.len()
}

/// Vertices sorted by colour, i.e. the order in which positions are filled.
fn position_colours(colour: &[u32]) -> Vec<u32> {
    let mut c = colour.to_vec();
    c.sort_unstable();
    c
}

/// Number of automorphisms, by exhaustive search over colour-respecting
/// permutations. Fails above `cap` vertices.
pub fn automorphism_count_with_cap(g: &Graph, cap: usize) -> Result<u64> {
    let n = g.n();
    if n > cap {
        return Err(Error::CapExceeded {
            what: "automorphism vertices",
            limit: cap,
            got: n,
        });
    }
    let colour = refine_colours(g);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (colour[v], v));
    let mut image = vec![usize::MAX; n];
    let mut used = vec![false; n];
    Ok(count_automorphisms(g, &colour, &order, 0, &mut image, &mut used))
}

pub fn automorphism_count(g: &Graph) -> Result<u64> {
    automorphism_count_with_cap(g, DEFAULT_AUT_CAP)
}

fn count_automorphisms(
    g: &Graph,
    colour: &[u32],
    order: &[usize],
    depth: usize,
    image: &mut [usize],
    used: &mut [bool],
) -> u64 {
    if depth == order.len() {
        return 1;
    }
    let v = order[depth];
    let mut total = 0;
    for w in 0..g.n() {
        if used[w] || colour[w] != colour[v] {
            continue;
        }
        let consistent = order[..depth]
            .iter()
            .all(|&u| g.has_edge(v, u) == g.has_edge(w, image[u]));
        if !consistent {
            continue;
        }
        image[v] = w;
        used[w] = true;
        total += count_automorphisms(g, colour, order, depth + 1, image, used);
        used[w] = false;
    }
    image[v] = usize::MAX;
    total
}

/// Canonical code together with a canonical labelling: vertex `v` of `g`
/// sits at position `labelling[v]` of the canonical representative.
pub fn canonical_form_with_cap(g: &Graph, cap: usize) -> Result<(CanonicalCode, Vec<usize>)> {
    let n = g.n();
    if n > cap.min(64) {
        return Err(Error::CapExceeded {
            what: "canonical form vertices",
            limit: cap.min(64),
            got: n,
        });
    }
    let colour = refine_colours(g);
    let mut search = CanonSearch {
        g,
        colour: &colour,
        cells: position_colours(&colour),
        perm: vec![0; n],
        rows: vec![0; n],
        used: vec![false; n],
        best: None,
        generators: Vec::new(),
    };
    search.descend(0);
    let (best_rows, best_perm) = search.best.expect("search reaches at least one leaf");
    let mut labelling = vec![0; n];
    for (pos, &v) in best_perm.iter().enumerate() {
        labelling[v] = pos;
    }
    Ok((encode(n, &best_rows), labelling))
}

pub fn canonical_form(g: &Graph) -> Result<(CanonicalCode, Vec<usize>)> {
    canonical_form_with_cap(g, DEFAULT_CANON_CAP)
}

pub fn canonicalize_with_cap(g: &Graph, cap: usize) -> Result<CanonicalCode> {
    Ok(canonical_form_with_cap(g, cap)?.0)
}

pub fn canonicalize(g: &Graph) -> Result<CanonicalCode> {
    canonicalize_with_cap(g, DEFAULT_CANON_CAP)
}

pub fn is_isomorphic(a: &Graph, b: &Graph) -> Result<bool> {
    if a.n() != b.n() || a.edge_count() != b.edge_count() {
        return Ok(false);
    }
    Ok(canonicalize(a)? == canonicalize(b)?)
}

fn encode(n: usize, rows: &[u64]) -> CanonicalCode {
    let mut bytes = vec![0u8; 1 + Graph::pair_count(n).div_ceil(8)];
    bytes[0] = n as u8;
    let mut bit = 0;
    for (i, &row) in rows.iter().enumerate() {
        for j in 0..i {
            if row >> j & 1 == 1 {
                bytes[1 + bit / 8] |= 1 << (7 - bit % 8);
            }
            bit += 1;
        }
    }
    CanonicalCode(bytes)
}

struct CanonSearch<'a> {
    g: &'a Graph,
    colour: &'a [u32],
    cells: Vec<u32>,
    perm: Vec<usize>,
    rows: Vec<u64>,
    used: Vec<bool>,
    best: Option<(Vec<u64>, Vec<usize>)>,
    generators: Vec<Vec<usize>>,
}

impl CanonSearch<'_> {
    fn descend(&mut self, pos: usize) {
        let n = self.g.n();
        if pos == n {
            self.leaf();
            return;
        }
        let mut explored: Vec<usize> = Vec::new();
        for w in 0..n {
            if self.used[w] || self.colour[w] != self.cells[pos] {
                continue;
            }
            if !explored.is_empty() && self.same_orbit(pos, w, &explored) {
                continue;
            }
            let mut row = 0u64;
            for (j, &u) in self.perm[..pos].iter().enumerate() {
                if self.g.has_edge(w, u) {
                    row |= 1 << j;
                }
            }
            self.rows[pos] = row;
            explored.push(w);
            if let Some((best_rows, _)) = &self.best {
                if self.rows[..=pos] < best_rows[..=pos] {
                    continue;
                }
            }
            self.perm[pos] = w;
            self.used[w] = true;
            self.descend(pos + 1);
            self.used[w] = false;
        }
    }

    fn leaf(&mut self) {
        match &self.best {
            Some((best_rows, best_perm)) if *best_rows == self.rows => {
                // same code: best_perm[p] -> perm[p] is an automorphism
                let mut gamma = vec![0; self.g.n()];
                for (p, &v) in best_perm.iter().enumerate() {
                    gamma[v] = self.perm[p];
                }
                if gamma.iter().enumerate().any(|(i, &x)| i != x) {
                    self.generators.push(gamma);
                }
            }
            _ => {
                self.best = Some((self.rows.clone(), self.perm.clone()));
            }
        }
    }

    /// Whether `w` lies in the orbit of an explored sibling under the
    /// subgroup generated by known automorphisms fixing the current prefix.
    fn same_orbit(&self, pos: usize, w: usize, explored: &[usize]) -> bool {
        let n = self.g.n();
        let prefix = &self.perm[..pos];
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut any = false;
        for gamma in &self.generators {
            if prefix.iter().any(|&v| gamma[v] != v) {
                continue;
            }
            any = true;
            for (v, &img) in gamma.iter().enumerate() {
                let (a, b) = (find(&mut parent, v), find(&mut parent, img));
                if a != b {
                    parent[a] = b;
                }
            }
        }
        if !any {
            return false;
        }
        let rw = find(&mut parent, w);
        explored.iter().any(|&e| find(&mut parent, e) == rw)
    }
}
