//! Graph families given by excluded minors or a built-in predicate, and
//! bounded-scale checks of their closure properties.
//!
//! Every `verify_*` and `*_at_scale` routine certifies a property only for
//! graphs up to the stated order. Declared flags are kept separately so that
//! callers can rely on known facts (planar graphs form an addable class)
//! while tests cross-check them at small scale.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use alloc::{format, vec};

use crate::canon::{canonicalize, CanonicalCode};
use crate::enumeration::{labelled_graphs, unlabelled_graphs, ENUMERATION_CAP};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::minor::{has_minor_with, MinorConfig};
use crate::structure::{component_count, component_labels, components, is_biconnected, is_forest, two_core};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Builtin {
    All,
    Forests,
    /// Connected members of `Forests` (plus the empty graph). Not
    /// minor-closed.
    Trees,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilySpec {
    ExcludedMinors(Vec<Graph>),
    Builtin(Builtin),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Flag {
    True,
    False,
    #[default]
    Unknown,
}

impl From<bool> for Flag {
    fn from(b: bool) -> Self {
        if b {
            Flag::True
        } else {
            Flag::False
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Flags {
    pub bridge_addable: Flag,
    pub decomposable: Flag,
    pub addable: Flag,
    pub trimmable: Flag,
}

impl Flags {
    fn all(value: bool) -> Self {
        Flags {
            bridge_addable: value.into(),
            decomposable: value.into(),
            addable: value.into(),
            trimmable: value.into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GraphFamily {
    name: String,
    spec: FamilySpec,
    flags: Flags,
    minor: MinorConfig,
}

impl GraphFamily {
    pub fn new(name: impl Into<String>, spec: FamilySpec, flags: Flags) -> Self {
        GraphFamily {
            name: name.into(),
            spec,
            flags,
            minor: MinorConfig::default(),
        }
    }

    pub fn excluded(name: impl Into<String>, minors: Vec<Graph>, flags: Flags) -> Self {
        GraphFamily::new(name, FamilySpec::ExcludedMinors(minors), flags)
    }

    pub fn all_graphs() -> Self {
        GraphFamily::new("all", FamilySpec::Builtin(Builtin::All), Flags::all(true))
    }

    pub fn forests() -> Self {
        GraphFamily::new("forests", FamilySpec::Builtin(Builtin::Forests), Flags::all(true))
    }

    pub fn trees() -> Self {
        let flags = Flags {
            bridge_addable: Flag::True,
            decomposable: Flag::False,
            addable: Flag::False,
            trimmable: Flag::False,
        };
        GraphFamily::new("trees", FamilySpec::Builtin(Builtin::Trees), flags)
    }

    pub fn planar() -> Self {
        GraphFamily::excluded(
            "planar",
            vec![Graph::complete(5), Graph::complete_bipartite(3, 3)],
            Flags::all(true),
        )
    }

    pub fn series_parallel() -> Self {
        GraphFamily::excluded("series-parallel", vec![Graph::complete(4)], Flags::all(true))
    }

    /// Ex(k·C3): no `k` vertex-disjoint cycles.
    pub fn ex_k_disjoint_cycles(k: usize) -> Self {
        let flags = Flags {
            bridge_addable: Flag::True,
            decomposable: (k <= 1).into(),
            addable: (k <= 1).into(),
            trimmable: Flag::True,
        };
        GraphFamily::excluded(format!("ex-k-disjoint-cycles:{k}"), vec![Graph::cycle(3).multiple(k)], flags)
    }

    /// At most `k` vertex-disjoint cycles, i.e. Ex((k+1)·C3).
    pub fn at_most_k_disjoint_cycles(k: usize) -> Self {
        let mut fam = GraphFamily::ex_k_disjoint_cycles(k + 1);
        fam.name = format!("at-most-k-disjoint-cycles:{k}");
        fam
    }

    /// Built-in families by name: `all`, `forests`, `trees`, `planar`,
    /// `series-parallel`, `ex-k-disjoint-cycles:K`, `at-most-k-disjoint-cycles:K`.
    pub fn by_name(name: &str) -> Result<Self> {
        let parse_k = |s: &str| -> Result<usize> {
            s.parse()
                .map_err(|_| Error::Invalid(format!("bad cycle count in family name {name:?}")))
        };
        match name {
            "all" => Ok(GraphFamily::all_graphs()),
            "forests" => Ok(GraphFamily::forests()),
            "trees" => Ok(GraphFamily::trees()),
            "planar" => Ok(GraphFamily::planar()),
            "series-parallel" => Ok(GraphFamily::series_parallel()),
            _ => {
                if let Some(k) = name.strip_prefix("ex-k-disjoint-cycles:") {
                    let k = parse_k(k)?;
                    if k == 0 {
                        return Err(Error::invalid("ex-k-disjoint-cycles needs k >= 1"));
                    }
                    Ok(GraphFamily::ex_k_disjoint_cycles(k))
                } else if let Some(k) = name.strip_prefix("at-most-k-disjoint-cycles:") {
                    Ok(GraphFamily::at_most_k_disjoint_cycles(parse_k(k)?))
                } else {
                    Err(Error::Invalid(format!("unknown family {name:?}")))
                }
            }
        }
    }

    pub fn with_minor_config(mut self, cfg: MinorConfig) -> Self {
        self.minor = cfg;
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn spec(&self) -> &FamilySpec {
        &self.spec
    }

    pub fn flags(&self) -> Flags {
        self.flags
    }

    pub fn minor_config(&self) -> MinorConfig {
        self.minor
    }

    /// Excluded minors, when the family is minor-closed.
    pub fn excluded_minors(&self) -> Option<Vec<Graph>> {
        match &self.spec {
            FamilySpec::ExcludedMinors(m) => Some(m.clone()),
            FamilySpec::Builtin(Builtin::All) => Some(Vec::new()),
            FamilySpec::Builtin(Builtin::Forests) => Some(vec![Graph::cycle(3)]),
            FamilySpec::Builtin(Builtin::Trees) => None,
        }
    }

    pub fn member(&self, g: &Graph) -> Result<bool> {
        match &self.spec {
            FamilySpec::Builtin(Builtin::All) => Ok(true),
            FamilySpec::Builtin(Builtin::Forests) => Ok(is_forest(g)),
            FamilySpec::Builtin(Builtin::Trees) => Ok(is_forest(g) && component_count(g) <= 1),
            FamilySpec::ExcludedMinors(minors) => {
                for h in minors {
                    if has_minor_with(g, h, self.minor)? {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
        }
    }

    /// Whether membership is a cheap predicate (no minor search).
    pub fn is_builtin(&self) -> bool {
        matches!(self.spec, FamilySpec::Builtin(_))
    }
}

/// Membership with a memo keyed by canonical code, for excluded-minor
/// families where each test is a minor search.
pub struct MemberCache<'a> {
    fam: &'a GraphFamily,
    memo: BTreeMap<CanonicalCode, bool>,
}

impl<'a> MemberCache<'a> {
    pub fn new(fam: &'a GraphFamily) -> Self {
        MemberCache {
            fam,
            memo: BTreeMap::new(),
        }
    }

    pub fn family(&self) -> &'a GraphFamily {
        self.fam
    }

    pub fn member(&mut self, g: &Graph) -> Result<bool> {
        if self.fam.is_builtin() {
            return self.fam.member(g);
        }
        if let Some(minors) = self.fam.excluded_minors() {
            if minors.iter().all(|h| h.edge_count() > g.edge_count() || h.n() > g.n()) {
                return Ok(true);
            }
        }
        let code = canonicalize(g)?;
        if let Some(&v) = self.memo.get(&code) {
            return Ok(v);
        }
        let v = self.fam.member(g)?;
        self.memo.insert(code, v);
        Ok(v)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict<C> {
    HoldsUpTo(usize),
    Counterexample(C),
}

impl<C> Verdict<C> {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::HoldsUpTo(_))
    }
}

fn check_cap(n_max: usize) -> Result<()> {
    if n_max > ENUMERATION_CAP {
        return Err(Error::CapExceeded {
            what: "verification order",
            limit: ENUMERATION_CAP,
            got: n_max,
        });
    }
    Ok(())
}

/// Member `g` plus a cross-component pair `(u, v)` with `g + uv` outside the
/// family.
pub type BridgeCounterexample = (Graph, usize, usize);

/// Bridge-addability over all members with at most `n_max` vertices. The
/// first counterexample by (order, edge mask, pair) is reported.
pub fn verify_bridge_addable(fam: &GraphFamily, n_max: usize) -> Result<Verdict<BridgeCounterexample>> {
    check_cap(n_max)?;
    let mut cache = MemberCache::new(fam);
    for n in 0..=n_max {
        if let Some(cx) = bridge_addable_scan(&mut cache, n, 0..1u64 << Graph::pair_count(n))? {
            return Ok(Verdict::Counterexample(cx));
        }
    }
    Ok(Verdict::HoldsUpTo(n_max))
}

/// Bridge-addability restricted to edge masks in `masks` on `n` vertices.
pub fn bridge_addable_scan(
    cache: &mut MemberCache<'_>,
    n: usize,
    masks: core::ops::Range<u64>,
) -> Result<Option<BridgeCounterexample>> {
    for mask in masks {
        let g = Graph::from_edge_mask(n, mask)?;
        if !cache.member(&g)? {
            continue;
        }
        let label = component_labels(&g);
        for u in 0..n {
            for v in u + 1..n {
                if label[u] == label[v] {
                    continue;
                }
                let mut g2 = g.clone();
                g2.add_edge(u, v);
                if !cache.member(&g2)? {
                    return Ok(Some((g, u, v)));
                }
            }
        }
    }
    Ok(None)
}

/// Decomposability in both directions: a graph is a member iff each of its
/// components is.
pub fn verify_decomposable(fam: &GraphFamily, n_max: usize) -> Result<Verdict<Graph>> {
    check_cap(n_max)?;
    let mut cache = MemberCache::new(fam);
    for n in 0..=n_max {
        if let Some(cx) = decomposable_scan(&mut cache, n, 0..1u64 << Graph::pair_count(n))? {
            return Ok(Verdict::Counterexample(cx));
        }
    }
    Ok(Verdict::HoldsUpTo(n_max))
}

pub fn decomposable_scan(cache: &mut MemberCache<'_>, n: usize, masks: core::ops::Range<u64>) -> Result<Option<Graph>> {
    for mask in masks {
        let g = Graph::from_edge_mask(n, mask)?;
        let whole = cache.member(&g)?;
        let mut parts = true;
        for comp in components(&g) {
            if !cache.member(&g.induced(&comp))? {
                parts = false;
                break;
            }
        }
        if whole != parts {
            return Ok(Some(g));
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrimReport {
    /// Direct check of `g ∈ fam ⇔ core(g) ∈ fam` over all graphs.
    pub direct: Verdict<Graph>,
    /// Minimum degree of every excluded minor at least 2; `None` when the
    /// family has no excluded-minor description.
    pub shortcut: Option<bool>,
}

impl TrimReport {
    pub fn trimmable(&self) -> bool {
        self.direct.holds()
    }

    pub fn agree(&self) -> bool {
        self.shortcut.is_none_or(|s| s == self.direct.holds())
    }
}

pub fn verify_trimmable(fam: &GraphFamily, n_max: usize) -> Result<TrimReport> {
    check_cap(n_max)?;
    let shortcut = fam
        .excluded_minors()
        .map(|ms| ms.iter().all(|h| h.min_degree().is_some_and(|d| d >= 2)));
    let mut cache = MemberCache::new(fam);
    let mut direct = Verdict::HoldsUpTo(n_max);
    'outer: for n in 0..=n_max {
        for g in labelled_graphs(n)? {
            let core = two_core(&g).0;
            if cache.member(&g)? != cache.member(&core)? {
                direct = Verdict::Counterexample(g);
                break 'outer;
            }
        }
    }
    Ok(TrimReport { direct, shortcut })
}

/// Addability as the conjunction of the two verified closure properties.
pub fn verify_addable(fam: &GraphFamily, n_max: usize) -> Result<bool> {
    Ok(verify_bridge_addable(fam, n_max)?.holds() && verify_decomposable(fam, n_max)?.holds())
}

/// Whether every excluded minor is 2-connected; `None` without an
/// excluded-minor description.
pub fn excluded_minors_biconnected(fam: &GraphFamily) -> Option<bool> {
    fam.excluded_minors().map(|ms| ms.iter().all(is_biconnected))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Limited {
    WithK(usize),
    NotLimitedUpTo(usize),
}

/// Least `k <= k_max` with `k·h` outside the family.
pub fn limited_at_scale(h: &Graph, fam: &GraphFamily, k_max: usize) -> Result<Limited> {
    if !fam.member(h)? {
        return Err(Error::invalid("limited_at_scale needs a member graph"));
    }
    for k in 1..=k_max {
        if !fam.member(&h.multiple(k))? {
            return Ok(Limited::WithK(k));
        }
    }
    Ok(Limited::NotLimitedUpTo(k_max))
}

/// Whether `g ∪ h` is a member for every member `g` on at most `n_max`
/// vertices; the first failing `g` (by order, then edge mask) otherwise.
pub fn freely_addable_at_scale(h: &Graph, fam: &GraphFamily, n_max: usize) -> Result<Verdict<Graph>> {
    check_cap(n_max)?;
    let mut cache = MemberCache::new(fam);
    for n in 0..=n_max {
        for g in labelled_graphs(n)? {
            if cache.member(&g)? && !cache.member(&g.disjoint_union(h))? {
                return Ok(Verdict::Counterexample(g));
            }
        }
    }
    Ok(Verdict::HoldsUpTo(n_max))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Dichotomy {
    FreelyAddable,
    Limited(usize),
    Undetermined,
    /// Tested as both freely addable and limited; impossible for a correct
    /// membership oracle once the scale covers `(k-1)·h`.
    Conflict(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DichotomyEntry {
    pub code: CanonicalCode,
    pub graph: Graph,
    pub class: Dichotomy,
}

/// Classifies every unlabelled member on at most `n_max` vertices.
pub fn dichotomy_scan(fam: &GraphFamily, n_max: usize, k_max: usize) -> Result<Vec<DichotomyEntry>> {
    check_cap(n_max)?;
    let mut cache = MemberCache::new(fam);
    let mut members = Vec::new();
    for n in 0..=n_max {
        for g in unlabelled_graphs(n)? {
            if cache.member(&g)? {
                members.push(g);
            }
        }
    }
    let mut out = Vec::new();
    for h in members.iter().filter(|g| g.n() > 0) {
        let mut freely = true;
        for g in &members {
            if !cache.member(&g.disjoint_union(h))? {
                freely = false;
                break;
            }
        }
        let mut limited = None;
        for k in 2..=k_max {
            if !cache.member(&h.multiple(k))? {
                limited = Some(k);
                break;
            }
        }
        let class = match (freely, limited) {
            (true, None) => Dichotomy::FreelyAddable,
            (false, Some(k)) => Dichotomy::Limited(k),
            (false, None) => Dichotomy::Undetermined,
            (true, Some(k)) => Dichotomy::Conflict(k),
        };
        out.push(DichotomyEntry {
            code: canonicalize(h)?,
            graph: h.clone(),
            class,
        });
    }
    Ok(out)
}

impl core::fmt::Display for Flag {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(match self {
            Flag::True => "true",
            Flag::False => "false",
            Flag::Unknown => "unknown",
        })
    }
}

impl core::str::FromStr for Flag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "true" => Ok(Flag::True),
            "false" => Ok(Flag::False),
            "unknown" => Ok(Flag::Unknown),
            _ => Err(Error::Invalid(format!("bad flag value {s:?}"))),
        }
    }
}

impl core::fmt::Display for Builtin {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(match self {
            Builtin::All => "all",
            Builtin::Forests => "forests",
            Builtin::Trees => "trees",
        })
    }
}
