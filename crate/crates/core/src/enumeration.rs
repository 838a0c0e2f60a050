//! Exact weighted counting over all labelled graphs of a given order.
//!
//! One sweep over the `2^(n(n-1)/2)` edge masks records, for every member,
//! the statistics the weighting and the derived checks need. Any weighting is
//! then evaluated exactly from those counts, so a family slice is enumerated
//! once no matter how many weightings are asked for.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::Range;

use crate::canon::{automorphism_count, canonicalize, CanonicalCode};
use crate::error::{Error, Result};
use crate::families::{verify_trimmable, Flag, GraphFamily, MemberCache};
use crate::graph::Graph;
use crate::scalar::{binomial, factorial, falling, Scalar};
use crate::structure::{bridge_partition, component_count, components, core_size, frag_size, is_connected};
use crate::weight::{weight, Weighting};

/// Default largest order for exhaustive sweeps (2^21 edge masks).
pub const ENUMERATION_CAP: usize = 7;
/// Largest order accepted with an explicit override (2^28 edge masks).
pub const ENUMERATION_HARD_CAP: usize = 8;

fn check_order(n: usize, cap: usize) -> Result<()> {
    let limit = cap.min(ENUMERATION_HARD_CAP);
    if n > limit {
        return Err(Error::CapExceeded {
            what: "enumeration order",
            limit,
            got: n,
        });
    }
    Ok(())
}

/// All labelled graphs on `n` vertices in edge-mask order.
pub fn labelled_graphs(n: usize) -> Result<impl Iterator<Item = Graph>> {
    check_order(n, ENUMERATION_HARD_CAP)?;
    Ok((0..1u64 << Graph::pair_count(n)).map(move |m| Graph::from_edge_mask(n, m).expect("mask in range")))
}

/// One representative (least edge mask) per isomorphism class on `n`
/// vertices, ordered by canonical code.
pub fn unlabelled_graphs(n: usize) -> Result<Vec<Graph>> {
    let mut reps: BTreeMap<CanonicalCode, Graph> = BTreeMap::new();
    for g in labelled_graphs(n)? {
        let code = canonicalize(&g)?;
        reps.entry(code).or_insert(g);
    }
    Ok(reps.into_values().collect())
}

/// Per-graph statistics recorded during a sweep.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GraphStats {
    pub bridges: u8,
    pub others: u8,
    pub components: u8,
    pub core: u8,
    pub frag: u8,
}

impl GraphStats {
    pub fn of(g: &Graph) -> Self {
        let (e0, e1) = bridge_partition(g);
        GraphStats {
            bridges: e0 as u8,
            others: e1 as u8,
            components: component_count(g) as u8,
            core: core_size(g) as u8,
            frag: frag_size(g) as u8,
        }
    }

    pub fn edges(&self) -> usize {
        self.bridges as usize + self.others as usize
    }

    fn weight<T: Scalar>(&self, w: &Weighting<T>) -> T {
        w.eval(self.bridges as usize, self.others as usize, self.components as usize)
    }
}

/// Multiset of [`GraphStats`] over the members of a family on `n` vertices.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SliceCounts {
    pub n: usize,
    pub counts: BTreeMap<GraphStats, u64>,
}

impl SliceCounts {
    pub fn new(n: usize) -> Self {
        SliceCounts {
            n,
            counts: BTreeMap::new(),
        }
    }

    pub fn merge(&mut self, other: &SliceCounts) {
        debug_assert_eq!(self.n, other.n);
        for (k, v) in &other.counts {
            *self.counts.entry(*k).or_insert(0) += v;
        }
    }

    pub fn members(&self) -> u64 {
        self.counts.values().sum()
    }

    /// Σ τ(G) over members satisfying `keep`.
    pub fn weighted<T: Scalar>(&self, w: &Weighting<T>, keep: impl Fn(&GraphStats) -> bool) -> T {
        let mut total = T::zero();
        for (s, &count) in &self.counts {
            if keep(s) {
                total = total + T::from_u64(count) * s.weight(w);
            }
        }
        total
    }

    /// τ(𝒜ₙ).
    pub fn tau_all<T: Scalar>(&self, w: &Weighting<T>) -> T {
        self.weighted(w, |_| true)
    }

    /// τ(𝒞ₙ), the connected members.
    pub fn tau_connected<T: Scalar>(&self, w: &Weighting<T>) -> T {
        self.weighted(w, |s| s.components == 1)
    }

    /// τ(ℬₙ), connected members of minimum degree at least 2.
    pub fn tau_core<T: Scalar>(&self, w: &Weighting<T>) -> T {
        let n = self.n;
        self.weighted(w, |s| s.components == 1 && s.core as usize == n && n > 0)
    }

    /// Σ frag(G)·τ(G) over members.
    pub fn frag_weighted<T: Scalar>(&self, w: &Weighting<T>) -> T {
        let mut total = T::zero();
        for (s, &count) in &self.counts {
            total = total + T::from_u64(count * s.frag as u64) * s.weight(w);
        }
        total
    }

    /// Σ τ(G) over connected members whose 2-core has `k` vertices.
    pub fn tau_connected_core<T: Scalar>(&self, w: &Weighting<T>, k: usize) -> T {
        self.weighted(w, |s| s.components == 1 && s.core as usize == k)
    }
}

/// Sweeps the edge masks in `masks`, recording members only.
pub fn count_slice_range(cache: &mut MemberCache<'_>, n: usize, masks: Range<u64>) -> Result<SliceCounts> {
    let mut out = SliceCounts::new(n);
    for mask in masks {
        let g = Graph::from_edge_mask(n, mask)?;
        if cache.member(&g)? {
            *out.counts.entry(GraphStats::of(&g)).or_insert(0) += 1;
        }
    }
    Ok(out)
}

/// Full sweep of order `n` with an explicit order cap (at most 8).
pub fn count_slice_with_cap(fam: &GraphFamily, n: usize, cap: usize) -> Result<SliceCounts> {
    check_order(n, cap)?;
    let mut cache = MemberCache::new(fam);
    count_slice_range(&mut cache, n, 0..1u64 << Graph::pair_count(n))
}

pub fn count_slice(fam: &GraphFamily, n: usize) -> Result<SliceCounts> {
    count_slice_with_cap(fam, n, ENUMERATION_CAP)
}

/// Exact `(τ(𝒜ₙ), τ(𝒞ₙ), τ(ℬₙ))`.
pub fn brute_force_tau<T: Scalar>(fam: &GraphFamily, w: &Weighting<T>, n: usize) -> Result<(T, T, T)> {
    let counts = count_slice(fam, n)?;
    Ok((counts.tau_all(w), counts.tau_connected(w), counts.tau_core(w)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    BruteForce,
    EgfLift,
    ClosedForm,
}

/// τ(𝒜ₙ), τ(𝒞ₙ), τ(ℬₙ) for n = 0..=N, with the method behind each row.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightTable<T> {
    pub family: String,
    pub weighting: Weighting<T>,
    pub a: Vec<T>,
    pub c: Vec<T>,
    pub b: Vec<T>,
    pub method: Vec<Method>,
}

impl<T: Scalar> WeightTable<T> {
    /// Brute-force rows `0..=n_max` from precomputed slices.
    pub fn from_slices(family: &str, w: &Weighting<T>, slices: &[SliceCounts]) -> Self {
        WeightTable {
            family: family.into(),
            weighting: w.clone(),
            a: slices.iter().map(|s| s.tau_all(w)).collect(),
            c: slices.iter().map(|s| s.tau_connected(w)).collect(),
            b: slices.iter().map(|s| s.tau_core(w)).collect(),
            method: vec![Method::BruteForce; slices.len()],
        }
    }

    pub fn brute_force(fam: &GraphFamily, w: &Weighting<T>, n_max: usize) -> Result<Self> {
        let slices = (0..=n_max).map(|n| count_slice(fam, n)).collect::<Result<Vec<_>>>()?;
        Ok(WeightTable::from_slices(fam.name(), w, &slices))
    }

    /// Forests from Cayley's formula and the exponential formula; `b` is
    /// zero throughout.
    pub fn forests_closed_form(w: &Weighting<T>, n_max: usize) -> Result<Self> {
        if !w.is_diagonal() {
            return Err(Error::invalid("closed forms are for the diagonal weighting"));
        }
        let c: Vec<T> = (0..=n_max).map(|n| tree_weight(w, n)).collect();
        let a = egf_lift(&c, n_max)?;
        let mut method = vec![Method::EgfLift; n_max + 1];
        method[0] = Method::ClosedForm;
        Ok(WeightTable {
            family: "forests".into(),
            weighting: w.clone(),
            a,
            c,
            b: vec![T::zero(); n_max + 1],
            method,
        })
    }

    pub fn len(&self) -> usize {
        self.a.len()
    }

    pub fn is_empty(&self) -> bool {
        self.a.is_empty()
    }

    pub fn ratios(&self) -> Vec<Option<T>> {
        ratio_sequence(&self.a)
    }

    /// (aₙ/n!)^{1/n} for n ≥ 1.
    pub fn growth_estimates(&self) -> Vec<Option<f64>> {
        (0..self.a.len())
            .map(|n| {
                if n == 0 || !(self.a[n] > T::zero()) {
                    return None;
                }
                let scaled = self.a[n].clone() / factorial::<T>(n);
                Some(libm::pow(scaled.to_f64(), 1.0 / n as f64))
            })
            .collect()
    }
}

/// Weighted count of trees on `n` labelled vertices: n^{n-2} λ^{n-1} ν.
pub fn tree_weight<T: Scalar>(w: &Weighting<T>, n: usize) -> T {
    if n == 0 {
        return T::zero();
    }
    T::from_usize(n).powi(n as i64 - 2) * w.lambda().powi(n as i64 - 1) * w.nu().clone()
}

/// Coefficients of A = e^C from those of C (both as labelled counts, i.e.
/// n!·[xⁿ]), via n·aₙ = Σ_{k=1}^{n} k·C(n,k)·c_k·a_{n-k}.
pub fn egf_lift<T: Scalar>(c: &[T], n_max: usize) -> Result<Vec<T>> {
    if c.first().is_some_and(|c0| !c0.is_zero()) {
        return Err(Error::invalid("connected sequence must have c0 = 0"));
    }
    if c.len() <= n_max {
        return Err(Error::invalid("connected sequence shorter than the requested range"));
    }
    let mut a: Vec<T> = Vec::with_capacity(n_max + 1);
    a.push(T::one());
    // running binomial row C(n, k)
    let mut row: Vec<T> = vec![T::one()];
    for n in 1..=n_max {
        let mut next = Vec::with_capacity(n + 1);
        next.push(T::one());
        for k in 1..n {
            next.push(row[k - 1].clone() + row[k].clone());
        }
        next.push(T::one());
        row = next;
        let mut acc = T::zero();
        for k in 1..=n {
            if c[k].is_zero() || a[n - k].is_zero() {
                continue;
            }
            acc = acc + T::from_usize(k) * row[k].clone() * c[k].clone() * a[n - k].clone();
        }
        a.push(acc / T::from_usize(n));
    }
    Ok(a)
}

/// rₙ = n·aₙ₋₁/aₙ for n = 1..=N at index n; `None` where aₙ = 0. Index 0 is
/// always `None`.
pub fn ratio_sequence<T: Scalar>(a: &[T]) -> Vec<Option<T>> {
    let mut out = vec![None];
    for n in 1..a.len() {
        if a[n].is_zero() {
            out.push(None);
        } else {
            out.push(Some(T::from_usize(n) * a[n - 1].clone() / a[n].clone()));
        }
    }
    out
}

fn ensure_trimmable(fam: &GraphFamily, n: usize) -> Result<()> {
    match fam.flags().trimmable {
        Flag::True => Ok(()),
        Flag::False => Err(Error::NotTrimmable(fam.name().into())),
        Flag::Unknown => {
            let report = verify_trimmable(fam, n.min(ENUMERATION_CAP))?;
            if report.trimmable() {
                Ok(())
            } else {
                Err(Error::NotTrimmable(fam.name().into()))
            }
        }
    }
}

/// f(n,k) = C(n,k)·τ(ℬ_k)·λk·(λn)^{n-1-k}; f(n,n) = τ(ℬₙ). `b` holds τ(ℬ_j)
/// at index `j`.
pub fn f_nk<T: Scalar>(fam: &GraphFamily, w: &Weighting<T>, n: usize, k: usize, b: &[T]) -> Result<T> {
    if !(3 <= k && k <= n) {
        return Err(Error::invalid("f(n,k) needs 3 <= k <= n"));
    }
    if !w.is_diagonal() {
        return Err(Error::invalid("f(n,k) is defined for the diagonal weighting"));
    }
    ensure_trimmable(fam, n)?;
    let bk = b
        .get(k)
        .cloned()
        .ok_or_else(|| Error::invalid("core table does not reach k"))?;
    if k == n {
        return Ok(bk);
    }
    let lambda = w.lambda().clone();
    Ok(binomial::<T>(n, k)
        * bk
        * lambda.clone()
        * T::from_usize(k)
        * (lambda * T::from_usize(n)).powi(n as i64 - 1 - k as i64))
}

/// f(n,k) by direct summation over connected members with a k-vertex core.
pub fn f_nk_brute<T: Scalar>(slice: &SliceCounts, w: &Weighting<T>, k: usize) -> T {
    slice.tau_connected_core(w, k)
}

/// Σ_{k=3}^{n} f(n,k) + |𝒞₁|·n^{n-2}λ^{n-1}ν, which should equal τ(𝒞ₙ).
pub fn core_decomposition_total<T: Scalar>(fam: &GraphFamily, w: &Weighting<T>, n: usize, b: &[T]) -> Result<T> {
    let mut total = T::zero();
    for k in 3..=n {
        total = total + f_nk(fam, w, n, k, b)?;
    }
    if fam.member(&Graph::new(1))? {
        total = total + tree_weight(w, n);
    }
    Ok(total)
}

#[derive(Clone, Debug, PartialEq)]
pub struct GrowthReport {
    pub eta: f64,
    /// `(n, j)` pairs where aₙ < aₙ₋ⱼ·(n)ⱼ·η^j.
    pub violations: Vec<(usize, usize)>,
    /// Largest η satisfying every j at that n (index n); `None` for n < 2 or
    /// missing counts.
    pub max_eta: Vec<Option<f64>>,
}

/// Diagnostic for aₙ ≥ aₙ₋ⱼ (n)ⱼ η^j with g ≡ 1.
pub fn factorial_growth_check<T: Scalar>(a: &[T], eta: f64) -> GrowthReport {
    let mut violations = Vec::new();
    let mut max_eta = vec![None; a.len()];
    for n in 2..a.len() {
        let mut best = f64::INFINITY;
        let mut defined = true;
        for j in 1..n {
            let denom = a[n - j].clone() * falling::<T>(n, j);
            if denom.is_zero() {
                continue;
            }
            if a[n].is_zero() {
                defined = false;
                violations.push((n, j));
                continue;
            }
            let ratio = (a[n].clone() / denom).to_f64();
            if ratio < libm::pow(eta, j as f64) {
                violations.push((n, j));
            }
            best = best.min(libm::pow(ratio, 1.0 / j as f64));
        }
        if defined && best.is_finite() {
            max_eta[n] = Some(best);
        }
    }
    GrowthReport {
        eta,
        violations,
        max_eta,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusEntry {
    pub code: CanonicalCode,
    pub v: usize,
    pub e: usize,
    pub kappa: usize,
    pub aut: u64,
    pub representative: Graph,
}

/// Connected members up to isomorphism, ordered by (order, code).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct UnlabelledCensus {
    pub n_max: usize,
    pub entries: Vec<CensusEntry>,
}

impl UnlabelledCensus {
    pub fn from_entries(n_max: usize, mut entries: Vec<CensusEntry>) -> Self {
        entries.sort_by(|x, y| (x.v, &x.code).cmp(&(y.v, &y.code)));
        UnlabelledCensus { n_max, entries }
    }

    pub fn position(&self, code: &CanonicalCode) -> Option<usize> {
        self.entries.iter().position(|e| &e.code == code)
    }

    /// Σ_{H: v(H)=n} n!·λ^{e(H)}·ν^{κ(H)}/aut(H), the labelled weight of the
    /// order-n entries.
    pub fn labelled_weight<T: Scalar>(&self, w: &Weighting<T>, n: usize) -> T {
        let mut total = T::zero();
        for e in self.entries.iter().filter(|e| e.v == n) {
            total = total
                + factorial::<T>(n) * w.lambda().powi(e.e as i64) * w.nu().powi(e.kappa as i64)
                    / T::from_u64(e.aut);
        }
        total
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

fn census_entry(code: CanonicalCode, g: Graph) -> Result<CensusEntry> {
    Ok(CensusEntry {
        v: g.n(),
        e: g.edge_count(),
        kappa: component_count(&g),
        aut: automorphism_count(&g)?,
        code,
        representative: g,
    })
}

/// Census of connected members with 1..=n_max vertices. Representatives
/// are the least edge mask in each class.
pub fn build_census(fam: &GraphFamily, n_max: usize) -> Result<UnlabelledCensus> {
    check_order(n_max, ENUMERATION_CAP)?;
    let mut cache = MemberCache::new(fam);
    let mut entries = Vec::new();
    for n in 1..=n_max {
        let mut reps: BTreeMap<CanonicalCode, Graph> = BTreeMap::new();
        for g in labelled_graphs(n)? {
            if g.edge_count() + 1 < n || !is_connected(&g) {
                continue;
            }
            if !cache.member(&g)? {
                continue;
            }
            let code = canonicalize(&g)?;
            reps.entry(code).or_insert(g);
        }
        for (code, g) in reps {
            entries.push(census_entry(code, g)?);
        }
    }
    Ok(UnlabelledCensus::from_entries(n_max, entries))
}

/// κ(g, h): the number of components of `g` isomorphic to the connected
/// graph with code `code`.
pub fn component_multiplicity(g: &Graph, code: &CanonicalCode) -> Result<usize> {
    let target_n = code.vertex_count();
    let mut count = 0;
    for comp in components(g) {
        if comp.len() != target_n {
            continue;
        }
        if &canonicalize(&g.induced(&comp))? == code {
            count += 1;
        }
    }
    Ok(count)
}

/// Both sides of the falling-factorial moment identity
/// E[Π (κ(Rₙ,Hᵢ))_{kᵢ}] = Π μ(Hᵢ)^{kᵢ} · Π_{j=1}^{K} r_{n-j+1}/ρ.
#[derive(Clone, Debug, PartialEq)]
pub struct MomentCheck<T> {
    pub lhs: T,
    pub rhs: T,
    pub residual: T,
}

/// Evaluates both sides by enumeration of 𝒜ₙ. `a` must hold τ(𝒜ⱼ) for
/// j = 0..=n; `picks` are connected graphs with their factorial orders.
pub fn falling_moment_check<T: Scalar>(
    fam: &GraphFamily,
    w: &Weighting<T>,
    n: usize,
    a: &[T],
    picks: &[(Graph, usize)],
    rho: &T,
) -> Result<MomentCheck<T>> {
    check_order(n, ENUMERATION_CAP)?;
    if a.len() <= n {
        return Err(Error::invalid("weight table does not reach n"));
    }
    if a[n].is_zero() {
        return Err(Error::EmptyFamilySlice { n });
    }
    let mut keyed = Vec::with_capacity(picks.len());
    for (h, k) in picks {
        if !is_connected(h) {
            return Err(Error::invalid("moment picks must be connected"));
        }
        keyed.push((canonicalize(h)?, *k));
    }
    let mut cache = MemberCache::new(fam);
    let mut numer = T::zero();
    for g in labelled_graphs(n)? {
        if !cache.member(&g)? {
            continue;
        }
        let mut prod: u64 = 1;
        for (code, k) in &keyed {
            let m = component_multiplicity(&g, code)?;
            prod *= falling::<f64>(m, *k) as u64;
            if prod == 0 {
                break;
            }
        }
        if prod != 0 {
            numer = numer + T::from_u64(prod) * weight(&g, w);
        }
    }
    let lhs = numer / a[n].clone();

    let mut rhs = T::one();
    let mut big_k = 0;
    for (h, k) in picks {
        rhs = rhs * crate::asymptotics::mu(h, rho, w)?.powi(*k as i64);
        big_k += k * h.n();
    }
    if big_k > n {
        rhs = T::zero();
    } else {
        let r = ratio_sequence(&a[..=n]);
        for j in 1..=big_k {
            let rj = r[n - j + 1]
                .clone()
                .ok_or(Error::EmptyFamilySlice { n: n - j + 1 })?;
            rhs = rhs * rj / rho.clone();
        }
    }
    let residual = lhs.clone() - rhs.clone();
    Ok(MomentCheck { lhs, rhs, residual })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rational;
    use num_rational::BigRational;

    fn w(l: i64, nu: i64) -> Weighting<BigRational> {
        Weighting::new(rational(l, 1), rational(nu, 1)).unwrap()
    }

    #[test]
    fn brute_force_examples() {
        let (_, c5, _) = brute_force_tau(&GraphFamily::forests(), &w(2, 3), 5).unwrap();
        assert_eq!(c5, rational(6000, 1));
        let (a3, _, _) = brute_force_tau(&GraphFamily::forests(), &w(1, 1), 3).unwrap();
        assert_eq!(a3, rational(7, 1));
        for fam in [GraphFamily::forests(), GraphFamily::planar(), GraphFamily::all_graphs()] {
            let (a0, c0, b0) = brute_force_tau(&fam, &w(2, 3), 0).unwrap();
            assert_eq!((a0, c0, b0), (rational(1, 1), rational(0, 1), rational(0, 1)));
        }
        assert!(brute_force_tau(&GraphFamily::forests(), &w(1, 1), 8).is_err());
    }

    #[test]
    fn lift_examples() {
        let trees: Vec<BigRational> = (0..=4).map(|n| tree_weight(&w(1, 1), n)).collect();
        let a = egf_lift(&trees, 4).unwrap();
        assert_eq!(a[3], rational(7, 1));
        assert_eq!(a[4], rational(38, 1));
        let nu = rational(5, 2);
        let mut c = vec![rational(0, 1); 6];
        c[1] = nu.clone();
        let a = egf_lift(&c, 5).unwrap();
        for (n, an) in a.iter().enumerate() {
            assert_eq!(*an, nu.powi(n as i64));
        }
        assert!(egf_lift(&[rational(1, 1)], 0).is_err());
    }

    #[test]
    fn ratio_examples() {
        let trees: Vec<BigRational> = (0..=4).map(|n| tree_weight(&w(1, 1), n)).collect();
        assert_eq!(ratio_sequence(&trees)[4], Some(rational(3, 4)));
        let nu = rational(3, 1);
        let edgeless: Vec<BigRational> = (0..5).map(|n| nu.powi(n)).collect();
        let r = ratio_sequence(&edgeless);
        for (n, rn) in r.iter().enumerate().skip(1) {
            assert_eq!(rn.clone().unwrap(), rational(n as i64, 3));
        }
        assert_eq!(ratio_sequence(&[rational(1, 1), rational(0, 1)])[1], None);
    }

    #[test]
    fn f_nk_examples() {
        let all = GraphFamily::all_graphs();
        let slices: Vec<SliceCounts> = (0..=4).map(|n| count_slice(&all, n).unwrap()).collect();
        let lw = Weighting::new(rational(3, 2), rational(7, 1)).unwrap();
        let b: Vec<BigRational> = slices.iter().map(|s| s.tau_core(&lw)).collect();
        let f43 = f_nk(&all, &lw, 4, 3, &b).unwrap();
        assert_eq!(f43, rational(12, 1) * rational(3, 2).powi(4) * rational(7, 1));
        assert_eq!(f43, f_nk_brute(&slices[4], &lw, 3));
        assert_eq!(f_nk(&all, &lw, 4, 4, &b).unwrap(), b[4]);

        let forests = GraphFamily::forests();
        let fb: Vec<BigRational> = (0..=5).map(|n| count_slice(&forests, n).unwrap().tau_core(&lw)).collect();
        for k in 3..=5 {
            assert_eq!(f_nk(&forests, &lw, 5, k, &fb).unwrap(), rational(0, 1));
        }
        assert!(matches!(f_nk(&GraphFamily::trees(), &lw, 4, 3, &b), Err(Error::NotTrimmable(_))));
        assert!(f_nk(&all, &lw, 4, 2, &b).is_err());
    }

    #[test]
    fn growth_examples() {
        let trees: Vec<BigRational> = (0..=6).map(|n| tree_weight(&w(1, 1), n)).collect();
        let rep = factorial_growth_check(&trees, 0.3);
        assert!(!rep.violations.contains(&(6, 1)));

        let edgeless: Vec<BigRational> = (0..=6).map(|_| rational(1, 1)).collect();
        let rep = factorial_growth_check(&edgeless, 0.3);
        let etas: Vec<f64> = rep.max_eta.iter().flatten().copied().collect();
        assert!(etas.windows(2).all(|p| p[1] < p[0]));
        assert!(!rep.violations.is_empty());

        let table = WeightTable::forests_closed_form(&w(1, 1), 7).unwrap();
        assert!(factorial_growth_check(&table.a, 0.3).violations.is_empty());
    }

    #[test]
    fn census_examples() {
        let census = build_census(&GraphFamily::forests(), 3).unwrap();
        let summary: Vec<(usize, usize, u64)> = census.entries.iter().map(|e| (e.v, e.e, e.aut)).collect();
        assert_eq!(summary, vec![(1, 0, 1), (2, 1, 2), (3, 2, 2)]);
        let census = build_census(&GraphFamily::planar(), 3).unwrap();
        assert_eq!(census.len(), 4);
        assert!(census.entries.iter().any(|e| e.e == 3 && e.aut == 6));
        let forests = build_census(&GraphFamily::forests(), 3).unwrap();
        assert_eq!(forests.labelled_weight(&w(1, 1), 3), rational(3, 1));
    }

    #[test]
    fn moment_examples() {
        let fam = GraphFamily::forests();
        let uw = w(1, 1);
        let a: Vec<BigRational> = (0..=5).map(|n| count_slice(&fam, n).unwrap().tau_all(&uw)).collect();
        let rho = rational(1, 3);
        let m = falling_moment_check(&fam, &uw, 4, &a, &[(Graph::new(1), 1)], &rho).unwrap();
        assert_eq!(m.residual, rational(0, 1));
        let m = falling_moment_check(&fam, &uw, 4, &a, &[], &rho).unwrap();
        assert_eq!((m.lhs, m.rhs), (rational(1, 1), rational(1, 1)));
        let m = falling_moment_check(&fam, &uw, 5, &a, &[(Graph::path(2), 2)], &rho).unwrap();
        assert_eq!(m.residual, rational(0, 1));
    }
}
