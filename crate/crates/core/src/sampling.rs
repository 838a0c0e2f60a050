//! Samplers for the weighted random graph and its Boltzmann Poisson limit,
//! and the statistics that compare them with the limit laws.
//!
//! Every sampler draws from a ChaCha8 stream selected by a 64-bit seed and a
//! stream index, so results are reproducible across platforms.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Poisson};

use crate::asymptotics::{census_series_eval, mu_entry};
use crate::canon::{canonicalize, CanonicalCode};
use crate::enumeration::{labelled_graphs, UnlabelledCensus, ENUMERATION_CAP};
use crate::error::{Error, Result};
use crate::families::{GraphFamily, MemberCache};
use crate::graph::{Graph, RootedGraph};
use crate::pendant::pendant_appearances;
use crate::scalar::Scalar;
use crate::structure::{component_count, components, core_size, frag_size};
use crate::weight::{weight, Weighting};

pub const DEFAULT_BURN_IN: u64 = 100_000;
pub const DEFAULT_THIN: u64 = 10;

/// Generator for stream `stream` under `seed`.
pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Members of one family slice with cumulative weights, for repeated exact
/// draws.
#[derive(Clone, Debug)]
pub struct ExactSampler {
    n: usize,
    masks: Vec<u64>,
    cumulative: Vec<f64>,
}

impl ExactSampler {
    pub fn new<T: Scalar>(fam: &GraphFamily, w: &Weighting<T>, n: usize) -> Result<Self> {
        if n > ENUMERATION_CAP {
            return Err(Error::CapExceeded {
                what: "exact sampling order",
                limit: ENUMERATION_CAP,
                got: n,
            });
        }
        let wf = w.to_f64();
        let mut cache = MemberCache::new(fam);
        let mut masks = Vec::new();
        let mut cumulative = Vec::new();
        let mut total = 0.0;
        for g in labelled_graphs(n)? {
            if cache.member(&g)? {
                total += weight(&g, &wf);
                masks.push(g.edge_mask().expect("small graph"));
                cumulative.push(total);
            }
        }
        if masks.is_empty() || !(total > 0.0) {
            return Err(Error::EmptyFamilySlice { n });
        }
        Ok(ExactSampler { n, masks, cumulative })
    }

    pub fn members(&self) -> usize {
        self.masks.len()
    }

    pub fn draw(&self, rng: &mut impl Rng) -> Graph {
        let total = *self.cumulative.last().expect("non-empty");
        let u = rng.random::<f64>() * total;
        let i = self.cumulative.partition_point(|&c| c <= u).min(self.masks.len() - 1);
        Graph::from_edge_mask(self.n, self.masks[i]).expect("stored mask")
    }
}

/// i.i.d. draws with Pr(G) = τ(G)/τ(𝒜ₙ).
pub fn exact_sample<T: Scalar>(
    fam: &GraphFamily,
    w: &Weighting<T>,
    n: usize,
    seed: u64,
    draws: usize,
) -> Result<Vec<Graph>> {
    let sampler = ExactSampler::new(fam, w, n)?;
    let mut rng = stream_rng(seed, 0);
    Ok((0..draws).map(|_| sampler.draw(&mut rng)).collect())
}

/// Boltzmann Poisson sampler over a census of connected graphs.
#[derive(Clone, Debug)]
pub struct BoltzmannConfig<'a> {
    pub rho: f64,
    pub weighting: Weighting<f64>,
    pub census: &'a UnlabelledCensus,
    /// Bound on Σ μ(H) over graphs beyond the census, when one is known.
    pub truncated_mass_note: Option<f64>,
}

impl<'a> BoltzmannConfig<'a> {
    pub fn new(rho: f64, weighting: Weighting<f64>, census: &'a UnlabelledCensus) -> Result<Self> {
        let series = census_series_eval(census, rho, &weighting)?;
        Ok(BoltzmannConfig {
            rho,
            weighting,
            census,
            truncated_mass_note: series.c.tail_bound,
        })
    }

    /// μ(H) for each census entry, in census order.
    pub fn means(&self) -> Vec<f64> {
        self.census
            .entries
            .iter()
            .map(|e| mu_entry(e, self.rho, &self.weighting))
            .collect()
    }
}

/// One Boltzmann draw: the number of components isomorphic to each census
/// entry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoltzmannDraw {
    pub counts: Vec<u64>,
}

impl BoltzmannDraw {
    /// A labelled realisation: components in census order, consecutive
    /// labels.
    pub fn to_graph(&self, census: &UnlabelledCensus) -> Graph {
        let mut g = Graph::empty();
        for (entry, &k) in census.entries.iter().zip(&self.counts) {
            for _ in 0..k {
                g = g.disjoint_union(&entry.representative);
            }
        }
        g
    }

    pub fn vertex_count(&self, census: &UnlabelledCensus) -> usize {
        census.entries.iter().zip(&self.counts).map(|(e, &k)| e.v * k as usize).sum()
    }
}

/// Independent Poisson(μ(H)) component counts for each census entry.
pub fn boltzmann_poisson_sample(cfg: &BoltzmannConfig<'_>, seed: u64, draws: usize) -> Result<Vec<BoltzmannDraw>> {
    if cfg.census.is_empty() {
        return Err(Error::invalid("Boltzmann sampling needs a non-empty census"));
    }
    let dists = cfg
        .means()
        .into_iter()
        .map(|m| {
            if m == 0.0 {
                Ok(None)
            } else {
                Poisson::new(m)
                    .map(Some)
                    .map_err(|_| Error::invalid("component mean must be finite and positive"))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    let mut rng = stream_rng(seed, 0);
    Ok((0..draws)
        .map(|_| BoltzmannDraw {
            counts: dists
                .iter()
                .map(|d| d.as_ref().map_or(0, |d| d.sample(&mut rng) as u64))
                .collect(),
        })
        .collect())
}

/// Metropolis chain on a family slice: propose a uniform pair, toggle it,
/// reject non-members, accept with min(1, τ(new)/τ(old)).
pub struct Metropolis<'a> {
    cache: MemberCache<'a>,
    w: Weighting<f64>,
    state: Graph,
    state_weight: f64,
    pairs: Vec<(usize, usize)>,
    rng: ChaCha8Rng,
}

impl<'a> Metropolis<'a> {
    /// Starts from the edgeless graph.
    pub fn new(fam: &'a GraphFamily, w: &Weighting<f64>, n: usize, seed: u64) -> Result<Self> {
        let state = Graph::new(n);
        let mut cache = MemberCache::new(fam);
        if !cache.member(&state)? {
            return Err(Error::invalid("the edgeless graph is not a member"));
        }
        let pairs = (0..n).flat_map(|v| (0..v).map(move |u| (u, v))).collect();
        Ok(Metropolis {
            state_weight: weight(&state, w),
            cache,
            w: w.clone(),
            state,
            pairs,
            rng: stream_rng(seed, 0),
        })
    }

    pub fn state(&self) -> &Graph {
        &self.state
    }

    pub fn step(&mut self) -> Result<()> {
        if self.pairs.is_empty() {
            return Ok(());
        }
        let (u, v) = self.pairs[self.rng.random_range(0..self.pairs.len())];
        self.state.toggle_edge(u, v);
        if !self.cache.member(&self.state)? {
            self.state.toggle_edge(u, v);
            return Ok(());
        }
        let proposed = weight(&self.state, &self.w);
        let ratio = proposed / self.state_weight;
        if ratio >= 1.0 || self.rng.random::<f64>() < ratio {
            self.state_weight = proposed;
        } else {
            self.state.toggle_edge(u, v);
        }
        Ok(())
    }
}

/// `burn_in` steps, then one recorded state every `thin` steps over the next
/// `steps` steps.
pub fn mcmc_sample(
    fam: &GraphFamily,
    w: &Weighting<f64>,
    n: usize,
    steps: u64,
    burn_in: u64,
    thin: u64,
    seed: u64,
) -> Result<Vec<Graph>> {
    if thin == 0 {
        return Err(Error::invalid("thinning interval must be positive"));
    }
    let mut chain = Metropolis::new(fam, w, n, seed)?;
    for _ in 0..burn_in {
        chain.step()?;
    }
    let mut out = Vec::with_capacity((steps / thin) as usize);
    for i in 1..=steps {
        chain.step()?;
        if i % thin == 0 {
            out.push(chain.state().clone());
        }
    }
    Ok(out)
}

/// Exact transition matrix of the Metropolis chain on the members of order
/// `n`: `(states, p)` with `p[i][j]` the probability of moving from state
/// `i` to state `j`.
pub fn mcmc_transition_matrix<T: Scalar>(
    fam: &GraphFamily,
    w: &Weighting<T>,
    n: usize,
) -> Result<(Vec<Graph>, Vec<Vec<T>>)> {
    if n > 4 {
        return Err(Error::CapExceeded {
            what: "transition matrix order",
            limit: 4,
            got: n,
        });
    }
    let mut cache = MemberCache::new(fam);
    let mut states = Vec::new();
    let mut index = BTreeMap::new();
    for g in labelled_graphs(n)? {
        if cache.member(&g)? {
            index.insert(g.edge_mask().expect("small graph"), states.len());
            states.push(g);
        }
    }
    let pairs = Graph::pair_count(n);
    let m = states.len();
    let mut p = vec![vec![T::zero(); m]; m];
    if pairs == 0 {
        for (i, row) in p.iter_mut().enumerate() {
            row[i] = T::one();
        }
        return Ok((states, p));
    }
    let propose = T::one() / T::from_usize(pairs);
    for (i, g) in states.iter().enumerate() {
        let wg = weight(g, w);
        let mut stay = T::one();
        for bit in 0..pairs {
            let mask = g.edge_mask().expect("small graph") ^ (1u64 << bit);
            let Some(&j) = index.get(&mask) else { continue };
            let ratio = weight(&states[j], w) / wg.clone();
            let accept = if ratio >= T::one() { T::one() } else { ratio };
            let move_prob = propose.clone() * accept;
            stay = stay - move_prob.clone();
            p[i][j] = p[i][j].clone() + move_prob;
        }
        p[i][i] = p[i][i].clone() + stay;
    }
    Ok((states, p))
}

/// πP - π for π ∝ τ on the given states, one entry per state.
pub fn stationarity_residual<T: Scalar>(states: &[Graph], p: &[Vec<T>], w: &Weighting<T>) -> Vec<T> {
    let weights: Vec<T> = states.iter().map(|g| weight(g, w)).collect();
    let total = weights.iter().cloned().fold(T::zero(), |a, b| a + b);
    let pi: Vec<T> = weights.into_iter().map(|x| x / total.clone()).collect();
    (0..states.len())
        .map(|j| {
            let flow = (0..states.len()).fold(T::zero(), |acc, i| acc + pi[i].clone() * p[i][j].clone());
            flow - pi[j].clone()
        })
        .collect()
}

/// Uniform labelled trees on `n` vertices by decoding uniform parent
/// sequences.
pub fn random_tree_sample(n: usize, seed: u64, draws: usize) -> Result<Vec<Graph>> {
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    let mut rng = stream_rng(seed, 0);
    Ok((0..draws)
        .map(|_| {
            let code: Vec<usize> = (0..n.saturating_sub(2)).map(|_| rng.random_range(0..n)).collect();
            decode_parent_sequence(n, &code)
        })
        .collect())
}

/// Linear-time decoding of a sequence of `n - 2` labels into a tree.
pub fn decode_parent_sequence(n: usize, code: &[usize]) -> Graph {
    let mut g = Graph::new(n);
    if n < 2 {
        return g;
    }
    let mut degree = vec![1usize; n];
    for &x in code {
        degree[x] += 1;
    }
    let mut ptr = 0;
    while degree[ptr] != 1 {
        ptr += 1;
    }
    let mut leaf = ptr;
    for &x in code {
        g.add_edge(leaf, x);
        degree[x] -= 1;
        if x < ptr && degree[x] == 1 {
            leaf = x;
        } else {
            ptr += 1;
            while degree[ptr] != 1 {
                ptr += 1;
            }
            leaf = ptr;
        }
    }
    g.add_edge(leaf, n - 1);
    g
}

/// Empirical statistics over a sample. Sums rather than means are stored so
/// that statistics from separate workers merge exactly.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct SampleStats {
    pub draws: u64,
    /// Index κ.
    pub kappa_hist: Vec<u64>,
    /// Index frag(G).
    pub frag_hist: Vec<u64>,
    /// Index v(Core(G)).
    pub core_hist: Vec<u64>,
    pub core_frac_sum: f64,
    /// For each census code, a histogram of κ(G,H).
    pub comp_counts: BTreeMap<CanonicalCode, Vec<u64>>,
    /// Σ f_H(G)/v(G) per registered rooted graph.
    pub pendant_sums: Vec<f64>,
}

fn bump(hist: &mut Vec<u64>, at: usize) {
    if hist.len() <= at {
        hist.resize(at + 1, 0);
    }
    hist[at] += 1;
}

fn merge_hist(a: &mut Vec<u64>, b: &[u64]) {
    if a.len() < b.len() {
        a.resize(b.len(), 0);
    }
    for (x, y) in a.iter_mut().zip(b) {
        *x += y;
    }
}

impl SampleStats {
    pub fn conn_freq(&self) -> f64 {
        self.kappa_hist.get(1).copied().unwrap_or(0) as f64 / self.draws as f64
    }

    pub fn core_frac_mean(&self) -> f64 {
        self.core_frac_sum / self.draws as f64
    }

    pub fn frag_mean(&self) -> f64 {
        let s: u64 = self.frag_hist.iter().enumerate().map(|(k, &c)| k as u64 * c).sum();
        s as f64 / self.draws as f64
    }

    pub fn pendant_density(&self) -> Vec<f64> {
        self.pendant_sums.iter().map(|s| s / self.draws as f64).collect()
    }

    /// Mean of κ(G,H) for the census code `code`.
    pub fn component_mean(&self, code: &CanonicalCode) -> Option<f64> {
        let hist = self.comp_counts.get(code)?;
        let s: u64 = hist.iter().enumerate().map(|(k, &c)| k as u64 * c).sum();
        Some(s as f64 / self.draws as f64)
    }

    pub fn merge(&mut self, other: &SampleStats) {
        self.draws += other.draws;
        merge_hist(&mut self.kappa_hist, &other.kappa_hist);
        merge_hist(&mut self.frag_hist, &other.frag_hist);
        merge_hist(&mut self.core_hist, &other.core_hist);
        self.core_frac_sum += other.core_frac_sum;
        for (code, hist) in &other.comp_counts {
            merge_hist(self.comp_counts.entry(code.clone()).or_default(), hist);
        }
        if self.pendant_sums.len() < other.pendant_sums.len() {
            self.pendant_sums.resize(other.pendant_sums.len(), 0.0);
        }
        for (x, y) in self.pendant_sums.iter_mut().zip(&other.pendant_sums) {
            *x += y;
        }
    }
}

/// Statistics over `samples`. Component counts are kept for the codes of
/// `census` when one is given; components larger than the census order are
/// not canonicalised.
pub fn collect_stats(samples: &[Graph], rooted: &[RootedGraph], census: Option<&UnlabelledCensus>) -> Result<SampleStats> {
    let mut st = SampleStats {
        pendant_sums: vec![0.0; rooted.len()],
        ..SampleStats::default()
    };
    if let Some(c) = census {
        for e in &c.entries {
            st.comp_counts.insert(e.code.clone(), Vec::new());
        }
    }
    for g in samples {
        st.draws += 1;
        bump(&mut st.kappa_hist, component_count(g));
        bump(&mut st.frag_hist, frag_size(g));
        let core = core_size(g);
        bump(&mut st.core_hist, core);
        if g.n() > 0 {
            st.core_frac_sum += core as f64 / g.n() as f64;
        }
        if let Some(c) = census {
            let mut per: BTreeMap<&CanonicalCode, usize> = BTreeMap::new();
            for comp in components(g) {
                if comp.len() > c.n_max {
                    continue;
                }
                let code = canonicalize(&g.induced(&comp))?;
                if let Some((k, _)) = st.comp_counts.get_key_value(&code) {
                    *per.entry(k).or_insert(0) += 1;
                }
            }
            let counted: Vec<(CanonicalCode, usize)> = st
                .comp_counts
                .keys()
                .map(|k| (k.clone(), per.get(k).copied().unwrap_or(0)))
                .collect();
            for (k, m) in counted {
                bump(st.comp_counts.get_mut(&k).expect("registered code"), m);
            }
        }
        for (i, h) in rooted.iter().enumerate() {
            if h.graph().n() < g.n() {
                st.pendant_sums[i] += pendant_appearances(g, h) as f64 / g.n() as f64;
            }
        }
    }
    Ok(st)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rational;
    use num_rational::BigRational;

    #[test]
    fn streams_are_reproducible_and_distinct() {
        let a: u64 = stream_rng(7, 0).random();
        let b: u64 = stream_rng(7, 0).random();
        let c: u64 = stream_rng(7, 1).random();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn exact_examples() {
        let w = Weighting::<f64>::uniform();
        let one = exact_sample(&GraphFamily::forests(), &w, 1, 1, 20).unwrap();
        assert!(one.iter().all(|g| *g == Graph::new(1)));
        let s = ExactSampler::new(&GraphFamily::forests(), &w, 3).unwrap();
        assert_eq!(s.members(), 7);
        let draws = exact_sample(&GraphFamily::forests(), &w, 3, 5, 20_000).unwrap();
        assert!(draws.iter().all(|g| g.edge_count() < 3));
        let trees = exact_sample(&GraphFamily::trees(), &Weighting::new(2.0, 3.0).unwrap(), 3, 5, 30_000).unwrap();
        assert!(trees.iter().all(|g| g.edge_count() == 2));
        let p = trees.iter().filter(|g| g.has_edge(0, 1) && g.has_edge(1, 2)).count() as f64 / 30_000.0;
        let sigma = (1.0 / 3.0 * 2.0 / 3.0 / 30_000.0f64).sqrt();
        assert!((p - 1.0 / 3.0).abs() < 4.0 * sigma);
    }

    #[test]
    fn boltzmann_examples() {
        let census = crate::enumeration::build_census(&GraphFamily::forests(), 3).unwrap();
        let cfg = BoltzmannConfig::new(1e-9, Weighting::uniform(), &census).unwrap();
        let draws = boltzmann_poisson_sample(&cfg, 3, 1000).unwrap();
        assert!(draws.iter().all(|d| d.to_graph(&census).is_empty()));
        let empty = UnlabelledCensus::default();
        let cfg = BoltzmannConfig::new(0.3, Weighting::uniform(), &empty).unwrap();
        assert!(boltzmann_poisson_sample(&cfg, 3, 1).is_err());
    }

    #[test]
    fn metropolis_on_all_graphs_has_edge_bias() {
        let fam = GraphFamily::all_graphs();
        let w = Weighting::new(3.0, 1.0).unwrap();
        let draws = mcmc_sample(&fam, &w, 5, 200_000, 10_000, 20, 11).unwrap();
        let mean: f64 = draws.iter().map(|g| g.edge_count() as f64).sum::<f64>() / draws.len() as f64;
        assert!((mean / 10.0 - 0.75).abs() < 0.02, "{mean}");
    }

    #[test]
    fn transition_matrix_is_stationary() {
        let w = Weighting::new(rational(2, 1), rational(3, 5)).unwrap();
        for fam in [GraphFamily::forests(), GraphFamily::all_graphs()] {
            let (states, p) = mcmc_transition_matrix::<BigRational>(&fam, &w, 3).unwrap();
            for row in &p {
                let s = row.iter().cloned().fold(rational(0, 1), |a, b| a + b);
                assert_eq!(s, rational(1, 1));
            }
            assert!(stationarity_residual(&states, &p, &w).iter().all(|r| *r == rational(0, 1)));
        }
    }

    #[test]
    fn tree_decoding() {
        assert_eq!(random_tree_sample(2, 1, 3).unwrap(), vec![Graph::path(2); 3]);
        assert_eq!(random_tree_sample(1, 1, 1).unwrap(), vec![Graph::new(1)]);
        // every sequence of length n-2 decodes to a distinct tree
        let n = 5;
        let mut seen = alloc::collections::BTreeSet::new();
        for idx in 0..n * n * n {
            let code = [idx % n, idx / n % n, idx / n / n];
            let g = decode_parent_sequence(n, &code);
            assert!(crate::structure::is_connected(&g) && g.edge_count() == n - 1);
            seen.insert(g.edge_mask().unwrap());
        }
        assert_eq!(seen.len(), 125);
    }

    #[test]
    fn stats_on_connected_samples() {
        let samples = vec![Graph::path(3), Graph::cycle(3), Graph::star(2)];
        let k1 = RootedGraph::new(Graph::new(1), 0).unwrap();
        let st = collect_stats(&samples, &[k1], None).unwrap();
        assert_eq!(st.conn_freq(), 1.0);
        assert_eq!(st.frag_hist, vec![3]);
        assert_eq!(st.kappa_hist.iter().sum::<u64>(), st.draws);
        assert!((st.pendant_density()[0] - 4.0 / 9.0).abs() < 1e-12);

        let mut merged = st.clone();
        merged.merge(&st);
        assert_eq!(merged.draws, 6);
        assert_eq!(merged.conn_freq(), 1.0);
    }
}
