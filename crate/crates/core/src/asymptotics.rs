//! Constants and limits of the weighted model: root solvers for β and α,
//! component means μ(H), truncated generating-function evaluations and the
//! closed-form forest and pendant limits.
//!
//! The core fraction is the root x < 1 of x·e^{-x} = λ/γ with α = 1 - x. An
//! alternative statement of the same root as e^t/t = λγ agrees with it only
//! at λ = 1 and is not used.

use alloc::vec::Vec;
use core::f64::consts::{E, PI};

use crate::canon::automorphism_count;
use crate::enumeration::{egf_lift, UnlabelledCensus};
use crate::error::{Error, Result};
use crate::graph::{Graph, RootedGraph};
use crate::scalar::Scalar;
use crate::weight::{weight, Weighting};

const MAX_ITER: usize = 400;

/// μ(H) = ρ^{v(H)}·τ(H)/aut(H).
pub fn mu<T: Scalar>(h: &Graph, rho: &T, w: &Weighting<T>) -> Result<T> {
    if !(*rho > T::zero()) {
        return Err(Error::invalid("rho must be positive"));
    }
    let aut = automorphism_count(h)?;
    Ok(rho.powi(h.n() as i64) * weight(h, w) / T::from_u64(aut))
}

/// μ for a census entry, reusing its stored automorphism count.
pub fn mu_entry(entry: &crate::enumeration::CensusEntry, rho: f64, w: &Weighting<f64>) -> f64 {
    libm::pow(rho, entry.v as f64) * weight(&entry.representative, w) / entry.aut as f64
}

fn check_positive(x: f64, what: &'static str) -> Result<()> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(Error::Invalid(alloc::format!("{what} must be positive and finite")))
    }
}

/// Root β > λ of β·e^{λ/β} = γ, or `None` when γ ≤ λe.
pub fn solve_beta(gamma: f64, lambda: f64, tol: f64) -> Result<Option<f64>> {
    check_positive(gamma, "gamma")?;
    check_positive(lambda, "lambda")?;
    check_positive(tol, "tol")?;
    if gamma <= lambda * E {
        return Ok(None);
    }
    // β·e^{λ/β} is increasing on β > λ
    let g = |b: f64| b * libm::exp(lambda / b) - gamma;
    let mut lo = lambda * (1.0 + 1e-12);
    let mut hi = lambda * 1e6;
    let mut grow = 0;
    while g(hi) < 0.0 {
        hi *= 2.0;
        grow += 1;
        if grow > 200 {
            return Err(Error::NonConvergence("beta bracket"));
        }
    }
    if g(lo) > 0.0 {
        // γ only just above λe; the root sits at the bracket's lower end
        lo = lambda;
    }
    for _ in 0..MAX_ITER {
        let mid = 0.5 * (lo + hi);
        if g(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= 1e-9 * hi.max(1.0) {
            break;
        }
    }
    let mut b = 0.5 * (lo + hi);
    for _ in 0..8 {
        let d = libm::exp(lambda / b) * (1.0 - lambda / b);
        if d <= 0.0 {
            break;
        }
        let step = g(b) / d;
        let next = b - step;
        if !(next > lambda) {
            break;
        }
        b = next;
        if step.abs() <= f64::EPSILON * b {
            break;
        }
    }
    let floor = 8.0 * f64::EPSILON * gamma;
    if g(b).abs() > tol.max(floor) {
        return Err(Error::NonConvergence("beta residual above tolerance"));
    }
    Ok(Some(b))
}

/// α = 1 - x with x < 1 the root of x·e^{-x} = λ/γ; zero when γ ≤ λe.
/// Cross-checked against 1 - λ/β.
pub fn solve_alpha(gamma: f64, lambda: f64, tol: f64) -> Result<f64> {
    check_positive(gamma, "gamma")?;
    check_positive(lambda, "lambda")?;
    check_positive(tol, "tol")?;
    let Some(beta) = solve_beta(gamma, lambda, tol)? else {
        return Ok(0.0);
    };
    let target = lambda / gamma;
    let h = |x: f64| x * libm::exp(-x) - target;
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    for _ in 0..MAX_ITER {
        let mid = 0.5 * (lo + hi);
        if h(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= 1e-12 {
            break;
        }
    }
    let mut x = 0.5 * (lo + hi);
    for _ in 0..8 {
        let d = libm::exp(-x) * (1.0 - x);
        if d <= 0.0 {
            break;
        }
        let next = x - h(x) / d;
        if !(next > 0.0 && next < 1.0) {
            break;
        }
        x = next;
    }
    if h(x).abs() > tol.max(8.0 * f64::EPSILON) {
        return Err(Error::NonConvergence("alpha residual above tolerance"));
    }
    let alpha = 1.0 - x;
    if (alpha - (1.0 - lambda / beta)).abs() > 10.0 * tol.max(1e-12) {
        return Err(Error::NonConvergence("alpha disagrees with 1 - lambda/beta"));
    }
    Ok(alpha)
}

/// A truncated series value. `tail_bound`, when present, bounds the
/// distance from `value` to the full sum.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SeriesEvaluation {
    pub value: f64,
    pub terms_used: usize,
    pub tail_bound: Option<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TreeSeries {
    /// ν Σ n^{n-2} λ^{n-1} xⁿ/n!
    pub t: SeriesEvaluation,
    /// ν Σ n^{n-1} λ^{n-1} xⁿ/n!
    pub t_rooted: SeriesEvaluation,
    /// U - λx·e^{U} for U = λ·T°/ν; zero for the full series.
    pub u_check: f64,
}

/// R(z) = Σ n^{n-1} zⁿ/n!, the root in [0,1] of R = z·e^{R}, for 0 ≤ z ≤ 1/e.
pub fn tree_function(z: f64) -> Result<f64> {
    if !(z >= 0.0) || z > 1.0 / E * (1.0 + 1e-12) {
        return Err(Error::invalid("tree function argument outside [0, 1/e]"));
    }
    let z = z.min(1.0 / E);
    let f = |r: f64| r * libm::exp(-r) - z;
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    for _ in 0..MAX_ITER {
        let mid = 0.5 * (lo + hi);
        if f(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= 1e-15 {
            break;
        }
    }
    Ok(0.5 * (lo + hi))
}

fn radius_check(x: f64, lambda: f64) -> Result<()> {
    check_positive(x, "x")?;
    if x * E * lambda > 1.0 + 1e-12 {
        return Err(Error::invalid("x beyond the tree-series radius 1/(e·lambda)"));
    }
    Ok(())
}

/// Partial sums of the weighted unrooted and rooted tree series up to order
/// `n_terms`, with tail bounds from n! ≥ √(2πn)(n/e)ⁿ. Forest edges are all
/// bridges, so λ₀ is the edge parameter.
pub fn tree_series_eval(x: f64, w: &Weighting<f64>, n_terms: usize) -> Result<TreeSeries> {
    let lambda = *w.lambda0();
    let nu = *w.nu();
    radius_check(x, lambda)?;
    let (lnx, lnl) = (libm::log(x), libm::log(lambda));
    let (mut t, mut t_rooted) = (0.0f64, 0.0f64);
    for n in 1..=n_terms {
        let nf = n as f64;
        let ln = libm::log(nf);
        let base = (nf - 1.0) * lnl + nf * lnx - libm::lgamma(nf + 1.0);
        t += libm::exp((nf - 2.0) * ln + base);
        t_rooted += libm::exp((nf - 1.0) * ln + base);
    }
    t *= nu;
    t_rooted *= nu;
    let scale = nu / lambda / libm::sqrt(2.0 * PI);
    let (tail_t, tail_r) = if n_terms == 0 {
        (None, None)
    } else {
        let nn = n_terms as f64;
        (
            Some(scale * (2.0 / 3.0) * libm::pow(nn, -1.5)),
            Some(scale * 2.0 * libm::pow(nn, -0.5)),
        )
    };
    let u = lambda * t_rooted / nu;
    Ok(TreeSeries {
        t: SeriesEvaluation {
            value: t,
            terms_used: n_terms,
            tail_bound: tail_t,
        },
        t_rooted: SeriesEvaluation {
            value: t_rooted,
            terms_used: n_terms,
            tail_bound: tail_r,
        },
        u_check: u - lambda * x * libm::exp(u),
    })
}

/// Full sums (T, T°) of the tree series at `x`, from the tree function.
pub fn tree_series_closed(x: f64, w: &Weighting<f64>) -> Result<(f64, f64)> {
    let lambda = *w.lambda0();
    let nu = *w.nu();
    radius_check(x, lambda)?;
    let r = tree_function(lambda * x)?;
    Ok((nu / lambda * (r - r * r / 2.0), nu / lambda * r))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CensusSeries {
    /// Σ μ(H) over all entries.
    pub c: SeriesEvaluation,
    /// Σ μ(H) over the freely addable entries.
    pub d: SeriesEvaluation,
    /// e^{D}.
    pub f: SeriesEvaluation,
    /// Σ v(H)·μ(H)/ρ over the freely addable entries; a lower estimate.
    pub d_prime: SeriesEvaluation,
}

/// Truncated series over a census whose entries are all freely addable.
pub fn census_series_eval(census: &UnlabelledCensus, rho: f64, w: &Weighting<f64>) -> Result<CensusSeries> {
    census_series_eval_with(census, rho, w, |_| true)
}

/// Truncated series with `freely` selecting the entries that count towards
/// D. Tail bounds are given only when every entry is a tree and ρ is within
/// the tree-series radius; they come from the tree series beyond the census
/// order.
pub fn census_series_eval_with(
    census: &UnlabelledCensus,
    rho: f64,
    w: &Weighting<f64>,
    freely: impl Fn(&crate::enumeration::CensusEntry) -> bool,
) -> Result<CensusSeries> {
    check_positive(rho, "rho")?;
    let (mut c, mut d, mut dp) = (0.0f64, 0.0f64, 0.0f64);
    let mut d_terms = 0;
    for e in &census.entries {
        let m = mu_entry(e, rho, w);
        c += m;
        if freely(e) {
            d += m;
            dp += e.v as f64 * m / rho;
            d_terms += 1;
        }
    }
    let all_trees = census.entries.iter().all(|e| e.e + 1 == e.v && e.kappa == 1);
    let lambda = *w.lambda0();
    let (tail, tail_prime) = if all_trees && rho * E * lambda <= 1.0 + 1e-12 {
        let (t_full, r_full) = tree_series_closed(rho, w)?;
        let (mut t_part, mut r_part) = (0.0f64, 0.0f64);
        let nu = *w.nu();
        for n in 1..=census.n_max {
            let nf = n as f64;
            let base = nu * libm::exp((nf - 1.0) * libm::log(lambda) + nf * libm::log(rho) - libm::lgamma(nf + 1.0));
            t_part += base * libm::pow(nf, nf - 2.0);
            r_part += base * libm::pow(nf, nf - 1.0);
        }
        (Some((t_full - t_part).max(0.0)), Some(((r_full - r_part) / rho).max(0.0)))
    } else {
        (None, None)
    };
    let f_tail = tail.map(|t| libm::exp(d + t) - libm::exp(d));
    Ok(CensusSeries {
        c: SeriesEvaluation {
            value: c,
            terms_used: census.len(),
            tail_bound: tail,
        },
        d: SeriesEvaluation {
            value: d,
            terms_used: d_terms,
            tail_bound: tail,
        },
        f: SeriesEvaluation {
            value: libm::exp(d),
            terms_used: d_terms,
            tail_bound: f_tail,
        },
        d_prime: SeriesEvaluation {
            value: dp,
            terms_used: d_terms,
            tail_bound: tail_prime,
        },
    })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ForestLimits {
    /// lim Pr(connected) = e^{-ν/(2λ)}.
    pub conn_limit: f64,
    /// lim E[frag] = ν/λ.
    pub frag_mean_limit: f64,
    /// lim E[κ] = 1 + ν/(2λ).
    pub kappa_mean_limit: f64,
}

/// Closed-form limits for random forests. λ₀ is the edge parameter since
/// every forest edge is a bridge.
pub fn forest_limit_pack(w: &Weighting<f64>) -> ForestLimits {
    let ratio = *w.nu() / *w.lambda0();
    ForestLimits {
        conn_limit: libm::exp(-ratio / 2.0),
        frag_mean_limit: ratio,
        kappa_mean_limit: 1.0 + ratio / 2.0,
    }
}

/// Limiting density λ·λ^{e(H)}/(γ^{v(H)}·v(H)!) of pendant appearances.
pub fn pendant_limit(h: &RootedGraph, gamma: f64, lambda: f64) -> Result<f64> {
    check_positive(gamma, "gamma")?;
    check_positive(lambda, "lambda")?;
    let g = h.graph();
    let v = g.n() as f64;
    let ln = (g.edge_count() as f64 + 1.0) * libm::log(lambda) - v * libm::log(gamma) - libm::lgamma(v + 1.0);
    Ok(libm::exp(ln))
}

/// Solved constants of a weighted class.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AsymptoticConstants {
    pub lambda: f64,
    pub nu: f64,
    pub gamma: f64,
    pub rho: f64,
    /// `None` when γ ≤ λe.
    pub beta: Option<f64>,
    pub alpha: f64,
    /// |β·e^{λ/β} - γ|.
    pub beta_residual: Option<f64>,
    /// |x·e^{-x} - λ/γ| at x = 1 - α.
    pub alpha_residual: Option<f64>,
    pub tol: f64,
    /// e^{-D(ρ,τ)}.
    pub conn_limit: Option<f64>,
    /// ρ·D′(ρ,τ).
    pub frag_mean_limit: Option<f64>,
    /// e^{T(ρ,τ) - D(ρ,τ)}.
    pub core_conn_limit: Option<f64>,
}

impl AsymptoticConstants {
    /// β, α and their residuals from γ; the limits are left unset.
    pub fn solve(gamma: f64, lambda: f64, nu: f64, tol: f64) -> Result<Self> {
        check_positive(nu, "nu")?;
        let beta = solve_beta(gamma, lambda, tol)?;
        let alpha = solve_alpha(gamma, lambda, tol)?;
        let beta_residual = beta.map(|b| (b * libm::exp(lambda / b) - gamma).abs());
        let alpha_residual = beta.map(|_| {
            let x = 1.0 - alpha;
            (x * libm::exp(-x) - lambda / gamma).abs()
        });
        Ok(AsymptoticConstants {
            lambda,
            nu,
            gamma,
            rho: 1.0 / gamma,
            beta,
            alpha,
            beta_residual,
            alpha_residual,
            tol,
            conn_limit: None,
            frag_mean_limit: None,
            core_conn_limit: None,
        })
    }

    /// Forests: γ = eλ with the closed-form limits.
    pub fn forests(w: &Weighting<f64>, tol: f64) -> Result<Self> {
        let lambda = *w.lambda0();
        let mut c = AsymptoticConstants::solve(E * lambda, lambda, *w.nu(), tol)?;
        let pack = forest_limit_pack(w);
        c.conn_limit = Some(pack.conn_limit);
        c.frag_mean_limit = Some(pack.frag_mean_limit);
        Ok(c)
    }
}

/// Published constants for planar graphs with λ = ν = 1.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PlanarReference {
    pub gamma: f64,
    pub beta: f64,
    pub alpha: f64,
    pub exp_neg_d: f64,
    pub exp_t: f64,
    pub core_connected: f64,
}

pub const PLANAR_REFERENCE: PlanarReference = PlanarReference {
    gamma: 27.226878,
    beta: 26.207554,
    alpha: 0.961843,
    exp_neg_d: 0.963253,
    exp_t: 1.038138,
    core_connected: 0.999990,
};

/// Planar constants: β and α solved from the published γ, and the limits
/// taken from the published exponentials.
pub fn planar_constants() -> Result<AsymptoticConstants> {
    let r = PLANAR_REFERENCE;
    let mut c = AsymptoticConstants::solve(r.gamma, 1.0, 1.0, 1e-12)?;
    c.conn_limit = Some(r.exp_neg_d);
    c.core_conn_limit = Some(r.exp_neg_d * r.exp_t);
    Ok(c)
}

/// Limiting law of frag(Rₙ) for k = 0..=census.n_max:
/// ρᵏ·τ((ℱ)ₖ)/(k!·F). The census lists the connected freely addable
/// graphs; `f_value` is F(ρ,τ) or an upper estimate of it.
pub fn frag_size_distribution(
    census: &UnlabelledCensus,
    rho: f64,
    w: &Weighting<f64>,
    f_value: f64,
) -> Result<Vec<f64>> {
    check_positive(rho, "rho")?;
    let n_max = census.n_max;
    let connected: Vec<f64> = (0..=n_max).map(|k| census.labelled_weight(w, k)).collect();
    let labelled = egf_lift(&connected, n_max)?;
    let probs: Vec<f64> = labelled
        .iter()
        .enumerate()
        .map(|(k, a)| libm::exp(k as f64 * libm::log(rho) - libm::lgamma(k as f64 + 1.0)) * a / f_value)
        .collect();
    let partial: f64 = probs.iter().sum();
    if partial > 1.0 + 1e-9 {
        return Err(Error::invalid("F value is below the truncated partial sum"));
    }
    Ok(probs)
}
