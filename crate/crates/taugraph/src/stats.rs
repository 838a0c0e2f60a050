//! Goodness-of-fit and distance helpers for the empirical checks.

use std::collections::BTreeMap;

use statrs::distribution::{ChiSquared, ContinuousCDF, Discrete, DiscreteCDF, Poisson};

/// Pooled-bin χ² test result. `df` is zero when pooling leaves one bin, in
/// which case the test is vacuous and `p_value` is 1.
#[derive(Clone, Debug, PartialEq)]
pub struct ChiSquare {
    pub statistic: f64,
    pub df: usize,
    pub p_value: f64,
    /// `(first value, observed, expected)` per bin; the last bin is a tail.
    pub bins: Vec<(usize, f64, f64)>,
}

/// Minimum expected count per pooled bin.
pub const MIN_EXPECTED: f64 = 5.0;

/// χ² test of a histogram (`hist[k]` = draws equal to `k`) against
/// Poisson(`mean`) with the mean known in advance.
pub fn chi_square_poisson(hist: &[u64], mean: f64) -> ChiSquare {
    let draws: u64 = hist.iter().sum();
    let total = draws as f64;
    if mean <= 0.0 || draws == 0 {
        let all_zero = hist.iter().skip(1).all(|&c| c == 0);
        return ChiSquare {
            statistic: if all_zero { 0.0 } else { f64::INFINITY },
            df: 0,
            p_value: if all_zero { 1.0 } else { 0.0 },
            bins: vec![(0, total, total)],
        };
    }
    let po = Poisson::new(mean).expect("positive mean");
    let observed = |k: usize| hist.get(k).copied().unwrap_or(0) as f64;
    let mut bins: Vec<(usize, f64, f64)> = Vec::new();
    let (mut start, mut obs, mut exp) = (0usize, 0.0, 0.0);
    let mut cum = 0.0;
    let mut k = 0usize;
    loop {
        let p = po.pmf(k as u64);
        cum += p;
        obs += observed(k);
        exp += p * total;
        let tail_exp = (1.0 - cum).max(0.0) * total;
        k += 1;
        if exp >= MIN_EXPECTED && tail_exp >= MIN_EXPECTED {
            bins.push((start, obs, exp));
            start = k;
            obs = 0.0;
            exp = 0.0;
        } else if tail_exp < MIN_EXPECTED {
            let tail_obs: f64 = (k..hist.len()).map(observed).sum();
            bins.push((start, obs + tail_obs, exp + tail_exp));
            break;
        }
    }
    if bins.len() >= 2 {
        let last = bins.len() - 1;
        if bins[last].2 < MIN_EXPECTED {
            let (_, o, e) = bins.pop().expect("two bins");
            bins[last - 1].1 += o;
            bins[last - 1].2 += e;
        }
    }
    let statistic: f64 = bins.iter().map(|&(_, o, e)| (o - e) * (o - e) / e).sum();
    let df = bins.len().saturating_sub(1);
    let p_value = if df == 0 {
        1.0
    } else {
        ChiSquared::new(df as f64).expect("positive df").sf(statistic)
    };
    ChiSquare {
        statistic,
        df,
        p_value,
        bins,
    }
}

/// Total variation distance between two empirical distributions.
pub fn total_variation<K: Ord + Clone>(a: &BTreeMap<K, u64>, b: &BTreeMap<K, u64>) -> f64 {
    let na: u64 = a.values().sum();
    let nb: u64 = b.values().sum();
    let mut keys: Vec<&K> = a.keys().chain(b.keys()).collect();
    keys.sort();
    keys.dedup();
    0.5 * keys
        .into_iter()
        .map(|k| {
            let pa = a.get(k).copied().unwrap_or(0) as f64 / na as f64;
            let pb = b.get(k).copied().unwrap_or(0) as f64 / nb as f64;
            (pa - pb).abs()
        })
        .sum::<f64>()
}

/// Two-sided tail probability of `k` under Poisson(`mean`):
/// twice the smaller one-sided tail, capped at 1.
pub fn poisson_two_sided_p(k: u64, mean: f64) -> f64 {
    if mean <= 0.0 {
        return if k == 0 { 1.0 } else { 0.0 };
    }
    let po = Poisson::new(mean).expect("positive mean");
    let lower = po.cdf(k);
    let upper = if k == 0 { 1.0 } else { po.sf(k - 1) };
    (2.0 * lower.min(upper)).min(1.0)
}

/// Pearson correlation; `None` when either sample is constant.
pub fn correlation(x: &[f64], y: &[f64]) -> Option<f64> {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (a, b) in x.iter().zip(y) {
        sxy += (a - mx) * (b - my);
        sxx += (a - mx) * (a - mx);
        syy += (b - my) * (b - my);
    }
    if sxx == 0.0 || syy == 0.0 {
        return None;
    }
    Some(sxy / (sxx * syy).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_expectations_pass() {
        let mean = 1.3;
        let po = Poisson::new(mean).unwrap();
        let hist: Vec<u64> = (0..12).map(|k| (po.pmf(k) * 1e6).round() as u64).collect();
        let r = chi_square_poisson(&hist, mean);
        assert!(r.p_value > 0.99, "{r:?}");
        assert!(r.bins.iter().all(|b| b.2 >= MIN_EXPECTED));
    }

    #[test]
    fn wrong_mean_fails() {
        let po = Poisson::new(1.0).unwrap();
        let hist: Vec<u64> = (0..12).map(|k| (po.pmf(k) * 1e5).round() as u64).collect();
        assert!(chi_square_poisson(&hist, 1.1).p_value < 1e-6);
    }

    #[test]
    fn rare_counts_pool_to_two_bins() {
        let r = chi_square_poisson(&[99_990, 10], 1e-4);
        assert_eq!(r.df, 1);
        assert!(r.p_value > 0.5);
        let r = chi_square_poisson(&[100, 0], 1e-9);
        assert_eq!(r.df, 0);
    }

    #[test]
    fn poisson_tails() {
        assert_eq!(poisson_two_sided_p(0, 0.0), 1.0);
        assert!((poisson_two_sided_p(0, 0.1) - 1.0).abs() < 1e-12);
        assert!(poisson_two_sided_p(6, 0.1) < 1e-6);
        assert!(poisson_two_sided_p(0, 20.0) < 1e-7);
        assert!(poisson_two_sided_p(20, 20.0) > 0.5);
    }

    #[test]
    fn distances() {
        let a: BTreeMap<u8, u64> = [(0, 5), (1, 5)].into();
        let b: BTreeMap<u8, u64> = [(1, 10)].into();
        assert_eq!(total_variation(&a, &b), 0.5);
        assert_eq!(total_variation(&a, &a), 0.0);
        assert_eq!(correlation(&[1.0, 2.0, 3.0], &[2.0, 4.0, 6.0]), Some(1.0));
        assert_eq!(correlation(&[1.0, 1.0], &[2.0, 4.0]), None);
    }
}
