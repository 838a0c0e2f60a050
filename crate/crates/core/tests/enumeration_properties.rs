use num_rational::BigRational;
use num_traits::Zero;
use taugraph_core::enumeration::{
    build_census, core_decomposition_total, count_slice, egf_lift, SliceCounts, WeightTable,
};
use taugraph_core::families::GraphFamily;
use taugraph_core::scalar::{rational, Scalar};
use taugraph_core::weight::Weighting;

fn grid() -> Vec<Weighting<BigRational>> {
    [(1, 1, 1, 1), (2, 1, 3, 1), (1, 2, 1, 1), (3, 2, 1, 3)]
        .iter()
        .map(|&(lp, lq, np, nq)| Weighting::new(rational(lp, lq), rational(np, nq)).unwrap())
        .collect()
}

fn slices(fam: &GraphFamily, n_max: usize) -> Vec<SliceCounts> {
    (0..=n_max).map(|n| count_slice(fam, n).unwrap()).collect()
}

#[test]
fn lift_of_connected_counts_matches_brute_force() {
    for fam in [GraphFamily::forests(), GraphFamily::all_graphs(), GraphFamily::series_parallel(), GraphFamily::planar()] {
        let s = slices(&fam, 6);
        for w in grid() {
            let t = WeightTable::from_slices(fam.name(), &w, &s);
            assert_eq!(egf_lift(&t.c, 6).unwrap(), t.a, "{}", fam.name());
        }
    }
}

#[test]
fn table_invariants_and_connectivity_bounds() {
    for fam in [GraphFamily::forests(), GraphFamily::series_parallel(), GraphFamily::all_graphs()] {
        let s = slices(&fam, 6);
        for w in grid() {
            let t = WeightTable::from_slices(fam.name(), &w, &s);
            assert_eq!(t.a[0], rational(1, 1));
            assert!(t.c[0].is_zero());
            let ratio = (w.nu() / w.lambda()).to_f64();
            for n in 1..t.len() {
                assert!(t.c[n] <= t.a[n]);
                // bridge-addable classes: Pr(connected) >= e^{-ν/λ}, E[frag] < 2ν/λ
                let p = (t.c[n].clone() / t.a[n].clone()).to_f64();
                assert!(p >= (-ratio).exp() - 1e-15, "{} n={n}", fam.name());
                let frag = (s[n].frag_weighted(&w) / t.a[n].clone()).to_f64();
                assert!(frag < 2.0 * ratio, "{} n={n}", fam.name());
            }
        }
    }
}

#[test]
fn counts_are_monotone_in_parameters() {
    let s = slices(&GraphFamily::planar(), 6);
    let base = Weighting::new(rational(1, 2), rational(1, 1)).unwrap();
    let more_lambda = Weighting::new(rational(3, 4), rational(1, 1)).unwrap();
    let more_nu = Weighting::new(rational(1, 2), rational(2, 1)).unwrap();
    for slice in &s {
        assert!(slice.tau_all(&base) <= slice.tau_all(&more_lambda));
        assert!(slice.tau_all(&base) <= slice.tau_all(&more_nu));
    }
}

#[test]
fn core_decomposition_reconstructs_connected_counts() {
    for fam in [GraphFamily::all_graphs(), GraphFamily::series_parallel(), GraphFamily::forests()] {
        let s = slices(&fam, 6);
        for w in grid() {
            let t = WeightTable::from_slices(fam.name(), &w, &s);
            for n in 1..=6 {
                assert_eq!(core_decomposition_total(&fam, &w, n, &t.b).unwrap(), t.c[n], "{} n={n}", fam.name());
            }
        }
    }
}

#[test]
fn census_reproduces_connected_counts() {
    for fam in [GraphFamily::forests(), GraphFamily::series_parallel()] {
        let census = build_census(&fam, 6).unwrap();
        let s = slices(&fam, 6);
        let mut codes: Vec<_> = census.entries.iter().map(|e| e.code.clone()).collect();
        codes.dedup();
        assert_eq!(codes.len(), census.len());
        for w in grid() {
            for n in 1..=6 {
                assert_eq!(census.labelled_weight(&w, n), s[n].tau_connected(&w), "{} n={n}", fam.name());
            }
        }
    }
}
