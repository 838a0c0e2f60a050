//! Edge-mask sweeps split into chunks and run on the rayon pool. Each chunk
//! keeps its own membership memo; results merge in chunk order, so output
//! does not depend on the thread count.

use std::ops::Range;

use rayon::prelude::*;
use taugraph_core::enumeration::{count_slice_range, SliceCounts, ENUMERATION_CAP, ENUMERATION_HARD_CAP};
use taugraph_core::families::{bridge_addable_scan, decomposable_scan, BridgeCounterexample, GraphFamily, MemberCache, Verdict};
use taugraph_core::{Error, Graph};

use crate::error::CliResult;

const CHUNK: u64 = 1 << 14;

fn chunks(n: usize) -> Vec<Range<u64>> {
    let total = 1u64 << Graph::pair_count(n);
    (0..total.div_ceil(CHUNK))
        .map(|i| i * CHUNK..((i + 1) * CHUNK).min(total))
        .collect()
}

fn check(n: usize, cap: usize) -> CliResult<()> {
    let limit = cap.min(ENUMERATION_HARD_CAP);
    if n > limit {
        return Err(Error::CapExceeded {
            what: "enumeration order",
            limit,
            got: n,
        }
        .into());
    }
    Ok(())
}

/// Member statistics for order `n`, with `cap` at most 8.
pub fn count_slice_par(fam: &GraphFamily, n: usize, cap: usize) -> CliResult<SliceCounts> {
    check(n, cap)?;
    let parts: Vec<SliceCounts> = chunks(n)
        .into_par_iter()
        .map(|r| {
            let mut cache = MemberCache::new(fam);
            count_slice_range(&mut cache, n, r)
        })
        .collect::<Result<_, _>>()?;
    let mut out = SliceCounts::new(n);
    for p in &parts {
        out.merge(p);
    }
    Ok(out)
}

/// Slices for orders `0..=n_max`.
pub fn count_slices_par(fam: &GraphFamily, n_max: usize, cap: usize) -> CliResult<Vec<SliceCounts>> {
    (0..=n_max).map(|n| count_slice_par(fam, n, cap)).collect()
}

/// First hit over the chunks of order `n`, by smallest edge mask.
fn first_hit<C: Send>(
    fam: &GraphFamily,
    n: usize,
    scan: impl Fn(&mut MemberCache<'_>, Range<u64>) -> Result<Option<C>, Error> + Sync,
) -> CliResult<Option<C>> {
    let hits: Vec<Option<C>> = chunks(n)
        .into_par_iter()
        .map(|r| {
            let mut cache = MemberCache::new(fam);
            scan(&mut cache, r)
        })
        .collect::<Result<_, _>>()?;
    Ok(hits.into_iter().flatten().next())
}

pub fn verify_bridge_addable_par(fam: &GraphFamily, n_max: usize) -> CliResult<Verdict<BridgeCounterexample>> {
    check(n_max, ENUMERATION_CAP)?;
    for n in 0..=n_max {
        if let Some(cx) = first_hit(fam, n, |c, r| bridge_addable_scan(c, n, r))? {
            return Ok(Verdict::Counterexample(cx));
        }
    }
    Ok(Verdict::HoldsUpTo(n_max))
}

pub fn verify_decomposable_par(fam: &GraphFamily, n_max: usize) -> CliResult<Verdict<Graph>> {
    check(n_max, ENUMERATION_CAP)?;
    for n in 0..=n_max {
        if let Some(cx) = first_hit(fam, n, |c, r| decomposable_scan(c, n, r))? {
            return Ok(Verdict::Counterexample(cx));
        }
    }
    Ok(Verdict::HoldsUpTo(n_max))
}
