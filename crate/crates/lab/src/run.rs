//! Parallel sweep over primes.

use anyhow::Result;
use congruence_core::sequences::SeqCache;
use congruence_core::suite::{plan, run_prime, summarize};
use congruence_core::{CheckRecord, Filter, PrimeRange, Statement, SuiteConfig, Summary};
use rayon::prelude::*;

type Acc = congruence_core::Result<(Vec<CheckRecord>, SeqCache)>;

/// Same records, in the same order, as the sequential `run_suite`, for any
/// `jobs`. Worker caches are merged into the returned cache.
pub fn run_parallel(
    catalog: &[Statement],
    filter: &Filter,
    range: &PrimeRange,
    cfg: &SuiteConfig,
    cache: SeqCache,
    jobs: Option<usize>,
) -> Result<(Summary, Vec<CheckRecord>, SeqCache)> {
    let units = plan(catalog, filter, range, cfg);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.unwrap_or(0))
        .build()?;
    let merged: Acc = pool.install(|| {
        units
            .par_iter()
            .fold(
                || Ok((Vec::new(), cache.clone())),
                |acc: Acc, (p, idxs)| {
                    let (mut recs, c) = acc?;
                    let (r, c) = run_prime(catalog, idxs, *p, cfg, c)?;
                    recs.extend(r);
                    Ok((recs, c))
                },
            )
            .reduce(
                || Ok((Vec::new(), SeqCache::new())),
                |a, b| {
                    let (mut ra, mut ca) = a?;
                    let (rb, cb) = b?;
                    ra.extend(rb);
                    ca.merge(cb);
                    Ok((ra, ca))
                },
            )
    });
    let (mut records, mut out_cache) = merged?;
    if units.is_empty() {
        out_cache = cache;
    }
    records.sort_by_key(|r| r.order);
    let summary = summarize(catalog, &records);
    Ok((summary, records, out_cache))
}
