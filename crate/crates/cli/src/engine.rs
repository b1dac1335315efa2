//! Batched homology runs with caching and the memory guard.

use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

use num_bigint::BigInt;
use rayon::prelude::*;

use qhom::homology::{homology_from_factors, invariant_factors, SnfStrategy};
use qhom::{ChainComplex, SparseIntMatrix};

use crate::args::Degrees;
use crate::cache::Cache;
use crate::record::{QuandleInfo, ResultRecord};
use crate::CliError;

/// Largest `|Q|^(n_max + 1)` accepted without `--force`.
pub const GUARD_DEFAULT: u128 = 20_000;
/// Largest `|Q|^(n_max + 1)` accepted at all.
pub const GUARD_FORCED: u128 = 10_000_000;

pub struct Job {
    pub info: QuandleInfo,
    pub theory: String,
    pub complex: ChainComplex,
}

pub fn check_guard(label: &str, size: usize, degrees: Degrees, force: bool) -> Result<(), CliError> {
    let estimate = (size as u128).saturating_pow(degrees.hi as u32 + 1);
    let limit = if force { GUARD_FORCED } else { GUARD_DEFAULT };
    if estimate <= limit {
        return Ok(());
    }
    let hint = if force { "" } else { " or pass --force" };
    Err(CliError::Input(format!(
        "{label}: degree {} needs |Q|^{} = {estimate} basis tuples, above the guard of {limit}; lower --degrees{hint}",
        degrees.hi,
        degrees.hi + 1
    )))
}

struct Boundary {
    matrix: SparseIntMatrix,
    factors: Vec<BigInt>,
    ms: u64,
}

/// One record per (job, degree), in job order then degree order. Cached
/// records are reused verbatim; the rest are computed together.
pub fn run_jobs(jobs: &[Job], degrees: Degrees, cache: &Cache) -> Result<Vec<ResultRecord>, CliError> {
    let keys: Vec<Vec<String>> = jobs
        .iter()
        .map(|job| {
            (degrees.lo..=degrees.hi)
                .map(|n| Cache::key(&job.info.table_sha256, &job.theory, n))
                .collect()
        })
        .collect();
    let cached: Vec<Vec<Option<ResultRecord>>> = keys
        .iter()
        .map(|ks| ks.iter().map(|k| cache.get(k)).collect())
        .collect();

    let mut needed = BTreeSet::new();
    for (j, recs) in cached.iter().enumerate() {
        for (k, rec) in recs.iter().enumerate() {
            if rec.is_none() {
                let n = degrees.lo + k;
                needed.insert((j, n));
                needed.insert((j, n + 1));
            }
        }
    }
    let tasks: Vec<(usize, usize)> = needed.into_iter().collect();
    let computed: Vec<Boundary> = tasks
        .par_iter()
        .map(|&(j, n)| {
            let start = Instant::now();
            let matrix = jobs[j].complex.boundary_matrix(n)?;
            let factors = invariant_factors(&matrix, SnfStrategy::Sparse);
            Ok(Boundary {
                matrix,
                factors,
                ms: start.elapsed().as_millis() as u64,
            })
        })
        .collect::<Result<_, qhom::Error>>()?;
    let boundaries: BTreeMap<(usize, usize), Boundary> = tasks.into_iter().zip(computed).collect();

    let mut out = Vec::new();
    for (j, job) in jobs.iter().enumerate() {
        for (k, rec) in cached[j].iter().enumerate() {
            if let Some(rec) = rec {
                out.push(rec.clone());
                continue;
            }
            let n = degrees.lo + k;
            let (b_out, b_in) = (&boundaries[&(j, n)], &boundaries[&(j, n + 1)]);
            b_out
                .matrix
                .check_composes_to_zero(&b_in.matrix)
                .map_err(|e| CliError::Input(format!("{} {} degree {n}: {e}", job.info.label, job.theory)))?;
            let group = homology_from_factors(b_out.matrix.cols(), &b_out.factors, &b_in.factors);
            let record = ResultRecord {
                quandle: job.info.clone(),
                theory: job.theory.clone(),
                degree: n,
                free_rank: group.free_rank,
                exponent: group.annihilation_exponent().cloned(),
                torsion: group.torsion,
                ms: b_out.ms + b_in.ms,
                engine: qhom::ENGINE_VERSION.to_string(),
            };
            cache.put(&keys[j][k], &record);
            out.push(record);
        }
    }
    Ok(out)
}
