//! Exhaustive search for 3-cubes by divisor pairs.
//!
//! For `a0 = p²` and `a1 = q² - p²`, every other part of a cube has the
//! form `a = r² - a0` with `r = (a1/d - d)/2` for a divisor `d` of `a1`
//! with `d² < a1`: the two conditions `a0 + a` and `a0 + a1 + a` being
//! squares are then automatic. A pair of such radii gives a cube exactly
//! when `c1 = r_i² + r_j² - a0` and `c2 = c1 + a1` are both squares.

mod checkpoint;
mod counts;
mod fit;
mod pairs;

pub use checkpoint::{journal_path, load_checkpoint, store_checkpoint, JournalEntry};
pub use counts::{count_h2, count_tables, extendable_pairs, CountRow};
pub use fit::{fit_power_law, FitError};
pub use pairs::{extend4_scan, find_same_prefix_pairs, PrefixGroup};

use std::collections::BTreeMap;
use std::ops::ControlFlow;
use std::path::PathBuf;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::arith::{factorize, isqrt_u64, merge_factors, small_divisors_of, square_root_u128};
use crate::cube::{verify_cube, CubeTuple, Witness};

/// Largest `a1_max` accepted; keeps every intermediate inside `u128`.
pub const A1_LIMIT: u64 = 1 << 40;
/// Largest `a0_max` accepted.
pub const A0_LIMIT: u64 = 1 << 60;

#[derive(Debug, Error)]
pub enum SearchError {
    #[error("bound {name} = {value} exceeds the supported limit {limit}")]
    BoundTooLarge { name: &'static str, value: u64, limit: u64 },
    #[error("worker_count must be at least 1")]
    NoWorkers,
    #[error("invalid divisor input: {0}")]
    BadDivisor(String),
    #[error("checkpoint I/O: {0}")]
    Io(#[from] std::io::Error),
    #[error("malformed checkpoint {path}: {reason}")]
    Checkpoint { path: PathBuf, reason: String },
    #[error("search interrupted after p = {p_completed}")]
    Interrupted { p_completed: u64 },
    #[error("thread pool: {0}")]
    Pool(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchConfig {
    pub a0_max: u64,
    pub a1_max: u64,
    pub entry_max: Option<u64>,
    pub reduced_only: bool,
    pub worker_count: usize,
    pub checkpoint_path: Option<PathBuf>,
}

impl SearchConfig {
    pub fn new(a0_max: u64, a1_max: u64) -> Self {
        SearchConfig {
            a0_max,
            a1_max,
            entry_max: None,
            reduced_only: false,
            worker_count: 1,
            checkpoint_path: None,
        }
    }

    /// All four entries bounded by `n`.
    pub fn with_entry_max(n: u64) -> Self {
        SearchConfig {
            entry_max: Some(n),
            ..SearchConfig::new(n, n)
        }
    }

    pub fn reduced_only(mut self, yes: bool) -> Self {
        self.reduced_only = yes;
        self
    }

    pub fn workers(mut self, n: usize) -> Self {
        self.worker_count = n;
        self
    }

    pub fn checkpoint(mut self, path: impl Into<PathBuf>) -> Self {
        self.checkpoint_path = Some(path.into());
        self
    }

    fn validate(&self) -> Result<(), SearchError> {
        if self.a1_max > A1_LIMIT {
            return Err(SearchError::BoundTooLarge {
                name: "a1_max",
                value: self.a1_max,
                limit: A1_LIMIT,
            });
        }
        if self.a0_max > A0_LIMIT {
            return Err(SearchError::BoundTooLarge {
                name: "a0_max",
                value: self.a0_max,
                limit: A0_LIMIT,
            });
        }
        if self.worker_count == 0 {
            return Err(SearchError::NoWorkers);
        }
        Ok(())
    }

    fn effective_a0_max(&self) -> u64 {
        self.entry_max.map_or(self.a0_max, |e| e.min(self.a0_max))
    }

    fn effective_a1_max(&self) -> u64 {
        self.entry_max.map_or(self.a1_max, |e| e.min(self.a1_max))
    }

    /// Inclusive range of `p` values scanned.
    pub fn p_max(&self) -> u64 {
        isqrt_u64(self.effective_a0_max())
    }
}

/// Search coordinates a cube was found at.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Provenance {
    pub p: u64,
    pub q: u64,
    pub di: u64,
    pub dj: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CubeRecord {
    /// Oriented cube: `a0` the smallest element, `0 < a1 ≤ a2 ≤ a3`.
    pub cube: CubeTuple,
    pub witness: Witness,
    pub reduced: bool,
    pub provenance: Provenance,
}

impl CubeRecord {
    pub(crate) fn from_parts(a0: u64, parts: [u128; 3], provenance: Provenance) -> Self {
        let cube = CubeTuple::new(a0, parts.map(BigInt::from));
        let witness = verify_cube(&cube).expect("search emits verified cubes");
        let reduced = cube.gcd() == BigInt::from(1);
        CubeRecord {
            cube,
            witness,
            reduced,
            provenance,
        }
    }

    /// Sort key `(a0 + a1 + a2 + a3, a0, a1, a2, a3)`.
    pub fn sort_key(&self) -> (BigInt, BigInt, Vec<BigInt>) {
        (self.cube.total(), self.cube.a0.clone(), self.cube.parts.clone())
    }

    pub fn max_entry(&self) -> BigInt {
        self.cube.entries().max().cloned().unwrap_or_default()
    }
}

/// A candidate third part `r² - a0` obtained from divisor `d` of `a1`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Radius {
    pub d: u64,
    pub part: u128,
}

/// Radii for `a1 = q² - p²` (`q > p`), keeping only positive parts.
pub(crate) fn radii(p: u64, q: u64) -> Vec<Radius> {
    let a0 = p as u128 * p as u128;
    let a1 = (q * q - p * p) as u128;
    let factors = if p == 0 {
        let f = factorize(q);
        merge_factors(&f, &f)
    } else {
        merge_factors(&factorize(q - p), &factorize(q + p))
    };
    small_divisors_of(a1 as u64, &factors)
        .into_iter()
        .filter_map(|d| {
            let co = a1 / d as u128;
            let diff = co - d as u128;
            if !diff.is_multiple_of(2) {
                return None;
            }
            let r = diff / 2;
            let rr = r * r;
            (rr > a0).then(|| Radius {
                d,
                part: rr - a0,
            })
        })
        .collect()
}

/// Squareness of `c1 = r_i² + r_j² - a0` and `c2 = c1 + a1`.
#[inline]
pub(crate) fn pair_closes(a0: u128, a1: u128, ri: &Radius, rj: &Radius) -> bool {
    // parts are positive, so c1 > a0 ≥ 0
    let c1 = ri.part + rj.part + a0;
    square_root_u128(c1).is_some() && square_root_u128(c1 + a1).is_some()
}

/// `c1(i, j)` and `c2(i, j)` for a divisor pair, or `None` on a parity failure.
pub fn c1c2(
    a0: &BigInt,
    a1: &BigInt,
    di: &BigInt,
    dj: &BigInt,
) -> Result<Option<(BigInt, BigInt)>, SearchError> {
    if !a1.is_positive() || !di.is_positive() || !dj.is_positive() {
        return Err(SearchError::BadDivisor("a1, di, dj must be positive".into()));
    }
    if di > dj {
        return Err(SearchError::BadDivisor(format!("di = {di} > dj = {dj}")));
    }
    for d in [di, dj] {
        if !(a1 % d).is_zero() {
            return Err(SearchError::BadDivisor(format!("{d} does not divide {a1}")));
        }
        if d * d >= *a1 {
            return Err(SearchError::BadDivisor(format!("{d}² is not below {a1}")));
        }
    }
    let radius = |d: &BigInt| {
        let diff = a1 / d - d;
        diff.is_even().then(|| diff / 2)
    };
    let (Some(ri), Some(rj)) = (radius(di), radius(dj)) else {
        return Ok(None);
    };
    let c1 = &ri * &ri + &rj * &rj - a0;
    let c2 = a1 + &c1;
    Ok(Some((c1, c2)))
}

/// All cubes found with base `a0 = p²`, deduplicated, in provenance order.
pub(crate) fn scan_p(p: u64, cfg: &SearchConfig) -> Vec<CubeRecord> {
    let a0 = p as u128 * p as u128;
    let a1_max = cfg.effective_a1_max() as u128;
    let entry_max = cfg.entry_max.map(u128::from);
    let mut found: BTreeMap<[u128; 3], Provenance> = BTreeMap::new();
    let mut q = p + 1;
    loop {
        let a1 = q as u128 * q as u128 - a0;
        if a1 > a1_max {
            break;
        }
        let rs: Vec<Radius> = radii(p, q)
            .into_iter()
            .filter(|r| entry_max.is_none_or(|m| r.part <= m))
            .collect();
        for (i, ri) in rs.iter().enumerate() {
            for rj in &rs[i..] {
                if !pair_closes(a0, a1, ri, rj) {
                    continue;
                }
                let mut parts = [a1, ri.part, rj.part];
                parts.sort_unstable();
                if cfg.reduced_only {
                    let g = parts.iter().fold(a0, |g, &x| g.gcd(&x));
                    if g != 1 {
                        continue;
                    }
                }
                found.entry(parts).or_insert(Provenance {
                    p,
                    q,
                    di: ri.d,
                    dj: rj.d,
                });
            }
        }
        q += 1;
    }
    let mut out: Vec<CubeRecord> = found
        .into_iter()
        .map(|(parts, prov)| CubeRecord::from_parts(p * p, parts, prov))
        .collect();
    out.sort_by_key(|r| r.provenance);
    out
}

/// Runs `f` over `ps`, possibly on several workers, returning results in input order.
pub(crate) fn map_ordered<T: Send>(
    ps: &[u64],
    workers: usize,
    f: impl Fn(u64) -> T + Sync + Send,
) -> Result<Vec<T>, SearchError> {
    #[cfg(feature = "parallel")]
    if workers > 1 {
        use rayon::prelude::*;
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .map_err(|e| SearchError::Pool(e.to_string()))?;
        return Ok(pool.install(|| ps.par_iter().map(|&p| f(p)).collect()));
    }
    let _ = workers;
    Ok(ps.iter().map(|&p| f(p)).collect())
}

fn sort_records(records: &mut [CubeRecord]) {
    records.sort_by_cached_key(|r| r.sort_key());
}

/// Exhaustive search; output sorted by `(sum, a0, a1, a2, a3)`.
pub fn search_cubes(cfg: &SearchConfig) -> Result<Vec<CubeRecord>, SearchError> {
    search_cubes_with(cfg, |_| ControlFlow::Continue(()))
}

/// Like [`search_cubes`], calling `progress` after each completed `p`.
///
/// Returning `Break` stops the search with [`SearchError::Interrupted`];
/// when a checkpoint path is configured the state on disk is complete up
/// to the reported `p`, and a later call resumes from there.
pub fn search_cubes_with(
    cfg: &SearchConfig,
    mut progress: impl FnMut(u64) -> ControlFlow<()>,
) -> Result<Vec<CubeRecord>, SearchError> {
    cfg.validate()?;
    let p_max = cfg.p_max();
    if cfg.effective_a1_max() == 0 {
        return Ok(Vec::new());
    }

    let mut records = Vec::new();
    let mut next_p = 0u64;
    let mut journal = None;
    if let Some(path) = &cfg.checkpoint_path {
        let (done, kept) = checkpoint::resume(path, cfg)?;
        if let Some(done) = done {
            next_p = done + 1;
        }
        records = kept;
        journal = Some(checkpoint::Journal::open(path, &records)?);
    }

    let batch = (cfg.worker_count * 8).max(1) as u64;
    while next_p <= p_max {
        let end = (next_p + batch - 1).min(p_max);
        let ps: Vec<u64> = (next_p..=end).collect();
        let results = map_ordered(&ps, cfg.worker_count, |p| scan_p(p, cfg))?;
        for (p, found) in ps.into_iter().zip(results) {
            if let (Some(j), Some(path)) = (journal.as_mut(), &cfg.checkpoint_path) {
                j.append(&found)?;
                store_checkpoint(path, p)?;
            }
            records.extend(found);
            if progress(p).is_break() {
                return Err(SearchError::Interrupted { p_completed: p });
            }
        }
        next_p = end + 1;
    }
    sort_records(&mut records);
    Ok(records)
}

/// Reduced cubes with `a0 = n²` and smallest part at most `a1_max`.
pub fn search_fixed_a0(n: u64, a1_max: u64) -> Result<Vec<CubeRecord>, SearchError> {
    let cfg = SearchConfig::new(n * n, a1_max).reduced_only(true);
    cfg.validate()?;
    let mut records = scan_p(n, &cfg);
    sort_records(&mut records);
    Ok(records)
}

impl CubeRecord {
    /// Entries as `u64` when they fit.
    pub fn entries_u64(&self) -> Option<[u64; 4]> {
        let e: Vec<u64> = self.cube.entries().map(|x| x.to_u64()).collect::<Option<_>>()?;
        e.try_into().ok()
    }
}
