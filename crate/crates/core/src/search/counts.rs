//! Counting functions `H2(N)`, `H3(N)` and `C3(N)`.

use super::{map_ordered, pair_closes, radii, search_cubes, SearchConfig, SearchError};
use crate::arith::isqrt_u64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CountRow {
    pub n: u64,
    pub h3: u64,
    pub c3: u64,
}

/// Pairs `(a0, a1)` with `a0 < a1 ≤ n_max` that extend to some 3-cube with
/// positive `a2, a3`, sorted by `(a0, a1)`.
pub fn extendable_pairs(n_max: u64, workers: usize) -> Result<Vec<(u64, u64)>, SearchError> {
    let ps: Vec<u64> = (0..=isqrt_u64(n_max)).collect();
    let per_p = map_ordered(&ps, workers, |p| {
        let a0 = p as u128 * p as u128;
        let mut out = Vec::new();
        let mut q = p + 1;
        loop {
            let a1 = q as u128 * q as u128 - a0;
            if a1 > n_max as u128 {
                break;
            }
            if a1 > a0 {
                let rs = radii(p, q);
                let hit = rs
                    .iter()
                    .enumerate()
                    .any(|(i, ri)| rs[i..].iter().any(|rj| pair_closes(a0, a1, ri, rj)));
                if hit {
                    out.push((a0 as u64, a1 as u64));
                }
            }
            q += 1;
        }
        out
    })?;
    let mut pairs: Vec<(u64, u64)> = per_p.into_iter().flatten().collect();
    pairs.sort_unstable();
    Ok(pairs)
}

/// `(N, H3(N), C3(N))` for each threshold.
///
/// `H3(N)` counts reduced cubes with every entry in `[0, N]`; `C3(N)`
/// counts extendable pairs `(a0, a1)` with `a0 < a1 ≤ N`.
pub fn count_tables(thresholds: &[u64], workers: usize) -> Result<Vec<CountRow>, SearchError> {
    let Some(&n_max) = thresholds.iter().max() else {
        return Ok(Vec::new());
    };
    let cubes = search_cubes(&SearchConfig::with_entry_max(n_max).reduced_only(true).workers(workers))?;
    let maxima: Vec<u64> = cubes
        .iter()
        .map(|r| {
            let e = r.entries_u64().expect("entries are bounded by n_max");
            e.into_iter().max().unwrap_or(0)
        })
        .collect();
    let pairs = extendable_pairs(n_max, workers)?;
    Ok(thresholds
        .iter()
        .map(|&n| CountRow {
            n,
            h3: maxima.iter().filter(|&&m| m <= n).count() as u64,
            c3: pairs.iter().filter(|&&(_, a1)| a1 <= n).count() as u64,
        })
        .collect())
}

/// Number of 2-cubes `(a0; a1, a2)` with `a0` a square, `1 ≤ a1 ≤ a2 ≤ N`
/// and `a0 ≤ N`.
pub fn count_h2(n: u64) -> u64 {
    let mut count = 0u64;
    let mut p = 0u64;
    while p * p <= n {
        let a0 = p as u128 * p as u128;
        let mut q = p + 1;
        loop {
            let a1 = q as u128 * q as u128 - a0;
            if a1 > n as u128 {
                break;
            }
            count += radii(p, q)
                .iter()
                .filter(|r| r.part >= a1 && r.part <= n as u128)
                .count() as u64;
            q += 1;
        }
        p += 1;
    }
    count
}
