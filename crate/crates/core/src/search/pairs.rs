use std::collections::BTreeMap;

use num_bigint::BigInt;

use super::CubeRecord;
use crate::arith::is_square;
use crate::cube::CubeTuple;

/// Cubes sharing `a0` and two parts, differing in the third.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrefixGroup {
    pub a0: BigInt,
    pub a1: BigInt,
    pub a2: BigInt,
    /// The differing parts, ascending.
    pub a3: Vec<BigInt>,
}

/// Groups records that agree in `a0` and in two of their three parts.
///
/// Every way of choosing the free part is tried, so a shared prefix is found
/// regardless of where the sorted order puts the differing part. Groups come
/// out sorted by `(a0, a1, a2)`.
pub fn find_same_prefix_pairs(records: &[CubeRecord]) -> Vec<PrefixGroup> {
    let mut groups: BTreeMap<(BigInt, BigInt, BigInt), Vec<BigInt>> = BTreeMap::new();
    for r in records {
        let p = &r.cube.parts;
        if p.len() != 3 {
            continue;
        }
        for free in 0..3 {
            let mut fixed: Vec<&BigInt> = (0..3).filter(|&i| i != free).map(|i| &p[i]).collect();
            fixed.sort();
            let key = (r.cube.a0.clone(), fixed[0].clone(), fixed[1].clone());
            let slot = groups.entry(key).or_default();
            if !slot.contains(&p[free]) {
                slot.push(p[free].clone());
            }
        }
    }
    groups
        .into_iter()
        .filter(|(_, v)| v.len() >= 2)
        .map(|((a0, a1, a2), mut a3)| {
            a3.sort();
            PrefixGroup { a0, a1, a2, a3 }
        })
        .collect()
}

/// Scores `(a0; a1, a2, a3, X)` for every `X` in `[x_min, x_max]`, keeping
/// rows with at least `min_score` square sums.
pub fn extend4_scan(base: &CubeTuple, x_min: i64, x_max: i64, min_score: usize) -> Vec<(i64, usize)> {
    let sums = base.subset_sums();
    let base_squares = sums.iter().filter(|s| is_square(s).is_some()).count();
    let mut out = Vec::new();
    if x_min > x_max {
        return out;
    }
    for x in x_min..=x_max {
        let bx = BigInt::from(x);
        // the lower half of the 16 sums is the base cube itself
        let mut score = base_squares;
        if score + sums.len() < min_score {
            continue;
        }
        for s in &sums {
            if is_square(&(s + &bx)).is_some() {
                score += 1;
            }
        }
        if score >= min_score {
            out.push((x, score));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::search::{CubeRecord, Provenance};

    fn rec(a0: u64, parts: [u128; 3]) -> CubeRecord {
        CubeRecord::from_parts(
            a0,
            parts,
            Provenance {
                p: 0,
                q: 0,
                di: 0,
                dj: 0,
            },
        )
    }

    #[test]
    fn prefix_groups_from_the_pair_table() {
        let recs = vec![
            rec(332929, [6726720, 6726720, 8322435]),
            rec(332929, [6726720, 6726720, 22381827]),
            rec(438244, [1004157, 1939520, 3013920]),
            rec(438244, [1004157, 1939520, 8791200]),
        ];
        let groups = find_same_prefix_pairs(&recs);
        let g = |a0: i64, a1: i64, a2: i64, a3: &[i64]| PrefixGroup {
            a0: a0.into(),
            a1: a1.into(),
            a2: a2.into(),
            a3: a3.iter().map(|&x| x.into()).collect(),
        };
        assert!(groups.contains(&g(332929, 6726720, 6726720, &[8322435, 22381827])));
        assert!(groups.contains(&g(438244, 1004157, 1939520, &[3013920, 8791200])));
        assert!(find_same_prefix_pairs(&[]).is_empty());
    }

    #[test]
    fn pseudo_four_cube_scores_fourteen() {
        let base = CubeTuple::new(6310i64 * 6310, [105386400i64, 105386400, 144545984]);
        let rows = extend4_scan(&base, -121397859, -121397859, 0);
        assert_eq!(rows, vec![(-121397859, 14)]);
    }

    #[test]
    fn zero_extension_is_trivially_full() {
        let base = CubeTuple::new(1, [528, 840, 840]);
        assert_eq!(extend4_scan(&base, 0, 0, 12), vec![(0, 16)]);
    }

    #[test]
    fn no_positive_extension_of_first_cube() {
        let base = CubeTuple::new(1, [528, 840, 840]);
        let rows = extend4_scan(&base, 1, 100_000, 12);
        assert!(rows.iter().all(|&(_, s)| s < 16));
    }
}
