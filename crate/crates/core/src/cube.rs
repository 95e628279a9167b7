//! The Hilbert cube data model.
//!
//! A tuple `(a0; a1, ..., ad)` denotes the `2^d` subset sums
//! `a0 + Σ εᵢ aᵢ`. Subsets are indexed by the bit pattern of
//! `(ε₁, ..., ε_d)` with `ε₁` as the least significant bit, so for `d = 3`
//! the witness order is `(p, q, r, s, P, Q, R, S)`.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::arith::{gcd_all, is_square, square_part_root};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CubeError {
    #[error("operation needs dimension {expected}, tuple has dimension {found}")]
    Dimension { expected: usize, found: usize },
    #[error("tuple is not a Hilbert cube in the squares: {0}")]
    NotACube(Failure),
    #[error("psi scale must be positive")]
    BadScale,
    #[error("k must be at least 3, got {0}")]
    BadProgressionLength(u64),
}

/// A candidate `(a0; a1, ..., ad)`. Carries no validity claim.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CubeTuple {
    pub a0: BigInt,
    pub parts: Vec<BigInt>,
}

impl CubeTuple {
    pub fn new(a0: impl Into<BigInt>, parts: impl IntoIterator<Item = impl Into<BigInt>>) -> Self {
        CubeTuple {
            a0: a0.into(),
            parts: parts.into_iter().map(Into::into).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.parts.len()
    }

    /// `a0 + Σ_{i ∈ mask} a_i`, bit `i` of `mask` selecting `parts[i]`.
    pub fn subset_sum(&self, mask: usize) -> BigInt {
        let mut s = self.a0.clone();
        for (i, a) in self.parts.iter().enumerate() {
            if mask >> i & 1 == 1 {
                s += a;
            }
        }
        s
    }

    /// All `2^d` subset sums in binary-index order.
    pub fn subset_sums(&self) -> Vec<BigInt> {
        // build incrementally: sums for bit i are the previous block shifted by a_i
        let mut sums = vec![self.a0.clone()];
        for a in &self.parts {
            let shifted: Vec<BigInt> = sums.iter().map(|s| s + a).collect();
            sums.extend(shifted);
        }
        sums
    }

    /// Every entry, `a0` first.
    pub fn entries(&self) -> impl Iterator<Item = &BigInt> {
        std::iter::once(&self.a0).chain(self.parts.iter())
    }

    pub fn gcd(&self) -> BigInt {
        gcd_all(self.entries())
    }

    pub fn total(&self) -> BigInt {
        self.entries().sum()
    }
}

impl fmt::Display for CubeTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({};", self.a0)?;
        for (i, a) in self.parts.iter().enumerate() {
            write!(f, "{}{}", if i == 0 { " " } else { ", " }, a)?;
        }
        write!(f, ")")
    }
}

/// Square roots of the subset sums, binary-index order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub roots: Vec<BigInt>,
}

/// The first subset whose sum is not a square.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub mask: usize,
    pub sum: BigInt,
}

impl Failure {
    /// 1-based indices of the parts in the violating subset.
    pub fn subset(&self) -> Vec<usize> {
        (0..usize::BITS as usize)
            .filter(|i| self.mask >> i & 1 == 1)
            .map(|i| i + 1)
            .collect()
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = self.subset().iter().map(|i| format!("a{i}")).collect();
        let lhs = std::iter::once("a0".to_string()).chain(names).collect::<Vec<_>>().join("+");
        write!(f, "{lhs} = {} is not a square", self.sum)
    }
}

/// Checks all `2^d` subset sums; returns the roots or the first failing subset.
pub fn verify_cube(t: &CubeTuple) -> Result<Witness, Failure> {
    let mut roots = Vec::with_capacity(1 << t.dim());
    for (mask, sum) in t.subset_sums().into_iter().enumerate() {
        match is_square(&sum) {
            Some(r) => roots.push(r),
            None => return Err(Failure { mask, sum }),
        }
    }
    Ok(Witness { roots })
}

/// Number of square subset sums together with the masks that are not square.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Score {
    pub squares: usize,
    pub misses: Vec<usize>,
}

pub fn square_score(t: &CubeTuple) -> Score {
    let mut misses = Vec::new();
    let sums = t.subset_sums();
    for (mask, sum) in sums.iter().enumerate() {
        if is_square(sum).is_none() {
            misses.push(mask);
        }
    }
    Score {
        squares: sums.len() - misses.len(),
        misses,
    }
}

pub fn distinct_count(t: &CubeTuple) -> usize {
    t.subset_sums().into_iter().collect::<HashSet<_>>().len()
}

/// One generator of the symmetry group acting on 3-cubes, or a scaling.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GroupElement {
    /// `(a0, a1, a2, a3) ↦ (a0 + a1, -a1, a2, a3)`
    Phi1,
    /// `(a0, a1, a2, a3) ↦ (a0 + a2 + a3, a1, -a3, -a2)`
    Phi2,
    /// `(a0, a1, a2, a3) ↦ (a0, a_σ(1), a_σ(2), a_σ(3))`, σ given 0-based.
    Sigma([u8; 3]),
    /// Multiply every entry by `m²`.
    Psi(u64),
}

impl GroupElement {
    pub const SWAP_12: GroupElement = GroupElement::Sigma([1, 0, 2]);
    pub const SWAP_13: GroupElement = GroupElement::Sigma([2, 1, 0]);
    pub const SWAP_23: GroupElement = GroupElement::Sigma([0, 2, 1]);
    pub const CYCLE: GroupElement = GroupElement::Sigma([1, 2, 0]);
}

pub fn apply(g: GroupElement, t: &CubeTuple) -> Result<CubeTuple, CubeError> {
    if !matches!(g, GroupElement::Psi(_)) && t.dim() != 3 {
        return Err(CubeError::Dimension {
            expected: 3,
            found: t.dim(),
        });
    }
    let p = &t.parts;
    Ok(match g {
        GroupElement::Phi1 => CubeTuple {
            a0: &t.a0 + &p[0],
            parts: vec![-&p[0], p[1].clone(), p[2].clone()],
        },
        GroupElement::Phi2 => CubeTuple {
            a0: &t.a0 + &p[1] + &p[2],
            parts: vec![p[0].clone(), -&p[2], -&p[1]],
        },
        GroupElement::Sigma(s) => {
            let mut seen = [false; 3];
            for &i in &s {
                if i > 2 || std::mem::replace(&mut seen[i as usize], true) {
                    return Err(CubeError::Dimension {
                        expected: 3,
                        found: s.len(),
                    });
                }
            }
            CubeTuple {
                a0: t.a0.clone(),
                parts: s.iter().map(|&i| p[i as usize].clone()).collect(),
            }
        }
        GroupElement::Psi(m) => {
            if m == 0 {
                return Err(CubeError::BadScale);
            }
            let m2 = BigInt::from(m) * BigInt::from(m);
            CubeTuple {
                a0: &t.a0 * &m2,
                parts: p.iter().map(|a| a * &m2).collect(),
            }
        }
    })
}

/// The orbit of a 3-tuple under the group generated by φ₁, φ₂ and Σ₃.
///
/// The generated group is the full symmetry group of the 3-cube (a choice
/// of base vertex times a permutation of the axes), so a tuple with
/// pairwise distinct nonzero parts has 48 images.
pub fn orbit(t: &CubeTuple) -> Result<Vec<CubeTuple>, CubeError> {
    let gens = [
        GroupElement::Phi1,
        GroupElement::Phi2,
        GroupElement::SWAP_12,
        GroupElement::CYCLE,
    ];
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::new();
    seen.insert(t.clone());
    queue.push_back(t.clone());
    while let Some(cur) = queue.pop_front() {
        for g in gens {
            let next = apply(g, &cur)?;
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    Ok(seen.into_iter().collect())
}

/// Every word of the group as a sequence of generators, one per element.
///
/// Elements are enumerated by their action on a tuple with distinct
/// generic parts, so the list has exactly one word per group element.
pub fn group_words() -> Vec<Vec<GroupElement>> {
    let gens = [
        GroupElement::Phi1,
        GroupElement::Phi2,
        GroupElement::SWAP_12,
        GroupElement::CYCLE,
    ];
    let probe = CubeTuple::new(1000, [3, 50, 700]);
    let mut seen = BTreeSet::new();
    let mut words = Vec::new();
    let mut queue = VecDeque::new();
    seen.insert(probe.clone());
    queue.push_back((probe, Vec::new()));
    while let Some((cur, word)) = queue.pop_front() {
        words.push(word.clone());
        for g in gens {
            let next = apply(g, &cur).expect("probe has dimension 3");
            if seen.insert(next.clone()) {
                let mut w = word.clone();
                w.push(g);
                queue.push_back((next, w));
            }
        }
    }
    words
}

pub fn apply_word(word: &[GroupElement], t: &CubeTuple) -> Result<CubeTuple, CubeError> {
    word.iter().try_fold(t.clone(), |acc, &g| apply(g, &acc))
}

/// Result of [`canonicalize`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Canonical {
    pub cube: CubeTuple,
    /// gcd of all entries of `cube` is 1.
    pub reduced: bool,
    /// Some part is zero, so no representative has all parts positive.
    pub degenerate: bool,
    /// The `m` of the `ψ_m` that was divided out.
    pub scale: BigInt,
}

/// Orientation only: move the base to the smallest vertex and sort the parts.
///
/// Negating part `i` and adding it to `a0` is the action of φ₁ conjugated by
/// a permutation; it maps the cube onto itself. The result has every part
/// nonnegative and is the unique such representative up to permutation.
pub fn orient(t: &CubeTuple) -> CubeTuple {
    let mut a0 = t.a0.clone();
    let mut parts: Vec<BigInt> = t
        .parts
        .iter()
        .map(|a| {
            if a.is_negative() {
                a0 += a;
                -a
            } else {
                a.clone()
            }
        })
        .collect();
    parts.sort();
    CubeTuple { a0, parts }
}

/// Orbit representative with `0 < a1 ≤ a2 ≤ a3`, scaled down by the largest
/// `m²` dividing every entry.
pub fn canonicalize(t: &CubeTuple) -> Result<Canonical, CubeError> {
    if let Err(f) = verify_cube(t) {
        return Err(CubeError::NotACube(f));
    }
    let degenerate = t.parts.iter().any(Zero::is_zero);
    let oriented = if degenerate {
        let mut sorted = t.clone();
        sorted.parts.sort();
        sorted
    } else {
        orient(t)
    };
    let g = oriented.gcd();
    if g.is_zero() {
        return Ok(Canonical {
            cube: oriented,
            reduced: false,
            degenerate: true,
            scale: BigInt::one(),
        });
    }
    let m = square_part_root(&g);
    let m2 = &m * &m;
    let cube = CubeTuple {
        a0: &oriented.a0 / &m2,
        parts: oriented.parts.iter().map(|a| a / &m2).collect(),
    };
    let reduced = cube.gcd().is_one();
    Ok(Canonical {
        cube,
        reduced,
        degenerate,
        scale: m,
    })
}

/// `⌈C · (k/(k-1))^{d2}⌉`, the lower bound on the number of distinct
/// elements of a cube in a set without `k`-term progressions.
/// `d1` only names which `C` is passed; the bound depends on `d2` alone.
pub fn size_lower_bound(k: u64, _d1: u32, d2: u32, c_d1: u64) -> Result<BigInt, CubeError> {
    if k < 3 {
        return Err(CubeError::BadProgressionLength(k));
    }
    let ratio = BigRational::new(BigInt::from(k), BigInt::from(k - 1));
    let value = BigRational::from_integer(BigInt::from(c_d1)) * num_traits::pow(ratio, d2 as usize);
    Ok(value.ceil().to_integer())
}

/// `⌊(a1 - 1)² / 4⌋ - a0`, the bound on every other part of a cube with
/// smallest positive part `a1`.
pub fn extension_bound(a0: &BigInt, a1: &BigInt) -> BigInt {
    let m: BigInt = a1 - 1;
    let sq: BigInt = &m * &m;
    sq.div_floor(&BigInt::from(4)) - a0
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(a0: i64, parts: &[i64]) -> CubeTuple {
        CubeTuple::new(a0, parts.iter().copied())
    }

    fn roots(w: &Witness) -> Vec<i64> {
        w.roots.iter().map(|r| r.try_into().unwrap()).collect()
    }

    #[test]
    fn verify_examples() {
        let w = verify_cube(&t(1, &[528, 840, 840])).unwrap();
        assert_eq!(roots(&w), vec![1, 23, 29, 37, 29, 37, 41, 47]);
        let w = verify_cube(&t(100, &[2400, 4389, 8736])).unwrap();
        assert_eq!(roots(&w), vec![10, 50, 67, 83, 94, 106, 115, 125]);
        let f = verify_cube(&t(1, &[1, 1, 1])).unwrap_err();
        assert_eq!(f.subset(), vec![1]);
        assert_eq!(f.sum, BigInt::from(2));
        assert_eq!(f.to_string(), "a0+a1 = 2 is not a square");
    }

    #[test]
    fn score_examples() {
        let pseudo = CubeTuple::new(
            6310i64 * 6310,
            [105386400i64, 105386400, 144545984, -121397859],
        );
        assert_eq!(square_score(&pseudo).squares, 14);
        assert_eq!(square_score(&t(1, &[528, 840, 840])).squares, 8);
        assert_eq!(square_score(&t(0, &[])).squares, 1);
        assert_eq!(square_score(&t(1, &[1, 1, 1])).misses, vec![1, 2, 3, 4, 5, 6]);
    }

    #[test]
    fn apply_examples() {
        let c = t(1, &[528, 840, 840]);
        assert_eq!(apply(GroupElement::Phi1, &c).unwrap(), t(529, &[-528, 840, 840]));
        let twice = apply(GroupElement::Phi1, &apply(GroupElement::Phi1, &c).unwrap()).unwrap();
        assert_eq!(twice, c);
        assert_eq!(apply(GroupElement::Psi(2), &c).unwrap(), t(4, &[2112, 3360, 3360]));
        assert!(matches!(
            apply(GroupElement::Phi1, &t(1, &[3, 5])),
            Err(CubeError::Dimension { .. })
        ));
        assert_eq!(apply(GroupElement::Psi(0), &c), Err(CubeError::BadScale));
        assert!(apply(GroupElement::Sigma([0, 0, 1]), &c).is_err());
    }

    #[test]
    fn sigma_order_divides_six() {
        let c = t(100, &[2400, 4389, 8736]);
        for g in [GroupElement::SWAP_12, GroupElement::CYCLE, GroupElement::SWAP_23] {
            let mut cur = c.clone();
            for _ in 0..6 {
                cur = apply(g, &cur).unwrap();
            }
            assert_eq!(cur, c);
        }
        let phi2 = apply(GroupElement::Phi2, &apply(GroupElement::Phi2, &c).unwrap()).unwrap();
        assert_eq!(phi2, c);
    }

    #[test]
    fn canonicalize_examples() {
        let c = canonicalize(&t(2209, &[-528, -840, -840])).unwrap();
        assert_eq!(c.cube, t(1, &[528, 840, 840]));
        assert!(c.reduced && !c.degenerate);
        let c = canonicalize(&t(4, &[3360, 9405, 3360])).unwrap();
        assert_eq!(c.cube, t(4, &[3360, 3360, 9405]));
        assert!(c.reduced);
        let c = canonicalize(&t(9, &[4752, 7560, 7560])).unwrap();
        assert_eq!(c.cube, t(1, &[528, 840, 840]));
        assert_eq!(c.scale, BigInt::from(3));
        assert!(matches!(
            canonicalize(&t(1, &[1, 1, 1])),
            Err(CubeError::NotACube(_))
        ));
    }

    #[test]
    fn canonicalize_degenerate() {
        let c = canonicalize(&t(0, &[16, 0, 9])).unwrap();
        assert!(c.degenerate);
        assert_eq!(c.cube, t(0, &[0, 9, 16]));
        let z = canonicalize(&t(0, &[0, 0, 0])).unwrap();
        assert!(z.degenerate && !z.reduced);
    }

    #[test]
    fn distinct_count_examples() {
        assert_eq!(distinct_count(&t(1, &[528, 840, 840])), 6);
        assert_eq!(distinct_count(&t(100, &[2400, 4389, 8736])), 8);
        assert_eq!(distinct_count(&t(0, &[0, 0, 0])), 1);
    }

    #[test]
    fn size_lower_bound_examples() {
        assert_eq!(size_lower_bound(4, 1, 1, 2).unwrap(), BigInt::from(3));
        assert_eq!(size_lower_bound(4, 2, 1, 3).unwrap(), BigInt::from(4));
        assert_eq!(size_lower_bound(4, 2, 0, 3).unwrap(), BigInt::from(3));
        assert_eq!(size_lower_bound(2, 1, 1, 2), Err(CubeError::BadProgressionLength(2)));
    }

    #[test]
    fn extension_bound_examples() {
        let b = |a0: i64, a1: i64| extension_bound(&BigInt::from(a0), &BigInt::from(a1));
        assert_eq!(b(1, 529), BigInt::from(69695));
        assert_eq!(b(1, 3), BigInt::from(0));
        // ⌊3359²/4⌋ = ⌊11282881/4⌋ = 2820720
        assert_eq!(b(4, 3360), BigInt::from(2820716));
    }

    #[test]
    fn group_has_48_elements_and_preserves_cubes() {
        let words = group_words();
        assert_eq!(words.len(), 48);
        let c = t(100, &[2400, 4389, 8736]);
        let images: BTreeSet<_> = words.iter().map(|w| apply_word(w, &c).unwrap()).collect();
        assert_eq!(images.len(), 48);
        assert_eq!(orbit(&c).unwrap().len(), 48);
        for img in images {
            assert!(verify_cube(&img).is_ok(), "{img}");
        }
    }

    #[test]
    fn orient_agrees_with_orbit_minimum() {
        // independent route: smallest all-positive orbit member
        for c in [t(1, &[528, 840, 840]), t(100, &[2400, 4389, 8736]), t(4, &[3360, 3360, 9405])] {
            for img in orbit(&c).unwrap() {
                let best = orbit(&img)
                    .unwrap()
                    .into_iter()
                    .filter(|x| x.parts.windows(2).all(|w| w[0] <= w[1]) && x.parts[0].is_positive())
                    .min()
                    .unwrap();
                assert_eq!(orient(&img), best);
                assert_eq!(canonicalize(&img).unwrap().cube, best);
            }
        }
    }
}
