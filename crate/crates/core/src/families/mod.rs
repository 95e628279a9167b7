//! Parametric families of cubes and the ratio finder.
//!
//! Every generator returns the raw tuple exactly as the formulas give it;
//! entries may be zero or negative outside the parameter regions where the
//! family is positive. Use [`crate::cube::canonicalize`] for the sorted view.

pub mod formulas;
mod ratio;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::arith::isqrt;
use crate::cube::{square_score, CubeTuple, Score};

pub use ratio::{ratio_parameter, RatioFit, RatioPair};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("leading coefficient a = {0} must be positive")]
    NonPositiveLeading(String),
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("ratio pair ({0}, {1}) is not supported")]
    BadPair(usize, usize),
    #[error("target must be positive")]
    BadTarget,
    #[error("eps must be positive")]
    BadEps,
    #[error("target {target} is outside the range reachable on the grid")]
    Unreachable { target: String },
    #[error("eps is below the resolution of the grid with denominator {0}")]
    Resolution(u64),
}

/// Which generator produced a cube, with its integer parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilyParams {
    General { c: BigInt, d: BigInt, g: BigInt, h: BigInt },
    T { t: BigInt },
    EqualParts { c: BigInt, d: BigInt },
    SamePrefix { u: BigInt, v: BigInt },
    Triangular { n: BigInt },
    Near4 { c: BigInt },
}

pub fn family_general(c: impl Into<BigInt>, d: impl Into<BigInt>, g: impl Into<BigInt>, h: impl Into<BigInt>) -> CubeTuple {
    let [a0, a1, a2, a3] = formulas::general(&c.into(), &d.into(), &g.into(), &h.into());
    CubeTuple::new(a0, [a1, a2, a3])
}

pub fn family_t(t: impl Into<BigInt>) -> CubeTuple {
    let [a0, a1, a2, a3] = formulas::t_family(&t.into());
    CubeTuple::new(a0, [a1, a2, a3])
}

/// The family with `a1 = a2`, parts in the order `(a1, a1, a3)`.
pub fn family_a1a2(c: impl Into<BigInt>, d: impl Into<BigInt>) -> CubeTuple {
    let [a0, a1, a3] = formulas::equal_parts(&c.into(), &d.into());
    CubeTuple::new(a0, [a1.clone(), a1, a3])
}

/// Two cubes `(a0; a1, a1, a3)` and `(a0; a1, a1, A3)`.
pub fn family_same_prefix(u: impl Into<BigInt>, v: impl Into<BigInt>) -> (CubeTuple, CubeTuple) {
    let [a0, a1, a3, big_a3] = formulas::same_prefix(&u.into(), &v.into());
    (
        CubeTuple::new(a0.clone(), [a1.clone(), a1.clone(), a3]),
        CubeTuple::new(a0, [a1.clone(), a1, big_a3]),
    )
}

/// `m` with `m(m+1)/2 = s`, if any.
pub fn triangular_index(s: &BigInt) -> Option<BigInt> {
    if s.is_negative() {
        return None;
    }
    let disc: BigInt = s * 8 + 1;
    let r = isqrt(&disc).ok()?;
    if &r * &r != disc {
        return None;
    }
    Some((r - 1) / 2)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriangularCube {
    pub cube: CubeTuple,
    /// Index `m` for each subset sum in binary-index order.
    pub indices: Vec<Option<BigInt>>,
}

impl TriangularCube {
    pub fn all_triangular(&self) -> bool {
        self.indices.iter().all(Option::is_some)
    }
}

/// `(n(n+1)/2; 66(2n+1)², 105(2n+1)², 105(2n+1)²)`, whose sums are all
/// triangular numbers.
pub fn family_triangular(n: impl Into<BigInt>) -> TriangularCube {
    let n = n.into();
    let a0: BigInt = &n * (&n + 1) / 2;
    let w: BigInt = &n * 2 + 1;
    let w2 = &w * &w;
    let cube = CubeTuple::new(a0, [&w2 * 66, &w2 * 105, &w2 * 105]);
    let indices = cube.subset_sums().iter().map(triangular_index).collect();
    TriangularCube { cube, indices }
}

/// Smallest natural `n` with `a·n² + b·n = value`, where `a = a_num/a_den`
/// and `b = b_num/b_den`.
pub fn is_member_quadratic(
    a_num: &BigInt,
    a_den: &BigInt,
    b_num: &BigInt,
    b_den: &BigInt,
    value: &BigInt,
) -> Result<Option<BigInt>, FamilyError> {
    if a_den.is_zero() || b_den.is_zero() {
        return Err(FamilyError::ZeroDenominator);
    }
    if (a_num.is_negative() != a_den.is_negative()) || a_num.is_zero() {
        return Err(FamilyError::NonPositiveLeading(format!("{a_num}/{a_den}")));
    }
    // clear denominators: A n² + B n - C = 0
    let big_a = a_num * b_den;
    let big_b = b_num * a_den;
    let big_c = value * a_den * b_den;
    let (big_a, big_b, big_c) = if big_a.is_negative() {
        (-big_a, -big_b, -big_c)
    } else {
        (big_a, big_b, big_c)
    };
    let disc: BigInt = &big_b * &big_b + &big_a * &big_c * 4;
    if disc.is_negative() {
        return Ok(None);
    }
    let r = isqrt(&disc).expect("nonnegative");
    if &r * &r != disc {
        return Ok(None);
    }
    let two_a = &big_a * 2;
    let mut roots: Vec<BigInt> = [-&big_b - &r, -&big_b + &r]
        .into_iter()
        .filter_map(|num| {
            let (q, rem) = num.div_rem(&two_a);
            (rem.is_zero() && !q.is_negative()).then_some(q)
        })
        .collect();
    roots.sort();
    Ok(roots.into_iter().next())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Near4 {
    /// `(a0; a1, a2, a3, a4)`, scaled by 4 when `a4` would not be integral.
    pub tuple: CubeTuple,
    pub scaled: bool,
    pub score: Score,
}

/// The five-part tuple with thirteen square sums for generic `c`.
pub fn family_near4(c: impl Into<BigInt>) -> Near4 {
    let entries = formulas::near4_times4(&c.into());
    let four = BigInt::from(4);
    let scaled = !entries.iter().all(|e| e.is_multiple_of(&four));
    let entries: Vec<BigInt> = if scaled {
        entries.into()
    } else {
        entries.iter().map(|e| e / &four).collect()
    };
    let tuple = CubeTuple::new(entries[0].clone(), entries[1..].iter().cloned());
    let score = square_score(&tuple);
    Near4 { tuple, scaled, score }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::gcd_all;
    use crate::cube::{apply, canonicalize, verify_cube, GroupElement};
    use num_traits::{One, Pow};
    use proptest::prelude::*;

    fn t(a0: i64, parts: &[i64]) -> CubeTuple {
        CubeTuple::new(a0, parts.iter().copied())
    }

    fn b(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn general_at_2_1_3_1() {
        // frozen from an independent evaluation of the printed formulas
        let c = family_general(2, 1, 3, 1);
        assert_eq!(c, t(239630400, &[2954880000, 577414656, 2034514944]));
        assert_eq!(square_score(&c).squares, 8);
    }

    #[test]
    fn general_degenerate_locus() {
        let c = family_general(1, 1, 5, 2);
        assert!(c.parts[1].is_zero());
        assert!(c.parts[0].is_zero());
    }

    #[test]
    fn t_family_is_a_swapped_scaled_general_member() {
        for tv in [-3i64, 0, 2, 7, 10, 33] {
            let g = family_general(3, 1, tv, 1);
            let swapped = apply(GroupElement::SWAP_13, &g).unwrap();
            let scaled = apply(GroupElement::Psi(32), &family_t(tv)).unwrap();
            assert_eq!(swapped, scaled, "t = {tv}");
        }
    }

    #[test]
    fn t_family_examples() {
        let c = family_t(7);
        assert_eq!(c.a0, b(25) * b(97464) * b(97464));
        assert_eq!(c.a0, b(237480782400));
        assert_eq!(c, t(237480782400, &[394315278336, 1331004939264, 1485648000000]));
        assert!(verify_cube(&c).is_ok());
        assert_eq!(c.gcd(), b(576));
        assert!(family_t(1).parts[0].is_zero());
        let c = family_t(10);
        assert!(verify_cube(&c).is_ok());
        assert!(c.parts[0].is_positive() && c.parts[0] < c.parts[1] && c.parts[1] < c.parts[2]);
    }

    #[test]
    fn t_family_range_with_gcd_bound() {
        let m: BigInt = Pow::pow(b(2), 45u32) * Pow::pow(b(3), 18u32) * b(25) * Pow::pow(b(13), 16u32) * Pow::pow(b(37), 16u32);
        for tv in 7..=500 {
            let c = family_t(tv);
            assert!(verify_cube(&c).is_ok(), "t = {tv}");
            let p = &c.parts;
            assert!(p[0].is_positive() && p[0] < p[1] && p[1] < p[2], "t = {tv}");
            assert!((&m % c.gcd()).is_zero(), "t = {tv}");
        }
    }

    #[test]
    fn a1a2_examples() {
        let c = family_a1a2(2, 1);
        assert_eq!(c, t(22801, &[128520, 128520, 48488]));
        assert_eq!(canonicalize(&c).unwrap().cube, t(22801, &[48488, 128520, 128520]));
        let e: Vec<BigInt> = family_a1a2(1, 1).entries().cloned().collect();
        assert!(e[0].is_zero() && e[1].is_zero() && e[2].is_zero());
        let c = family_a1a2(3, 2);
        assert_eq!(c, t(677329, &[8790600, 8790600, 26832696]));
        assert!(verify_cube(&c).is_ok());
    }

    #[test]
    fn same_prefix_examples() {
        let (x, y) = family_same_prefix(2, 1);
        assert_eq!(x, t(4, &[3360, 3360, 2112]));
        assert_eq!(y, t(4, &[3360, 3360, 9405]));
        let (x, _) = family_same_prefix(1, 1);
        assert!(x.parts[0].is_zero());
        let (x, y) = family_same_prefix(3, 1);
        assert_eq!(x, t(10609, &[43680, 43680, -6765]));
        assert_eq!(y, t(10609, &[43680, 43680, 100947]));
        assert!(verify_cube(&x).is_ok() && verify_cube(&y).is_ok());
    }

    #[test]
    fn triangular_examples() {
        let r = family_triangular(1);
        assert_eq!(r.cube, t(1, &[594, 945, 945]));
        assert_eq!(r.indices[1], Some(b(34)));
        assert!(r.all_triangular());
        let r = family_triangular(0);
        assert_eq!(r.cube, t(0, &[66, 105, 105]));
        assert!(r.all_triangular());
        assert!(family_triangular(5).all_triangular());
        assert_eq!(triangular_index(&b(2)), None);
        assert_eq!(triangular_index(&b(-1)), None);
    }

    #[test]
    fn triangular_family_holds_for_many_n() {
        for n in 0..300 {
            assert!(family_triangular(n).all_triangular(), "n = {n}");
        }
    }

    #[test]
    fn quadratic_membership() {
        let (one, two, zero) = (b(1), b(2), b(0));
        assert_eq!(is_member_quadratic(&one, &two, &one, &two, &b(595)).unwrap(), Some(b(34)));
        assert_eq!(is_member_quadratic(&one, &one, &zero, &one, &b(10)).unwrap(), None);
        assert_eq!(is_member_quadratic(&one, &one, &zero, &one, &b(49)).unwrap(), Some(b(7)));
        assert_eq!(is_member_quadratic(&one, &one, &zero, &one, &b(0)).unwrap(), Some(b(0)));
        assert_eq!(is_member_quadratic(&one, &one, &zero, &one, &b(-4)).unwrap(), None);
        // 3n² - 2n = 8 has roots 2 and -4/3
        assert_eq!(is_member_quadratic(&b(3), &one, &b(-2), &one, &b(8)).unwrap(), Some(b(2)));
        // negative denominators normalize
        assert_eq!(is_member_quadratic(&b(-1), &b(-2), &one, &two, &b(6)).unwrap(), Some(b(3)));
        assert!(is_member_quadratic(&b(-1), &one, &one, &one, &b(1)).is_err());
        assert!(is_member_quadratic(&one, &zero, &one, &one, &b(1)).is_err());
    }

    #[test]
    fn near4_examples() {
        let r = family_near4(2);
        assert!(r.scaled);
        assert_eq!(r.tuple, t(91204, &[514080, 514080, 193952, 5810805]));
        assert_eq!(r.score.squares, 13);
        assert_eq!(r.score.misses, vec![8, 11, 15]);
        let r = family_near4(3);
        assert_eq!(r.score.squares, 13);
        assert_eq!(r.score.misses, vec![8, 11, 15]);
        assert!(family_near4(1).tuple.a0.is_zero());
    }

    #[test]
    fn near4_generic_values() {
        for c in [-7, -3, -2, 2, 3, 4, 5, 6, 7, 11, 19] {
            let r = family_near4(c);
            assert_eq!(r.score.misses, vec![8, 11, 15], "c = {c}");
        }
    }

    proptest! {
        #[test]
        fn general_homogeneity(c in -6i64..6, d in -6i64..6, g in -6i64..6, h in -6i64..6,
                               lam in 1i64..4, mu in 1i64..4) {
            let base = family_general(c, d, g, h);
            let sc = family_general(lam * c, lam * d, g, h);
            let sg = family_general(c, d, mu * g, mu * h);
            let l20 = Pow::pow(b(lam), 20u32);
            let m8 = Pow::pow(b(mu), 8u32);
            for ((x, y), z) in base.entries().zip(sc.entries()).zip(sg.entries()) {
                prop_assert_eq!(&(x * &l20), y);
                prop_assert_eq!(&(x * &m8), z);
            }
        }

        #[test]
        fn general_sums_square_when_nonnegative(c in -8i64..8, d in -8i64..8, g in -8i64..8, h in -8i64..8) {
            let s = square_score(&family_general(c, d, g, h));
            let sums = family_general(c, d, g, h).subset_sums();
            for m in s.misses {
                prop_assert!(sums[m].is_negative(), "sum {} is nonnegative but not square", m);
            }
        }

        #[test]
        fn a1a2_positive_region(c in 1i64..200, d in 1i64..200) {
            prop_assume!(c != d && gcd_all([b(c), b(d)].iter()).is_one());
            // 1/√5 < c/d < √5
            prop_assume!(5 * c * c > d * d && c * c < 5 * d * d);
            let cube = family_a1a2(c, d);
            prop_assert!(cube.entries().all(|e| !e.is_negative()));
            prop_assert!(verify_cube(&cube).is_ok());
        }

        #[test]
        fn same_prefix_shares_three_entries(u in -300i64..300, v in -300i64..300) {
            let (x, y) = family_same_prefix(u, v);
            prop_assert_eq!(&x.a0, &y.a0);
            prop_assert_eq!(&x.parts[..2], &y.parts[..2]);
            for cube in [&x, &y] {
                let sums = cube.subset_sums();
                for m in square_score(cube).misses {
                    prop_assert!(sums[m].is_negative());
                }
            }
        }
    }
}
