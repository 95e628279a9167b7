use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};

use super::{family_a1a2, family_general, FamilyError, FamilyParams};
use crate::cube::{verify_cube, CubeTuple};
use crate::poly::binary_form;

/// Grid denominator for the parameter `x = k / GRID`.
pub const GRID: u64 = 1_000_000;

/// The supported ratios `a_i / a_j`, grouped by the branch used.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RatioPair {
    /// `a0/a1` or `a0/a2` on the equal-parts family, `x` left of `-√5`.
    ZeroOne,
    /// `a0/a3` on the equal-parts family, `x ∈ (1, √5)`.
    ZeroThree,
    /// `a1/a3` or `a2/a3` on the equal-parts family, `x ∈ (1, √5)`.
    OneThree,
    /// `a1/a2` on the general family with `(G, H) = (2, 1)`.
    OneTwo,
}

impl RatioPair {
    pub fn from_indices(i: usize, j: usize) -> Result<Self, FamilyError> {
        Ok(match (i, j) {
            (0, 1) | (0, 2) => RatioPair::ZeroOne,
            (0, 3) => RatioPair::ZeroThree,
            (1, 3) | (2, 3) => RatioPair::OneThree,
            (1, 2) => RatioPair::OneTwo,
            _ => return Err(FamilyError::BadPair(i, j)),
        })
    }

    fn indices(self) -> (usize, usize) {
        match self {
            RatioPair::ZeroOne => (0, 1),
            RatioPair::ZeroThree => (0, 3),
            RatioPair::OneThree => (1, 3),
            RatioPair::OneTwo => (1, 2),
        }
    }

    /// Whether `k / d` lies strictly inside the open interval of the branch.
    fn inside(self, k: &BigInt, d: &BigInt) -> bool {
        let k2 = k * k;
        let d2 = d * d;
        match self {
            RatioPair::ZeroOne => {
                // -3-2√2 < x < -√5 with 7x⁴+12x³-22x²+12x+7 > 0
                let s: BigInt = k + d * 3;
                let left = !s.is_negative() || &s * &s < &d2 * 8;
                let right = k.is_negative() && k2 > &d2 * 5;
                left && right && binary_form(k, d, &[7, 12, -22, 12, 7]).is_positive()
            }
            RatioPair::ZeroThree | RatioPair::OneThree => k > d && k2 < d2 * 5,
            RatioPair::OneTwo => {
                // (2+√7)/3 < x < √((3+√13)/2)
                let s: BigInt = k * 3 - d * 2;
                let left = s.is_positive() && &s * &s > &d2 * 7;
                let w: BigInt = &k2 * 2 - &d2 * 3;
                let right = !w.is_positive() || &w * &w < &d2 * &d2 * 13;
                left && right
            }
        }
    }

    /// Approximate endpoints, refined on the grid by [`RatioPair::inside`].
    fn approx_interval(self) -> (f64, f64) {
        match self {
            RatioPair::ZeroOne => (-3.0 - 2.0 * 2f64.sqrt(), -2.941_55),
            RatioPair::ZeroThree | RatioPair::OneThree => (1.0, 5f64.sqrt()),
            RatioPair::OneTwo => ((2.0 + 7f64.sqrt()) / 3.0, ((3.0 + 13f64.sqrt()) / 2.0).sqrt()),
        }
    }

    fn increasing(self) -> bool {
        matches!(self, RatioPair::ZeroThree | RatioPair::OneThree)
    }

    fn generate(self, c: &BigInt, d: &BigInt) -> (FamilyParams, CubeTuple) {
        match self {
            RatioPair::OneTwo => (
                FamilyParams::General {
                    c: c.clone(),
                    d: d.clone(),
                    g: 2.into(),
                    h: 1.into(),
                },
                family_general(c.clone(), d.clone(), 2, 1),
            ),
            _ => (
                FamilyParams::EqualParts { c: c.clone(), d: d.clone() },
                family_a1a2(c.clone(), d.clone()),
            ),
        }
    }

    fn ratio(self, k: &BigInt, d: &BigInt) -> BigRational {
        let (_, cube) = self.generate(k, d);
        let (i, j) = self.indices();
        let e: Vec<&BigInt> = cube.entries().collect();
        BigRational::new(e[i].clone(), e[j].clone())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatioFit {
    pub params: FamilyParams,
    pub cube: CubeTuple,
    pub ratio: BigRational,
}

/// Finds family parameters whose cube has `a_i / a_j` within `eps` of
/// `target`, by bisection on the monotone branch of the ratio.
pub fn ratio_parameter(i: usize, j: usize, target: &BigRational, eps: &BigRational) -> Result<RatioFit, FamilyError> {
    let pair = RatioPair::from_indices(i, j)?;
    if !target.is_positive() {
        return Err(FamilyError::BadTarget);
    }
    if !eps.is_positive() {
        return Err(FamilyError::BadEps);
    }
    let d = BigInt::from(GRID);
    let (lo_f, hi_f) = pair.approx_interval();
    let lo = grid_edge(pair, &d, lo_f, true);
    let hi = grid_edge(pair, &d, hi_f, false);
    // orient so the ratio grows with the index
    let value = |k: &BigInt| pair.ratio(k, &d);
    let (mut a, mut b) = if pair.increasing() { (lo, hi) } else { (hi, lo) };
    let step = |x: &BigInt, y: &BigInt| -> BigInt { (x + y).div_floor(&BigInt::from(2)) };
    let close = |k: &BigInt| (value(k) - target).abs() < *eps;
    if value(&a) >= *target {
        return finish(pair, &a, &d, close(&a), target);
    }
    if value(&b) <= *target {
        return finish(pair, &b, &d, close(&b), target);
    }
    // invariant: value(a) < target < value(b), a and b adjacent at the end
    while (&b - &a).abs() > BigInt::from(1) {
        let m = step(&a, &b);
        if value(&m) < *target {
            a = m;
        } else {
            b = m;
        }
    }
    let best = if (value(&a) - target).abs() <= (value(&b) - target).abs() { a } else { b };
    if close(&best) {
        finish(pair, &best, &d, true, target)
    } else {
        Err(FamilyError::Resolution(GRID))
    }
}

fn finish(pair: RatioPair, k: &BigInt, d: &BigInt, ok: bool, target: &BigRational) -> Result<RatioFit, FamilyError> {
    if !ok {
        return Err(FamilyError::Unreachable {
            target: target.to_string(),
        });
    }
    let g = k.gcd(d);
    let (c, dd) = (k / &g, d / &g);
    let (params, cube) = pair.generate(&c, &dd);
    debug_assert!(verify_cube(&cube).is_ok());
    let (i, j) = pair.indices();
    let e: Vec<&BigInt> = cube.entries().collect();
    let ratio = BigRational::new(e[i].clone(), e[j].clone());
    Ok(RatioFit { params, cube, ratio })
}

/// The outermost grid point inside the branch interval near `approx`.
fn grid_edge(pair: RatioPair, d: &BigInt, approx: f64, lower: bool) -> BigInt {
    let scale = d.to_f64().expect("grid fits f64");
    let mut k = BigInt::from((approx * scale).round() as i64);
    let inward = BigInt::from(if lower { 1 } else { -1 });
    while !pair.inside(&k, d) {
        k += &inward;
    }
    loop {
        let next = &k - &inward;
        if pair.inside(&next, d) {
            k = next;
        } else {
            return k;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cube::verify_cube;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn check(fit: &RatioFit, i: usize, j: usize, target: &BigRational, eps: &BigRational) {
        assert!(verify_cube(&fit.cube).is_ok());
        assert!(fit.cube.entries().all(|e| e.is_positive()));
        let e: Vec<&BigInt> = fit.cube.entries().collect();
        let r = BigRational::new(e[i].clone(), e[j].clone());
        assert_eq!(r, fit.ratio);
        assert!((r - target).abs() < *eps);
    }

    #[test]
    fn zero_three_at_one() {
        let (target, eps) = (q(1, 1), q(1, 1000));
        let fit = ratio_parameter(0, 3, &target, &eps).unwrap();
        check(&fit, 0, 3, &target, &eps);
        let FamilyParams::EqualParts { c, d } = &fit.params else { panic!() };
        assert!(c > d && c * c < d * d * 5);
    }

    #[test]
    fn one_three_near_zero_is_near_one() {
        let (target, eps) = (q(1, 10_000), q(1, 100_000));
        let fit = ratio_parameter(1, 3, &target, &eps).unwrap();
        check(&fit, 1, 3, &target, &eps);
        let FamilyParams::EqualParts { c, d } = &fit.params else { panic!() };
        let x = BigRational::new(c.clone(), d.clone());
        assert!((x - q(1, 1)).abs() < q(1, 100));
    }

    #[test]
    fn zero_one_large_target_is_near_the_pole() {
        let (target, eps) = (q(1000, 1), q(1, 1));
        let fit = ratio_parameter(0, 1, &target, &eps).unwrap_or_else(|e| panic!("{e}"));
        check(&fit, 0, 1, &target, &eps);
        let FamilyParams::EqualParts { c, d } = &fit.params else { panic!() };
        let x = c.to_f64().unwrap() / d.to_f64().unwrap();
        assert!((x - (-3.0 - 2.0 * 2f64.sqrt())).abs() < 1e-2, "x = {x}");
        // the ratio moves faster than the grid can follow this close to the pole
        assert_eq!(
            ratio_parameter(0, 1, &q(1_000_000, 1), &q(1, 1000)),
            Err(FamilyError::Resolution(GRID))
        );
    }

    #[test]
    fn all_pairs_hit_a_few_targets() {
        for (i, j) in [(0, 1), (0, 2), (0, 3), (1, 3), (2, 3), (1, 2)] {
            for target in [q(1, 3), q(2, 1), q(17, 5)] {
                let eps = q(1, 100);
                let fit = ratio_parameter(i, j, &target, &eps).unwrap_or_else(|e| panic!("({i},{j}) {target}: {e}"));
                check(&fit, i, j, &target, &eps);
            }
        }
    }

    #[test]
    fn errors() {
        assert_eq!(ratio_parameter(0, 0, &q(1, 1), &q(1, 2)), Err(FamilyError::BadPair(0, 0)));
        assert_eq!(ratio_parameter(0, 3, &q(0, 1), &q(1, 2)), Err(FamilyError::BadTarget));
        assert_eq!(ratio_parameter(0, 3, &q(1, 1), &q(0, 1)), Err(FamilyError::BadEps));
        assert_eq!(
            ratio_parameter(0, 3, &q(1, 1), &q(1, 1_000_000_000_000_000)),
            Err(FamilyError::Resolution(GRID))
        );
    }

    #[test]
    fn interval_predicates() {
        let d = BigInt::from(GRID);
        let inside = |p: RatioPair, x: f64| p.inside(&BigInt::from((x * GRID as f64) as i64), &d);
        assert!(inside(RatioPair::ZeroOne, -5.0));
        assert!(!inside(RatioPair::ZeroOne, -2.9));
        assert!(!inside(RatioPair::ZeroOne, -5.9));
        assert!(inside(RatioPair::ZeroThree, 2.0));
        assert!(!inside(RatioPair::ZeroThree, 2.3));
        assert!(inside(RatioPair::OneTwo, 1.6));
        assert!(!inside(RatioPair::OneTwo, 1.5));
        assert!(!inside(RatioPair::OneTwo, 1.9));
    }
}
