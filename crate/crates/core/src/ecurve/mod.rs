//! Rational points on cubics `Y² = X³ + A·X² + B·X + C`, the two models
//! attached to the cube equations, and the pullbacks of their points.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

use crate::cube::CubeTuple;
use crate::families::{family_a1a2, formulas};
use crate::poly::{binary_form, Ring};

pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CurveError {
    #[error("singular model: {0}")]
    Singular(String),
    #[error("point is not on the curve")]
    OffCurve,
    #[error("degenerate parameters: {0}")]
    Degenerate(String),
    #[error("pullback of 2*P0 disagrees with the equal-parts family at entry {0}")]
    PullbackMismatch(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CurvePoint {
    Infinity,
    Affine { x: Rational, y: Rational },
}

impl CurvePoint {
    pub fn affine(x: impl Into<BigInt>, y: impl Into<BigInt>) -> Self {
        CurvePoint::Affine {
            x: Rational::from_integer(x.into()),
            y: Rational::from_integer(y.into()),
        }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, CurvePoint::Infinity)
    }
}

impl fmt::Display for CurvePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurvePoint::Infinity => f.write_str("O"),
            CurvePoint::Affine { x, y } => write!(f, "({x}, {y})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveModel {
    a: Rational,
    b: Rational,
    c: Rational,
}

impl CurveModel {
    /// Rejects models whose cubic has a repeated root.
    pub fn new(a: Rational, b: Rational, c: Rational) -> Result<Self, CurveError> {
        let m = CurveModel { a, b, c };
        if m.discriminant().is_zero() {
            return Err(CurveError::Singular("discriminant vanishes".into()));
        }
        Ok(m)
    }

    pub fn from_integers(a: impl Into<BigInt>, b: impl Into<BigInt>, c: impl Into<BigInt>) -> Result<Self, CurveError> {
        let q = |v: BigInt| Rational::from_integer(v);
        Self::new(q(a.into()), q(b.into()), q(c.into()))
    }

    pub fn coefficients(&self) -> (&Rational, &Rational, &Rational) {
        (&self.a, &self.b, &self.c)
    }

    /// Discriminant of `X³ + A·X² + B·X + C`.
    pub fn discriminant(&self) -> Rational {
        let (a, b, c) = (&self.a, &self.b, &self.c);
        let k = |n: i64| Rational::from_integer(n.into());
        k(18) * a * b * c - k(4) * a * a * a * c + a * a * b * b - k(4) * b * b * b - k(27) * c * c
    }

    fn rhs(&self, x: &Rational) -> Rational {
        ((x + &self.a) * x + &self.b) * x + &self.c
    }

    pub fn contains(&self, p: &CurvePoint) -> bool {
        match p {
            CurvePoint::Infinity => true,
            CurvePoint::Affine { x, y } => y * y == self.rhs(x),
        }
    }

    /// Checks membership, so later arithmetic can assume it.
    pub fn point(&self, x: Rational, y: Rational) -> Result<CurvePoint, CurveError> {
        let p = CurvePoint::Affine { x, y };
        if self.contains(&p) {
            Ok(p)
        } else {
            Err(CurveError::OffCurve)
        }
    }

    fn check(&self, p: &CurvePoint) -> Result<(), CurveError> {
        if self.contains(p) {
            Ok(())
        } else {
            Err(CurveError::OffCurve)
        }
    }

    pub fn negate(&self, p: &CurvePoint) -> Result<CurvePoint, CurveError> {
        self.check(p)?;
        Ok(neg(p))
    }

    pub fn add(&self, p: &CurvePoint, q: &CurvePoint) -> Result<CurvePoint, CurveError> {
        self.check(p)?;
        self.check(q)?;
        Ok(self.add_unchecked(p, q))
    }

    pub fn double(&self, p: &CurvePoint) -> Result<CurvePoint, CurveError> {
        self.add(p, p)
    }

    /// `k·P` by double-and-add; negative `k` uses `-P`.
    pub fn mul(&self, k: i64, p: &CurvePoint) -> Result<CurvePoint, CurveError> {
        self.check(p)?;
        Ok(self.mul_unchecked(k, p))
    }

    fn mul_unchecked(&self, k: i64, p: &CurvePoint) -> CurvePoint {
        let mut base = if k < 0 { neg(p) } else { p.clone() };
        let mut n = k.unsigned_abs();
        let mut acc = CurvePoint::Infinity;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.add_unchecked(&acc, &base);
            }
            base = self.add_unchecked(&base, &base);
            n >>= 1;
        }
        acc
    }

    fn add_unchecked(&self, p: &CurvePoint, q: &CurvePoint) -> CurvePoint {
        let (x1, y1, x2, y2) = match (p, q) {
            (CurvePoint::Infinity, _) => return q.clone(),
            (_, CurvePoint::Infinity) => return p.clone(),
            (CurvePoint::Affine { x: x1, y: y1 }, CurvePoint::Affine { x: x2, y: y2 }) => (x1, y1, x2, y2),
        };
        let lambda = if x1 == x2 {
            if (y1 + y2).is_zero() {
                return CurvePoint::Infinity;
            }
            let k = |n: i64| Rational::from_integer(n.into());
            (k(3) * x1 * x1 + k(2) * &self.a * x1 + &self.b) / (k(2) * y1)
        } else {
            (y2 - y1) / (x2 - x1)
        };
        let x3 = &lambda * &lambda - &self.a - x1 - x2;
        let y3 = lambda * (x1 - &x3) - y1;
        CurvePoint::Affine { x: x3, y: y3 }
    }
}

fn neg(p: &CurvePoint) -> CurvePoint {
    match p {
        CurvePoint::Infinity => CurvePoint::Infinity,
        CurvePoint::Affine { x, y } => CurvePoint::Affine { x: x.clone(), y: -y },
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CurveOp {
    Add,
    Double,
    Negate,
    Mul(i64),
}

/// Applies `op` to the first one or two of `points`.
pub fn curve_arith(op: &CurveOp, points: &[CurvePoint], curve: &CurveModel) -> Result<CurvePoint, CurveError> {
    let first = points.first().ok_or(CurveError::OffCurve)?;
    match op {
        CurveOp::Add => curve.add(first, points.get(1).ok_or(CurveError::OffCurve)?),
        CurveOp::Double => curve.double(first),
        CurveOp::Negate => curve.negate(first),
        CurveOp::Mul(k) => curve.mul(*k, first),
    }
}

/// Smallest `k ≤ bound` with `k·P = O`.
///
/// On models with integer coefficients a multiple with a non-integral
/// coordinate proves infinite order (Nagell–Lutz), which stops the walk early.
pub fn torsion_order(p: &CurvePoint, curve: &CurveModel, bound: u32) -> Option<u32> {
    if !curve.contains(p) {
        return None;
    }
    let integral_model = curve.a.is_integer() && curve.b.is_integer() && curve.c.is_integer();
    let mut acc = p.clone();
    for k in 1..=bound {
        match &acc {
            CurvePoint::Infinity => return Some(k),
            CurvePoint::Affine { x, y } if integral_model && !(x.is_integer() && y.is_integer()) => return None,
            _ => {}
        }
        acc = curve.add_unchecked(&acc, p);
    }
    None
}

/// The first `(i, j) ≠ (0, 0)` with `|i|, |j| ≤ range` for which
/// `i·P + j·Q` has order at most `bound`, if any.
pub fn dependency(p: &CurvePoint, q: &CurvePoint, curve: &CurveModel, range: i64, bound: u32) -> Option<(i64, i64)> {
    for i in -range..=range {
        let ip = curve.mul_unchecked(i, p);
        for j in -range..=range {
            if (i, j) == (0, 0) {
                continue;
            }
            let s = curve.add_unchecked(&ip, &curve.mul_unchecked(j, q));
            if torsion_order(&s, curve, bound).is_some() {
                return Some((i, j));
            }
        }
    }
    None
}

/// The model attached to the `(m, y, R, S)` intersection with its points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveE {
    pub curve: CurveModel,
    /// The torsion point of order 4.
    pub q0: CurvePoint,
    pub q1: CurvePoint,
    pub q2: CurvePoint,
}

pub fn build_curve_e(u: impl Into<BigInt>, x: impl Into<BigInt>, z: impl Into<BigInt>) -> Result<CurveE, CurveError> {
    let (u, x, z) = (u.into(), x.into(), z.into());
    let (u2, x2, z2) = (&u * &u, &x * &x, &z * &z);
    if (&u2 - &x2 + &z2).is_zero() {
        return Err(CurveError::Singular("u^2 - x^2 + z^2 = 0 reduces to a genus 0 curve".into()));
    }
    let a: BigInt = ((&x2 - &z2) * &u2 * &u2 - (&x2 * &x2 - 4 * &x2 * &z2 + &z2 * &z2) * &u2 - &x2 * &z2 * (&x2 - &z2)) * 2;
    let b: BigInt = pow2(&(&u2 - &x2)) * pow2(&(&x2 - &z2)) * pow2(&(&u2 + &z2));
    let curve = CurveModel::from_integers(a, b, 0)?;
    let q = |x: BigInt, y: BigInt| curve.point(Rational::from_integer(x), Rational::from_integer(y));
    let q1 = q(pow2(&(&x2 - &u2)) * &z2, pow2(&(&u2 - &x2)) * (&u2 * &x2 + &z2 * &z2) * &z)?;
    let q2 = q(pow2(&(&x2 - &z2)) * &u2, pow2(&(&x2 - &z2)) * (&u2 * &u2 + &x2 * &z2) * &u)?;
    let q0 = q(
        -((&u2 - &x2) * (&x2 - &z2) * (&u2 + &z2)),
        2 * &u * &x * &z * (&x2 - &z2) * (&u2 - &x2) * (&u2 + &z2),
    )?;
    Ok(CurveE { curve, q0, q1, q2 })
}

fn pow2(v: &BigInt) -> BigInt {
    v * v
}

/// The cubic model of the equal-parts system with `P0` of infinite order
/// and `P1` of order 4.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveA1a2 {
    pub curve: CurveModel,
    pub p0: CurvePoint,
    pub p1: CurvePoint,
}

pub fn build_curve_a1a2(c: impl Into<BigInt>, d: impl Into<BigInt>) -> Result<CurveA1a2, CurveError> {
    let (c, d) = (c.into(), d.into());
    let (c2, d2) = (&c * &c, &d * &d);
    let e = &c2 - &d2;
    if e.is_zero() {
        return Err(CurveError::Degenerate("c^2 = d^2".into()));
    }
    let cd = &c * &d;
    let a: BigInt = -4 * (&c2 - &cd - &d2) * (&c2 + &cd - &d2);
    let b: BigInt = 4 * pow2(&pow2(&e));
    let curve = CurveModel::from_integers(a, b, 0)?;
    let e2 = pow2(&e);
    let q = |x: BigInt, y: BigInt| curve.point(Rational::from_integer(x), Rational::from_integer(y));
    let p0 = q(e2.clone(), &e2 * (&c2 + &d2))?;
    let p1 = q(2 * &e2, 4 * &cd * &e2)?;
    Ok(CurveA1a2 { curve, p0, p1 })
}

/// Evaluates the pulled-back `(a, b, r, u)` of `2·P0`, forms
/// `(p; q² − p², q² − p², s² − p²)` and checks it against the family.
pub fn pullback_2p0(c: impl Into<BigInt>, d: impl Into<BigInt>) -> Result<([BigInt; 4], CubeTuple), CurveError> {
    let (c, d) = (c.into(), d.into());
    if (&c * &c - &d * &d).is_zero() {
        return Err(CurveError::Degenerate("c^2 = d^2".into()));
    }
    let (abru, [p, q, s, _]) = formulas::double_point_pullback(&c, &d);
    let p2 = &p * &p;
    let a1 = &q * &q - &p2;
    let cube = CubeTuple::new(p2.clone(), [a1.clone(), a1, &s * &s - &p2]);
    let want = family_a1a2(c, d);
    if let Some(i) = cube.entries().zip(want.entries()).position(|(a, b)| a != b) {
        return Err(CurveError::PullbackMismatch(i));
    }
    Ok((abru, cube))
}

/// Pullback of `Q2`; `a2` is identically zero.
pub fn q2_pullback<R: Ring>(u: &R, x: &R, z: &R) -> [R; 4] {
    let u2 = u.pow(2);
    let a0 = u2.clone() * (x.clone() + z.clone()).pow(2);
    let a1 = u.konst(-4) * u2.clone() * x.clone() * z.clone();
    let a3 = (u2.clone() - x.pow(2)) * (u2 - z.pow(2));
    [a0, a1, u.konst(0), a3]
}

/// Pullback of `Q1`.
pub fn q1_pullback<R: Ring>(u: &R, x: &R, z: &R) -> [R; 4] {
    let f = |co: &[i64]| binary_form(x, z, co);
    let k = |n: i64| u.konst(n);
    // a0 is the square of a degree-7 polynomial in u over forms in (x, z)
    let inner = [
        k(2) * x.pow(2) * z.pow(2),
        x.pow(2) * f(&[1, -1, -2, -6]),
        k(-2) * z.clone() * f(&[1, -1, -3, -5, 0, 1]),
        k(2) * z.pow(2) * (x.clone() + z.clone()) * f(&[1, -2, -2, -2, 1]),
        k(-2) * z.pow(3) * f(&[1, 0, -5, -3, -1, 1]),
        -(z.pow(6) * f(&[6, 2, 1, -1])),
        k(2) * x.pow(3) * z.pow(7),
    ];
    let mut root = k(0);
    for (i, c) in inner.into_iter().enumerate() {
        root = root + c * u.pow(6 - i as u32);
    }
    let a0 = root.pow(2);

    let (u2, x2, z2) = (u.pow(2), x.pow(2), z.pow(2));
    let a1 = k(-4)
        * u.clone()
        * x.clone()
        * z.clone()
        * (u2.clone() * x2.clone() - k(2) * u.clone() * x2.clone() * z.clone() + k(2) * x2.clone() * z2.clone() - z.pow(4))
        * (u2.clone() * x2.clone() - k(2) * u2.clone() * z2.clone() + k(2) * u.clone() * z.pow(3) - z.pow(4))
        * (-(u2.clone() * x2.clone()) + k(2) * u.pow(3) * z.clone() - k(2) * u2.clone() * z2.clone() + k(2) * u.clone() * z.pow(3) - z.pow(4))
        * (u.pow(3) * x2.clone() - k(2) * u2.clone() * x2.clone() * z.clone() + k(2) * u.clone() * x2.clone() * z2.clone()
            - k(2) * x2.clone() * z.pow(3)
            + u.clone() * z.pow(4));
    let uz = u.clone() * z.clone();
    let ux = u.clone() * x.clone();
    let a2 = k(4)
        * (u.clone() - z.clone())
        * z.clone()
        * (x2.clone() - z2.clone())
        * (uz.clone() - x2.clone())
        * (u2.clone() * x2.clone() - z.pow(4))
        * (u2.clone() - uz.clone() + z2.clone())
        * (u.pow(3) * x.clone() - k(2) * u2.clone() * x.clone() * z.clone() + ux.clone() * x.clone() * z.clone() - u2.clone() * z2.clone()
            + k(2) * ux.clone() * z2.clone()
            - x.clone() * z.pow(3))
        * (u.pow(3) * x.clone() - k(2) * u2.clone() * x.clone() * z.clone() - ux.clone() * x.clone() * z.clone() + u2.clone() * z2.clone()
            + k(2) * ux.clone() * z2.clone()
            - x.clone() * z.pow(3));
    let a3 = (u2.clone() - x2.clone())
        * (u.clone() - z.clone())
        * (u2.clone() * x2.clone() - k(2) * u.clone() * x2.clone() * z.clone() + k(2) * u.clone() * z.pow(3) - z.pow(4))
        * (u2.clone() * x2.clone() - k(2) * u2.clone() * x.clone() * z.clone() + k(2) * ux.clone() * z2.clone() - k(2) * x.clone() * z.pow(3)
            + z.pow(4))
        * (u2.clone() * x2.clone() + k(2) * u2.clone() * x.clone() * z.clone() - k(2) * ux.clone() * z2.clone()
            + k(2) * x.clone() * z.pow(3)
            + z.pow(4))
        * (u.pow(3) * x2.clone() - u2.clone() * x2.clone() * z.clone() + k(2) * u.clone() * x2.clone() * z2.clone()
            - k(2) * u2.clone() * z.pow(3)
            + u.clone() * z.pow(4)
            - z.pow(5));
    [a0, a1, a2, a3]
}

/// [`q1_pullback`] or [`q2_pullback`] evaluated at integers.
pub fn pullback_cube(which: u8, u: impl Into<BigInt>, x: impl Into<BigInt>, z: impl Into<BigInt>) -> Option<CubeTuple> {
    let (u, x, z) = (u.into(), x.into(), z.into());
    let [a0, a1, a2, a3] = match which {
        1 => q1_pullback(&u, &x, &z),
        2 => q2_pullback(&u, &x, &z),
        _ => return None,
    };
    Some(CubeTuple::new(a0, [a1, a2, a3]))
}

/// Whether `p` has the claimed order 4: `4·p = O` and `2·p ≠ O`.
pub fn has_order_four(p: &CurvePoint, curve: &CurveModel) -> bool {
    torsion_order(p, curve, 4) == Some(4)
}

impl CurvePoint {
    /// `x` and `y` as integers when both denominators are 1.
    pub fn integral(&self) -> Option<(BigInt, BigInt)> {
        match self {
            CurvePoint::Affine { x, y } if x.is_integer() && y.is_integer() => Some((x.to_integer(), y.to_integer())),
            _ => None,
        }
    }

}

#[cfg(test)]
mod tests;
