//! Sparse multivariate polynomials over the integers.
//!
//! Terms live in a `BTreeMap` keyed by exponent vectors, so iteration is
//! lexicographic over the declared variable list and the last key is the
//! leading monomial.

mod identity;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow, Signed, Zero};
use thiserror::Error;

use crate::arith::is_square;

pub use identity::{check_gcd_divides_m, verify_identity, GcdReport, Identity, IdentityError, IdentityReport, SquareWitness, ZeroCheck};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("expected {expected} values, got {found}")]
    Arity { expected: usize, found: usize },
    #[error("polynomials are over different variable lists")]
    VariableMismatch,
    #[error("no variable named {0}")]
    UnknownVariable(String),
}

/// Commutative ring operations shared by integers and polynomials, so a
/// formula can be written once and evaluated either way.
pub trait Ring: Clone + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self> {
    /// The integer `k` in the same ring as `self`.
    fn konst(&self, k: i64) -> Self;

    fn pow(&self, e: u32) -> Self {
        let mut acc = self.konst(1);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            e >>= 1;
            if e > 0 {
                base = base.clone() * base;
            }
        }
        acc
    }
}

impl Ring for BigInt {
    fn konst(&self, k: i64) -> Self {
        BigInt::from(k)
    }

    fn pow(&self, e: u32) -> Self {
        Pow::pow(self, e)
    }
}

/// `Σ coeffs[i] · x^(n-i) · y^i` with `n = coeffs.len() - 1`.
pub fn binary_form<R: Ring>(x: &R, y: &R, coeffs: &[i64]) -> R {
    let n = coeffs.len() as u32 - 1;
    let mut acc = x.konst(0);
    for (i, &k) in coeffs.iter().enumerate() {
        if k != 0 {
            let i = i as u32;
            acc = acc + x.konst(k) * x.pow(n - i) * y.pow(i);
        }
    }
    acc
}

#[derive(Clone, PartialEq, Eq)]
pub struct MultiPoly {
    vars: Arc<[String]>,
    terms: BTreeMap<Vec<u32>, BigInt>,
}

impl MultiPoly {
    /// One generator polynomial per name, all sharing the variable list.
    pub fn variables(names: &[&str]) -> Vec<MultiPoly> {
        let vars: Arc<[String]> = names.iter().map(|s| s.to_string()).collect();
        (0..names.len())
            .map(|i| {
                let mut e = vec![0; names.len()];
                e[i] = 1;
                MultiPoly {
                    vars: vars.clone(),
                    terms: BTreeMap::from([(e, BigInt::one())]),
                }
            })
            .collect()
    }

    pub fn constant_like(&self, k: impl Into<BigInt>) -> MultiPoly {
        let k = k.into();
        let mut terms = BTreeMap::new();
        if !k.is_zero() {
            terms.insert(vec![0; self.vars.len()], k);
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms,
        }
    }

    pub fn var_names(&self) -> &[String] {
        &self.vars
    }

    pub fn var_index(&self, name: &str) -> Result<usize, PolyError> {
        self.vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| PolyError::UnknownVariable(name.to_string()))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &BigInt)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn coefficient(&self, exps: &[u32]) -> BigInt {
        self.terms.get(exps).cloned().unwrap_or_default()
    }

    /// Largest exponent of variable `i`.
    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|e| e[i]).max().unwrap_or(0)
    }

    /// Total degree in the given variables, if every term has the same one.
    pub fn homogeneous_degree(&self, idx: &[usize]) -> Option<u32> {
        let mut degs = self.terms.keys().map(|e| idx.iter().map(|&i| e[i]).sum::<u32>());
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    fn same_vars(&self, other: &MultiPoly) -> bool {
        Arc::ptr_eq(&self.vars, &other.vars) || self.vars == other.vars
    }

    fn check_vars(&self, other: &MultiPoly) -> Result<(), PolyError> {
        if self.same_vars(other) {
            Ok(())
        } else {
            Err(PolyError::VariableMismatch)
        }
    }

    fn add_term(&mut self, e: Vec<u32>, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn try_add(&self, other: &MultiPoly) -> Result<MultiPoly, PolyError> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &MultiPoly) -> Result<MultiPoly, PolyError> {
        self.try_add(&-other)
    }

    pub fn try_mul(&self, other: &MultiPoly) -> Result<MultiPoly, PolyError> {
        self.check_vars(other)?;
        let mut out = self.constant_like(0);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, k: &BigInt) -> MultiPoly {
        let mut out = self.constant_like(0);
        if k.is_zero() {
            return out;
        }
        out.terms = self.terms.iter().map(|(e, c)| (e.clone(), c * k)).collect();
        out
    }

    pub fn eval(&self, point: &[BigInt]) -> Result<BigInt, PolyError> {
        if point.len() != self.vars.len() {
            return Err(PolyError::Arity {
                expected: self.vars.len(),
                found: point.len(),
            });
        }
        let mut total = BigInt::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                if k > 0 {
                    t *= Pow::pow(x, k);
                }
            }
            total += t;
        }
        Ok(total)
    }

    /// Replaces variable `var` by `g`.
    pub fn subst(&self, var: usize, g: &MultiPoly) -> Result<MultiPoly, PolyError> {
        self.subst_scaled(&[var], std::slice::from_ref(g), &BigInt::one())
    }

    /// `den^k · f(v₁ = g₁/den, ...)` where `k` is the largest total degree of
    /// `f` in the substituted variables, which keeps the result integral.
    pub fn subst_scaled(&self, vars: &[usize], images: &[MultiPoly], den: &BigInt) -> Result<MultiPoly, PolyError> {
        if vars.len() != images.len() {
            return Err(PolyError::Arity {
                expected: vars.len(),
                found: images.len(),
            });
        }
        for (&v, g) in vars.iter().zip(images) {
            self.check_vars(g)?;
            if v >= self.vars.len() {
                return Err(PolyError::Arity {
                    expected: self.vars.len(),
                    found: v + 1,
                });
            }
        }
        let k = self
            .terms
            .keys()
            .map(|e| vars.iter().map(|&v| e[v]).sum::<u32>())
            .max()
            .unwrap_or(0);
        let mut powers: Vec<Vec<MultiPoly>> = images.iter().map(|g| vec![g.constant_like(1)]).collect();
        let mut out = self.constant_like(0);
        for (e, c) in &self.terms {
            let mut rest = e.clone();
            let mut deg = 0;
            let mut term = self.constant_like(1);
            for (j, &v) in vars.iter().enumerate() {
                let p = e[v] as usize;
                while powers[j].len() <= p {
                    let next = &powers[j][powers[j].len() - 1] * &images[j];
                    powers[j].push(next);
                }
                term = &term * &powers[j][p];
                deg += e[v];
                rest[v] = 0;
            }
            let mut mono = self.constant_like(0);
            mono.terms.insert(rest, c * Pow::pow(den, k - deg));
            out = out.try_add(&(&mono * &term))?;
        }
        Ok(out)
    }

    /// Exact square root with nonnegative leading coefficient, if `self` is
    /// the square of a polynomial.
    ///
    /// Builds the root term by term from the lexicographic leading monomial:
    /// each new term is `lt(remainder) / (2·lt(root))`.
    pub fn sqrt(&self) -> Option<MultiPoly> {
        let n = self.vars.len();
        let Some((lead_e, lead_c)) = self.terms.last_key_value() else {
            return Some(self.clone());
        };
        let half_bounds: Vec<u32> = (0..n).map(|i| self.degree_in(i) / 2).collect();
        if lead_e.iter().any(|k| k % 2 == 1) {
            return None;
        }
        let c0 = is_square(lead_c)?;
        let e0: Vec<u32> = lead_e.iter().map(|k| k / 2).collect();
        let mut root = self.constant_like(0);
        root.terms.insert(e0.clone(), c0.clone());
        let two_lead = &c0 * 2;
        let mut rem = self.try_sub(&(&root * &root)).ok()?;
        while let Some((re, rc)) = rem.terms.last_key_value() {
            let mut e = Vec::with_capacity(n);
            for i in 0..n {
                let k = re[i].checked_sub(e0[i])?;
                if k > half_bounds[i] {
                    return None;
                }
                e.push(k);
            }
            // the new term must sit strictly below the root's leading term
            if e >= e0 {
                return None;
            }
            let (q, r) = rc.div_rem(&two_lead);
            if !r.is_zero() {
                return None;
            }
            let mut t = self.constant_like(0);
            t.terms.insert(e, q);
            let twice_root_plus_t = &(&root + &root) + &t;
            rem = &rem - &(&t * &twice_root_plus_t);
            root = &root + &t;
        }
        Some(root)
    }
}

impl Ring for MultiPoly {
    fn konst(&self, k: i64) -> Self {
        self.constant_like(k)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $try:ident) => {
        impl $tr<&MultiPoly> for &MultiPoly {
            type Output = MultiPoly;
            /// Panics when the operands use different variable lists.
            fn $m(self, rhs: &MultiPoly) -> MultiPoly {
                self.$try(rhs).expect("polynomials over the same variables")
            }
        }
        impl $tr for MultiPoly {
            type Output = MultiPoly;
            fn $m(self, rhs: MultiPoly) -> MultiPoly {
                (&self).$m(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

impl fmt::Display for MultiPoly {
    /// Terms from the leading monomial down, e.g. `x^2 + 2*x*y + y^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let a = c.abs();
            let mono: Vec<String> = e
                .iter()
                .zip(self.vars.iter())
                .filter(|(k, _)| **k > 0)
                .map(|(&k, v)| if k == 1 { v.clone() } else { format!("{v}^{k}") })
                .collect();
            if mono.is_empty() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{a}*{}", mono.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly[{}]({self})", self.vars.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn xyz() -> (MultiPoly, MultiPoly, MultiPoly) {
        let v = MultiPoly::variables(&["x", "y", "z"]);
        (v[0].clone(), v[1].clone(), v[2].clone())
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&k| BigInt::from(k)).collect()
    }

    #[test]
    fn binomial_square() {
        let (x, y, _) = xyz();
        let s = Ring::pow(&(&x + &y), 2);
        assert_eq!(s.to_string(), "x^2 + 2*x*y + y^2");
        assert_eq!(s.len(), 3);
        assert_eq!(s.sqrt().unwrap(), &x + &y);
    }

    #[test]
    fn display_and_zero() {
        let (x, y, z) = xyz();
        let p = &(&x * &z) - &y.konst(3);
        assert_eq!(p.to_string(), "x*z - 3");
        assert_eq!((&p - &p).to_string(), "0");
        assert!((&p - &p).is_zero());
        assert_eq!((-&y).to_string(), "-y");
    }

    #[test]
    fn mismatched_variables() {
        let a = MultiPoly::variables(&["x"]);
        let b = MultiPoly::variables(&["y"]);
        assert_eq!(a[0].try_add(&b[0]), Err(PolyError::VariableMismatch));
        assert_eq!(
            a[0].eval(&ints(&[1, 2])),
            Err(PolyError::Arity { expected: 1, found: 2 })
        );
        assert!(matches!(a[0].var_index("q"), Err(PolyError::UnknownVariable(_))));
    }

    #[test]
    fn sqrt_rejects_non_squares() {
        let (x, y, _) = xyz();
        assert!((&(&x * &x) + &y).sqrt().is_none());
        assert!((&x * &x).scale(&BigInt::from(2)).sqrt().is_none());
        assert!((&(&x * &x) + &(&y * &y)).sqrt().is_none());
        let cube = Ring::pow(&x, 3);
        assert!(cube.sqrt().is_none());
        let w = &(&x.scale(&BigInt::from(30)) - &y.scale(&BigInt::from(7))) + &x.konst(5);
        let sq = &w * &w;
        let r = sq.sqrt().unwrap();
        assert!(r == w || r == -&w);
        assert_eq!(&r * &r, sq);
    }

    #[test]
    fn scaled_substitution_clears_denominators() {
        let (x, y, z) = xyz();
        // f = x² + x·y, x → (y + z)/2 gives 4·f = (y+z)² + 2(y+z)y
        let f = &(&x * &x) + &(&x * &y);
        let g = &y + &z;
        let got = f.subst_scaled(&[0], std::slice::from_ref(&g), &BigInt::from(2)).unwrap();
        let want = &(&g * &g) + &(&(&g * &y) * &y.konst(2));
        assert_eq!(got, want);
    }

    #[test]
    fn homogeneity() {
        let (x, y, z) = xyz();
        let f = binary_form(&x, &y, &[7, 12, -22, 12, 7]);
        assert_eq!(f.homogeneous_degree(&[0, 1]), Some(4));
        assert_eq!((&f + &z).homogeneous_degree(&[0, 1]), None);
        assert_eq!(f.degree_in(1), 4);
    }

    fn small_poly() -> impl Strategy<Value = Vec<(u32, u32, u32, i64)>> {
        prop::collection::vec((0u32..3, 0u32..3, 0u32..3, -5i64..=5), 0..5)
    }

    fn build(spec: &[(u32, u32, u32, i64)]) -> MultiPoly {
        let (x, y, z) = xyz();
        let mut p = x.konst(0);
        for &(a, b, c, k) in spec {
            p = &p + &(&(&Ring::pow(&x, a) * &Ring::pow(&y, b)) * &Ring::pow(&z, c)).scale(&BigInt::from(k));
        }
        p
    }

    proptest! {
        #[test]
        fn ring_axioms(f in small_poly(), g in small_poly(), h in small_poly(),
                       pts in prop::collection::vec((-6i64..6, -6i64..6, -6i64..6), 20)) {
            let (f, g, h) = (build(&f), build(&g), build(&h));
            let lhs = &f * &(&g + &h);
            prop_assert_eq!(&lhs, &(&(&f * &g) + &(&f * &h)));
            prop_assert_eq!(&f * &g, &g * &f);
            prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
            for (a, b, c) in pts {
                let p = ints(&[a, b, c]);
                let want = f.eval(&p).unwrap() * (g.eval(&p).unwrap() + h.eval(&p).unwrap());
                prop_assert_eq!(lhs.eval(&p).unwrap(), want);
            }
        }

        #[test]
        fn substitution_commutes_with_eval(f in small_poly(), g in small_poly(),
                                           a in -5i64..5, b in -5i64..5, c in -5i64..5) {
            let (f, g) = (build(&f), build(&g));
            let p = ints(&[a, b, c]);
            let gv = g.eval(&p).unwrap();
            let lhs = f.subst(0, &g).unwrap().eval(&p).unwrap();
            let rhs = f.eval(&[gv, p[1].clone(), p[2].clone()]).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn sqrt_of_square_round_trips(w in small_poly()) {
            let w = build(&w);
            let sq = &w * &w;
            let r = sq.sqrt().expect("square has a root");
            prop_assert!(r == w || r == -&w);
        }
    }
}
