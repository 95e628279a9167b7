//! Symbolic checks of the parametrizations: every subset sum (times a
//! square denominator) is exhibited as the square of an explicit
//! polynomial, and the auxiliary relations expand to zero.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Pow, Zero};
use thiserror::Error;

use super::{binary_form, MultiPoly, Ring};
use crate::families::{family_t, formulas};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Identity {
    /// `(a0, a1, a2, a3)` in terms of `x, y, z, P, Q`: six sums are squares.
    Parametrization,
    /// The two remaining sums equal the quartic right-hand sides in `R, S`.
    RsSystem,
    /// Those quartics after `P, Q = (uy ∓ m)/2`.
    RsSubstitution,
    /// The four-parameter family in `c, d, G, H`.
    General,
    /// The family with `a1 = a2`, including the pulled-back point.
    EqualParts,
    /// The pair of cubes sharing `a0, a1, a2`.
    SamePrefix,
}

impl Identity {
    pub const ALL: [Identity; 6] = [
        Identity::Parametrization,
        Identity::RsSystem,
        Identity::RsSubstitution,
        Identity::General,
        Identity::EqualParts,
        Identity::SamePrefix,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Identity::Parametrization => "param",
            Identity::RsSystem => "rs",
            Identity::RsSubstitution => "rs-sub",
            Identity::General => "general",
            Identity::EqualParts => "a1a2",
            Identity::SamePrefix => "prefix",
        }
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Identity {
    type Err = String;

    /// Accepts the names above or the letters `a` to `f` in the same order.
    fn from_str(s: &str) -> Result<Self, String> {
        Identity::ALL
            .iter()
            .zip(["a", "b", "c", "d", "e", "f"])
            .find(|(id, letter)| id.name() == s || *letter == s)
            .map(|(id, _)| *id)
            .ok_or_else(|| format!("unknown identity {s:?}"))
    }
}

/// `denominator · (sum) = witness²` as polynomials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquareWitness {
    pub label: String,
    pub denominator: MultiPoly,
    pub witness: MultiPoly,
}

/// A relation whose expansion must vanish.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZeroCheck {
    pub label: String,
    pub residual: MultiPoly,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityReport {
    pub identity: Identity,
    pub squares: Vec<SquareWitness>,
    pub zeros: Vec<ZeroCheck>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdentityError {
    #[error("{identity}: {label} is not a square polynomial")]
    NotSquare { identity: Identity, label: String },
    #[error("{identity}: {label} leaves a residual with {terms} terms")]
    NonZero { identity: Identity, label: String, terms: usize },
}

struct Builder {
    identity: Identity,
    squares: Vec<SquareWitness>,
    zeros: Vec<ZeroCheck>,
}

impl Builder {
    fn new(identity: Identity) -> Self {
        Builder {
            identity,
            squares: Vec::new(),
            zeros: Vec::new(),
        }
    }

    fn square(&mut self, label: String, denominator: &MultiPoly, scaled_sum: &MultiPoly) -> Result<(), IdentityError> {
        let witness = scaled_sum.sqrt().ok_or_else(|| IdentityError::NotSquare {
            identity: self.identity,
            label: label.clone(),
        })?;
        self.zero(format!("{label}: D*sum - W^2"), scaled_sum - &(&witness * &witness))?;
        self.squares.push(SquareWitness {
            label,
            denominator: denominator.clone(),
            witness,
        });
        Ok(())
    }

    fn zero(&mut self, label: String, residual: MultiPoly) -> Result<(), IdentityError> {
        if !residual.is_zero() {
            return Err(IdentityError::NonZero {
                identity: self.identity,
                label,
                terms: residual.len(),
            });
        }
        self.zeros.push(ZeroCheck { label, residual });
        Ok(())
    }

    /// Squares for every subset sum whose mask passes `keep`.
    fn cube_sums(&mut self, prefix: &str, entries: &[MultiPoly], den: &MultiPoly, keep: impl Fn(usize) -> bool) -> Result<(), IdentityError> {
        let d = entries.len() - 1;
        for mask in 0..1usize << d {
            if !keep(mask) {
                continue;
            }
            let mut sum = entries[0].clone();
            let mut label = format!("{prefix}a0");
            for i in 0..d {
                if mask >> i & 1 == 1 {
                    sum = &sum + &entries[i + 1];
                    label.push_str(&format!("+a{}", i + 1));
                }
            }
            self.square(label, den, &sum)?;
        }
        Ok(())
    }

    fn finish(self) -> IdentityReport {
        IdentityReport {
            identity: self.identity,
            squares: self.squares,
            zeros: self.zeros,
        }
    }
}

/// Numerators of `(a0, a1, a2, a3)` over the common denominator
/// `4x²y²z²`, followed by that denominator.
fn parametrization(v: &[MultiPoly]) -> ([MultiPoly; 4], MultiPoly) {
    let (x, y, z, p, q) = (&v[0], &v[1], &v[2], &v[3], &v[4]);
    let c = |k: i64| x.konst(k);
    let x2y2 = x.pow(2) * y.pow(2);
    let z2 = z.pow(2);
    let d = p.pow(2) - q.pow(2);
    let xy2z = x.clone() * y.pow(2) * z.clone();
    let xy = x.clone() * y.clone();
    let n0 = z2.clone() * (d.clone() + x2y2.clone()).pow(2);
    let n1 = c(4) * x2y2.clone() * z2.clone() * -d.clone();
    let n2 = (x.pow(2) - z2.clone()) * (d.clone() + xy2z.clone()) * (d - xy2z);
    let n3 = -(z2.clone()
        * (p.clone() + q.clone() - xy.clone())
        * (p.clone() + q.clone() + xy.clone())
        * (p.clone() - q.clone() + xy.clone())
        * (p.clone() - q.clone() - xy));
    ([n0, n1, n2, n3], c(4) * x2y2 * z2)
}

/// Right-hand sides of the `R²`, `S²` quartics in `x, y, z, P, Q`.
fn rs_quartics(v: &[MultiPoly]) -> (MultiPoly, MultiPoly) {
    let (x, y, z, p, q) = (&v[0], &v[1], &v[2], &v[3], &v[4]);
    let dd = (p.pow(2) - q.pow(2)).pow(2);
    let xy = x.clone() * y.clone();
    let common = x.pow(2) * dd.clone() + x.pow(2) * y.pow(4) * z.pow(4);
    let side = |w: &MultiPoly| {
        let two_w = x.konst(2) * w.clone();
        common.clone()
            - (dd.clone() - x.pow(2) * y.pow(2) * (two_w.clone() - xy.clone()) * (two_w + xy.clone())) * z.pow(2)
    };
    (side(p), side(q))
}

pub fn verify_identity(id: Identity) -> Result<IdentityReport, IdentityError> {
    let mut b = Builder::new(id);
    match id {
        Identity::Parametrization => {
            let v = MultiPoly::variables(&["x", "y", "z", "P", "Q"]);
            let ([n0, n1, n2, n3], den) = parametrization(&v);
            // the two sums holding both a2 and a3 are the R, S conditions
            b.cube_sums("", &[n0, n1, n2, n3], &den, |m| m & 0b110 != 0b110)?;
        }
        Identity::RsSystem => {
            let v = MultiPoly::variables(&["x", "y", "z", "P", "Q"]);
            let ([n0, n1, n2, n3], _) = parametrization(&v);
            let (r, s) = rs_quartics(&v);
            b.zero("D*(a0+a2+a3) - R^2 rhs".into(), &(&(&n0 + &n2) + &n3) - &r)?;
            b.zero("D*(a0+a1+a2+a3) - S^2 rhs".into(), &(&(&(&n0 + &n1) + &n2) + &n3) - &s)?;
        }
        Identity::RsSubstitution => {
            let v = MultiPoly::variables(&["x", "y", "z", "P", "Q", "u", "m"]);
            let (x, y, z, u, m) = (&v[0], &v[1], &v[2], &v[5], &v[6]);
            let (r, s) = rs_quartics(&v);
            let uy = u * y;
            let images = [&uy - m, &uy + m];
            let two = BigInt::from(2);
            // both quartics have degree 4 in P, Q, so each side is scaled by 2⁴
            let r_sub = r.subst_scaled(&[3, 4], &images, &two).expect("same variables");
            let s_sub = s.subst_scaled(&[3, 4], &images, &two).expect("same variables");
            let x2z2 = x.pow(2) * z.pow(2);
            let lead = (x.pow(2) - z.pow(2)) * u.pow(2) + x2z2.clone();
            let tail = x2z2.clone() * (u.pow(2) - x.pow(2) + z.pow(2)) * y.pow(2);
            let mid = x.konst(2) * u.clone() * x2z2 * m.clone() * y.clone();
            let r5 = lead.clone() * m.pow(2) - mid.clone() + tail.clone();
            let s5 = lead * m.pow(2) + mid + tail;
            let k = x.konst(16) * y.pow(2);
            b.zero("16*R^2 rhs(P,Q) - 16*y^2*R^2 rhs(m,y)".into(), r_sub - k.clone() * r5)?;
            b.zero("16*S^2 rhs(P,Q) - 16*y^2*S^2 rhs(m,y)".into(), s_sub - k * s5)?;
        }
        Identity::General => {
            let v = MultiPoly::variables(&["c", "d", "G", "H"]);
            let e = formulas::general(&v[0], &v[1], &v[2], &v[3]);
            let one = v[0].konst(1);
            b.cube_sums("", &e, &one, |_| true)?;
            // the one-parameter family is the (3, 1, t, 1) member with a1 and a3 swapped, over 32²
            let t = MultiPoly::variables(&["t"]).remove(0);
            let g = formulas::general(&t.konst(3), &t.konst(1), &t, &t.konst(1));
            let f = formulas::t_family(&t);
            let s = t.konst(1024);
            for (label, lhs, rhs) in [("a0", &g[0], &f[0]), ("a1", &g[3], &f[1]), ("a2", &g[2], &f[2]), ("a3", &g[1], &f[3])] {
                b.zero(format!("general(3,1,t,1) vs 1024*t-family {label}"), lhs - &(&s * rhs))?;
            }
        }
        Identity::EqualParts => {
            let v = MultiPoly::variables(&["c", "d"]);
            let [a0, a1, a3] = formulas::equal_parts(&v[0], &v[1]);
            let one = v[0].konst(1);
            b.cube_sums("", &[a0.clone(), a1.clone(), a1.clone(), a3.clone()], &one, |_| true)?;
            let (_, [p, q, s, _]) = formulas::double_point_pullback(&v[0], &v[1]);
            let p2 = p.pow(2);
            b.zero("p^2 - a0".into(), &p2 - &a0)?;
            b.zero("q^2 - p^2 - a1".into(), &(&q.pow(2) - &p2) - &a1)?;
            b.zero("s^2 - p^2 - a3".into(), &(&s.pow(2) - &p2) - &a3)?;
        }
        Identity::SamePrefix => {
            let v = MultiPoly::variables(&["u", "v"]);
            let (u, w) = (&v[0], &v[1]);
            let [a0, a1, a3, big_a3] = formulas::same_prefix(u, w);
            let one = u.konst(1);
            b.cube_sums("first: ", &[a0.clone(), a1.clone(), a1.clone(), a3.clone()], &one, |_| true)?;
            b.cube_sums("second: ", &[a0.clone(), a1.clone(), a1.clone(), big_a3.clone()], &one, |_| true)?;
            // the displayed roots, doubled: (p,q,r,s), (P1,Q1,R1,S1), (P2,Q2,R2,S2)
            let f = |co: &[i64]| binary_form(u, w, co);
            let roots = [
                [f(&[2, 0, -5, -4, -2]), f(&[2, 2, 1, 2, 2]), f(&[2, 2, 1, 2, 2]), f(&[2, 4, 5, 0, -2])],
                [f(&[-1, 2, 7, 8, 2]), f(&[1, 2, 7, 6, 2]), f(&[1, 2, 7, 6, 2]), f(&[1, 6, 5, 4, 2])],
                [f(&[2, 4, 5, 6, 1]), f(&[2, 6, 7, 2, 1]), f(&[2, 6, 7, 2, 1]), f(&[2, 8, 7, 2, -1])],
            ];
            let base = [a0.clone(), &a0 + &a1, &a0 + &a1, &(&a0 + &a1) + &a1];
            for (row, extra) in [(0, None), (1, Some(&a3)), (2, Some(&big_a3))] {
                for (k, root) in roots[row].iter().enumerate() {
                    let sum = match extra {
                        None => base[k].clone(),
                        Some(e) => &base[k] + e,
                    };
                    b.zero(format!("root {row}.{k} squared - sum"), &root.pow(2) - &sum)?;
                }
            }
        }
    }
    Ok(b.finish())
}

/// Per-`t` gcd of the one-parameter family and whether it divides the bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GcdReport {
    pub bound: BigInt,
    pub rows: Vec<(i64, BigInt, bool)>,
}

impl GcdReport {
    pub fn counterexamples(&self) -> impl Iterator<Item = &(i64, BigInt, bool)> {
        self.rows.iter().filter(|r| !r.2)
    }
}

/// `M = 2^45 · 3^18 · 5^2 · 13^16 · 37^16`.
pub fn gcd_bound() -> BigInt {
    let p = |b: u32, e: u32| Pow::pow(BigInt::from(b), e);
    p(2, 45) * p(3, 18) * p(5, 2) * p(13, 16) * p(37, 16)
}

pub fn check_gcd_divides_m(t_lo: i64, t_hi: i64) -> GcdReport {
    let bound = gcd_bound();
    let rows = (t_lo..=t_hi)
        .map(|t| {
            let g = family_t(t).gcd();
            let ok = !g.is_zero() && (&bound % &g).is_zero();
            (t, g, ok)
        })
        .collect();
    GcdReport { bound, rows }
}
