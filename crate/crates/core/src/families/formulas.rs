//! The parametric entries, written once over any [`Ring`] so the same text
//! is evaluated at integers and expanded symbolically.

use crate::poly::{binary_form, Ring};

fn sq<R: Ring>(x: R) -> R {
    x.clone() * x
}

fn k<R: Ring>(like: &R, v: i64) -> R {
    like.konst(v)
}

/// Entries of the general four-parameter family, homogeneous of degree 20
/// in `(c, d)` and 8 in `(g, h)`.
pub fn general<R: Ring>(c: &R, d: &R, g: &R, h: &R) -> [R; 4] {
    let c2 = c.pow(2);
    let d2 = d.pow(2);
    let cd2 = c2.clone() * d2.clone();
    let c4md4 = c.pow(4) - d.pow(4);
    let e8 = binary_form(c, d, &[1, 0, 0, 0, -18, 0, 0, 0, 1]);
    let c2md2 = c2.clone() - d2.clone();
    let c2pd2 = c2.clone() + d2.clone();
    let g2h2 = g.pow(2) + h.pow(2);

    let a0_inner = -(k(c, 4) * c2.clone() * d.pow(4) * c2md2.clone() * g.pow(4))
        + e8.clone() * g.pow(3) * h.clone()
        + k(c, 8) * cd2.clone() * c2md2.clone() * (k(c, 2) * c2.clone() + d2.clone()) * g.pow(2) * h.pow(2)
        - e8 * g.clone() * h.pow(3)
        - k(c, 4) * c2.clone() * d.pow(4) * c2md2.clone() * h.pow(4);
    let a0 = sq(c2pd2.clone()) * sq(a0_inner);

    let a1 = k(c, 8)
        * cd2.clone()
        * sq(c4md4.clone())
        * sq(g2h2)
        * (k(c, 2) * cd2.clone() * g.pow(2) - c4md4.clone() * g.clone() * h.clone() - k(c, 2) * cd2.clone() * h.pow(2))
        * (c4md4.clone() * g.pow(2) + k(c, 8) * cd2.clone() * g.clone() * h.clone() - c4md4.clone() * h.pow(2));

    let lin = |p: R, q: R| p * g.clone() + q * h.clone();
    let cpd = c.clone() + d.clone();
    let cmd = c.clone() - d.clone();
    let m2 = binary_form(c, d, &[1, -2, -1]);
    let p2 = binary_form(c, d, &[1, 2, -1]);
    let a2 = sq(c2md2)
        * lin(d.clone() * cpd.clone(), -(c.clone() * cmd.clone()))
        * lin(d.clone() * cmd.clone(), c.clone() * cpd.clone())
        * lin(m2.clone(), c2pd2.clone())
        * lin(p2.clone(), c2pd2.clone())
        * lin(c2pd2.clone(), -p2)
        * lin(c.clone() * cpd.clone(), -(d.clone() * cmd.clone()))
        * lin(c.clone() * cmd, d.clone() * cpd)
        * lin(c2pd2, -m2);

    let f4m = binary_form(c, d, &[1, 0, -4, 0, -1]);
    let f4p = binary_form(c, d, &[1, 0, 4, 0, -1]);
    let a3 = k(c, 4)
        * cd2.clone()
        * g.clone()
        * h.clone()
        * (g.pow(2) - h.pow(2))
        * lin(c4md4.clone(), k(c, 4) * cd2.clone())
        * lin(k(c, 4) * cd2, -c4md4)
        * lin(f4m.clone(), f4p.clone())
        * lin(f4p, -f4m);
    [a0, a1, a2, a3]
}

/// The one-parameter family in `t`.
pub fn t_family<R: Ring>(t: &R) -> [R; 4] {
    let lin = |a: i64, b: i64| k(t, a) * t.clone() + k(t, b);
    let a0 = k(t, 25) * sq(binary_form(t, &k(t, 1), &[18, -319, -684, 319, 18]));
    let a1 = k(t, 9) * lin(1, -1) * t.clone() * lin(1, 1) * lin(9, -20) * lin(11, 29) * lin(20, 9) * lin(29, -11);
    let a2 = k(t, 16) * lin(1, 5) * lin(1, 6) * lin(2, -3) * lin(3, 2) * lin(5, -7) * lin(5, -1) * lin(6, -1) * lin(7, 5);
    let one = k(t, 1);
    let a3 = k(t, 7200)
        * sq(t.pow(2) + one.clone())
        * binary_form(t, &one, &[9, -40, -9])
        * binary_form(t, &one, &[10, 9, -10]);
    [a0, a1, a2, a3]
}

/// `(a0, a1, a3)` of the family with two equal parts.
pub fn equal_parts<R: Ring>(c: &R, d: &R) -> [R; 3] {
    let f = |co: &[i64]| binary_form(c, d, co);
    let cmd = c.clone() - d.clone();
    let a0 = sq(cmd.clone()) * sq(f(&[7, 12, -22, 12, 7]));
    let a1 = k(c, -24)
        * sq(cmd)
        * sq(c.clone() + d.clone())
        * f(&[1, 0, 1])
        * f(&[1, -6, 1])
        * f(&[1, 6, 1]);
    let a3 = k(c, -4) * c.clone() * d.clone() * f(&[1, 0, -5]) * f(&[5, 0, -1]) * f(&[7, 0, 1]) * f(&[1, 0, 7]);
    [a0, a1, a3]
}

/// `(a, b, r, u)` of the pulled-back point and the resulting `(p, q, s, t)`.
pub fn double_point_pullback<R: Ring>(c: &R, d: &R) -> ([R; 4], [R; 4]) {
    let f = |co: &[i64]| binary_form(c, d, co);
    let a = f(&[5, 0, -1]) * f(&[1, 0, 7]);
    let b = -(f(&[1, 0, -5]) * f(&[7, 0, 1]));
    let r = (c.clone() - d.clone()) * f(&[1, 36, 38, 36, 1]);
    let u = (c.clone() + d.clone()) * f(&[1, -36, 38, -36, 1]);
    let p = a.clone() * d.clone() - b.clone() * c.clone();
    let q = a.clone() * c.clone() - b.clone() * d.clone();
    let s = a.clone() * d.clone() + b.clone() * c.clone();
    let t = a.clone() * c.clone() + b.clone() * d.clone();
    ([a, b, r, u], [p, q, s, t])
}

/// `(a0, a1, a3, A3)` of the two cubes sharing `(a0; a1, a1)`.
pub fn same_prefix<R: Ring>(u: &R, v: &R) -> [R; 4] {
    let f = |co: &[i64]| binary_form(u, v, co);
    let a0 = sq(f(&[2, 0, -5, -4, -2]));
    let a1 = k(u, 4)
        * u.clone()
        * (u.clone() - v.clone())
        * v.clone()
        * (u.clone() + v.clone())
        * f(&[2, 1])
        * f(&[1, 2])
        * f(&[1, 1, 1]);
    let a3 = -(u.clone() * f(&[1, 2]) * f(&[1, -2, -2]) * f(&[1, 0, 2]) * f(&[3, 4, 2]));
    let big_a3 = v.clone() * f(&[2, 1]) * f(&[2, 2, -1]) * f(&[2, 0, 1]) * f(&[2, 4, 3]);
    [a0, a1, a3, big_a3]
}

/// Four times the five entries of the near-4-cube family, keeping
/// everything integral.
pub fn near4_times4<R: Ring>(c: &R) -> [R; 5] {
    let one = k(c, 1);
    let f = |co: &[i64]| binary_form(c, &one, co);
    let cm1 = c.clone() - one.clone();
    let a0 = cm1.pow(4) * sq(f(&[7, 12, -22, 12, 7]));
    let a1 = k(c, -24) * cm1.pow(4) * sq(c.clone() + one.clone()) * f(&[1, 0, 1]) * f(&[1, -6, 1]) * f(&[1, 6, 1]);
    let a3 = k(c, -4) * c.clone() * sq(cm1) * f(&[1, 0, -5]) * f(&[1, 0, 7]) * f(&[5, 0, -1]) * f(&[7, 0, 1]);
    let a4x4 = -(f(&[1, 1, 19, -5]) * f(&[3, -1, 9, 5]) * f(&[5, -19, -1, -1]) * f(&[5, 9, -1, 3]));
    let four = k(c, 4);
    [four.clone() * a0, four.clone() * a1.clone(), four.clone() * a1, four * a3, a4x4]
}
