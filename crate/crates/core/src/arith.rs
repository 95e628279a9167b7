//! Integer primitives: square roots, square detection and divisors.
//!
//! Arbitrary-precision routines work on [`BigInt`]; the search loops use the
//! `u64`/`u128` variants, which are exact for every input they accept.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("square root of negative number {0}")]
    NegativeSqrt(BigInt),
    #[error("expected a positive integer, got 0")]
    Zero,
}

/// Floor of the square root of a nonnegative integer.
///
/// Newton iteration from an over-estimate; the sequence decreases
/// monotonically until it reaches `⌊√n⌋`, and a final check corrects it.
pub fn isqrt(n: &BigInt) -> Result<BigInt, ArithError> {
    if n.is_negative() {
        return Err(ArithError::NegativeSqrt(n.clone()));
    }
    if n.is_zero() {
        return Ok(BigInt::zero());
    }
    // 2^ceil(bits/2) >= sqrt(n)
    let bits = n.bits();
    let mut x = BigInt::one() << bits.div_ceil(2);
    loop {
        let y = (&x + n / &x) >> 1;
        if y >= x {
            break;
        }
        x = y;
    }
    while &x * &x > *n {
        x -= 1;
    }
    while (&x + 1u32) * (&x + 1u32) <= *n {
        x += 1;
    }
    Ok(x)
}

/// Returns `Some(r)` with `r*r == n` when `n` is a nonnegative perfect square.
pub fn is_square(n: &BigInt) -> Option<BigInt> {
    if n.sign() == Sign::Minus {
        return None;
    }
    // quadratic residues mod 64 reject ~80% of non-squares without a root
    let low = n.iter_u64_digits().next().unwrap_or(0);
    if !QR64[(low & 63) as usize] {
        return None;
    }
    let r = isqrt(n).ok()?;
    if &r * &r == *n {
        Some(r)
    } else {
        None
    }
}

const QR64: [bool; 64] = {
    let mut t = [false; 64];
    let mut i = 0;
    while i < 64 {
        t[(i * i) % 64] = true;
        i += 1;
    }
    t
};

/// `⌊√n⌋` for `u128`.
pub fn isqrt_u128(n: u128) -> u128 {
    if n < 2 {
        return n;
    }
    let mut r = (n as f64).sqrt() as u128;
    // the float estimate is within a few units; fix up exactly
    while r.checked_mul(r).is_none_or(|sq| sq > n) {
        r -= 1;
    }
    while (r + 1).checked_mul(r + 1).is_some_and(|sq| sq <= n) {
        r += 1;
    }
    r
}

/// `⌊√n⌋` for `u64`.
pub fn isqrt_u64(n: u64) -> u64 {
    isqrt_u128(n as u128) as u64
}

pub fn square_root_u128(n: u128) -> Option<u128> {
    if !QR64[(n & 63) as usize] {
        return None;
    }
    let r = isqrt_u128(n);
    (r * r == n).then_some(r)
}

pub fn square_root_i128(n: i128) -> Option<u128> {
    if n < 0 {
        None
    } else {
        square_root_u128(n as u128)
    }
}

/// Prime factorization by trial division, ascending primes.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    if n <= 1 {
        return out;
    }
    let mut push = |p: u64, n: &mut u64| {
        let mut e = 0;
        while n.is_multiple_of(p) {
            *n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
    };
    push(2, &mut n);
    push(3, &mut n);
    let mut p = 5u64;
    while p * p <= n {
        push(p, &mut n);
        push(p + 2, &mut n);
        p += 6;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Merge two factorizations into the factorization of the product.
pub fn merge_factors(a: &[(u64, u32)], b: &[(u64, u32)]) -> Vec<(u64, u32)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        match (a.get(i), b.get(j)) {
            (Some(&(p, e)), Some(&(q, f))) if p == q => {
                out.push((p, e + f));
                i += 1;
                j += 1;
            }
            (Some(&(p, e)), Some(&(q, _))) if p < q => {
                out.push((p, e));
                i += 1;
            }
            (Some(_), Some(&(q, f))) => {
                out.push((q, f));
                j += 1;
            }
            (Some(&x), None) => {
                out.push(x);
                i += 1;
            }
            (None, Some(&x)) => {
                out.push(x);
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    out
}

/// All divisors of the number with the given factorization, unsorted.
pub fn divisors_from_factors(factors: &[(u64, u32)]) -> Vec<u64> {
    let mut divs = vec![1u64];
    for &(p, e) in factors {
        let len = divs.len();
        let mut pk = 1u64;
        for _ in 0..e {
            pk *= p;
            for i in 0..len {
                divs.push(divs[i] * pk);
            }
        }
    }
    divs
}

/// Divisors `d` of `n` with `d² < n`, in increasing order.
pub fn small_divisors(n: u64) -> Result<Vec<u64>, ArithError> {
    if n == 0 {
        return Err(ArithError::Zero);
    }
    Ok(small_divisors_of(n, &factorize(n)))
}

pub(crate) fn small_divisors_of(n: u64, factors: &[(u64, u32)]) -> Vec<u64> {
    let mut divs: Vec<u64> = divisors_from_factors(factors)
        .into_iter()
        .filter(|&d| (d as u128) * (d as u128) < n as u128)
        .collect();
    divs.sort_unstable();
    divs
}

/// Number of positive divisors.
pub fn tau(n: u64) -> Result<u64, ArithError> {
    if n == 0 {
        return Err(ArithError::Zero);
    }
    Ok(factorize(n).iter().map(|&(_, e)| e as u64 + 1).product())
}

/// Nonnegative gcd of a slice; zero for an empty or all-zero slice.
pub fn gcd_all<'a>(values: impl IntoIterator<Item = &'a BigInt>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::zero(), |g, v| g.gcd(v))
}

/// Largest `m` with `m²` dividing `n` (`n > 0`).
pub fn square_part_root(n: &BigInt) -> BigInt {
    let n = n.abs();
    if n.is_zero() {
        return BigInt::zero();
    }
    let mut m = BigInt::one();
    let mut rest = n;
    let mut p = BigInt::from(2u32);
    // the gcds we see are products of small primes; fall back to the
    // cofactor check once p³ exceeds what is left
    while &p * &p <= rest {
        let p2 = &p * &p;
        while (&rest % &p2).is_zero() {
            rest /= &p2;
            m *= &p;
        }
        while (&rest % &p).is_zero() {
            rest /= &p;
        }
        if &p * &p * &p > rest {
            break;
        }
        p += 1;
    }
    if let Some(r) = is_square(&rest) {
        if r > BigInt::one() {
            m *= r;
        }
    }
    m
}
