//! Arbitrary-precision integer helpers.
//!
//! All exact linear algebra in this crate runs over [`Int`], a signed
//! big integer that stores small magnitudes inline and grows on demand.

use num_traits::{Signed, Zero};

pub use ibig::IBig as Int;

#[inline]
pub fn int(v: i64) -> Int {
    Int::from(v)
}

#[inline]
pub fn is_zero(v: &Int) -> bool {
    v.is_zero()
}

#[inline]
pub fn is_one(v: &Int) -> bool {
    *v == Int::from(1u8)
}

#[inline]
pub fn abs(v: &Int) -> Int {
    v.abs()
}

/// Non-negative gcd; `gcd(0, 0) = 0`.
pub fn gcd(a: &Int, b: &Int) -> Int {
    if a.is_zero() {
        return b.abs();
    }
    if b.is_zero() {
        return a.abs();
    }
    a.gcd(b)
}

/// Non-negative lcm; zero if either argument is zero.
pub fn lcm(a: &Int, b: &Int) -> Int {
    if a.is_zero() || b.is_zero() {
        return Int::zero();
    }
    (a / gcd(a, b) * b).abs()
}

/// Bezout coefficients `(g, x, y)` with `x*a + y*b = g >= 0`.
pub fn extended_gcd(a: &Int, b: &Int) -> (Int, Int, Int) {
    if a.is_zero() && b.is_zero() {
        return (Int::zero(), Int::zero(), Int::zero());
    }
    a.extended_gcd(b)
}

/// Least non-negative residue of `a` modulo `m`; returns `a` unchanged when `m = 0`.
pub fn rem_euclid(a: &Int, m: &Int) -> Int {
    if m.is_zero() {
        return a.clone();
    }
    let m = m.abs();
    let r = a % &m;
    if r.is_negative() {
        r + m
    } else {
        r
    }
}

/// Floor division for `b != 0`.
pub fn div_floor(a: &Int, b: &Int) -> Int {
    let q = a / b;
    let r = a - &q * b;
    if !r.is_zero() && (r.is_negative() != b.is_negative()) {
        q - Int::from(1u8)
    } else {
        q
    }
}

/// Parse a decimal integer, allowing a leading sign and surrounding whitespace.
pub fn parse_int(s: &str) -> Option<Int> {
    let t = s.trim();
    let (neg, digits) = match t.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, t.strip_prefix('+').unwrap_or(t)),
    };
    if digits.is_empty() || !digits.bytes().all(|c| c.is_ascii_digit()) {
        return None;
    }
    let v = Int::from_str_radix(digits, 10).ok()?;
    Some(if neg { -v } else { v })
}

/// Convert to `i64` if it fits.
pub fn to_i64(v: &Int) -> Option<i64> {
    i64::try_from(v).ok()
}

pub fn to_usize(v: &Int) -> Option<usize> {
    usize::try_from(v).ok()
}
