//! Arbitrary-precision rationals.
//!
//! The ground field is Q, backed by `num_rational::BigRational`, which keeps
//! every value in lowest terms with a positive denominator.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

/// The integer `n` as a rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// The fraction `n/d`, reduced. Panics if `d == 0`.
pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"n"`, `"-n"`, or `"n/d"` (surrounding whitespace allowed).
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let num: BigInt = num
        .parse()
        .map_err(|_| Error::Parse(format!("bad rational {s:?}")))?;
    let den: BigInt = den
        .parse()
        .map_err(|_| Error::Parse(format!("bad rational {s:?}")))?;
    if den.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(Rational::new(num, den))
}

/// Renders as `"n"` for integers and `"n/d"` otherwise.
pub fn format_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// `|q|` using the ordering of Q.
pub fn abs(q: &Rational) -> Rational {
    q.abs()
}

/// `+1` or `-1` for nonzero `q`.
pub fn sign(q: &Rational) -> Rational {
    if q.is_negative() {
        -Rational::one()
    } else {
        Rational::one()
    }
}

/// Integer power with negative exponents allowed for nonzero bases.
pub fn pow(q: &Rational, e: i64) -> Rational {
    if e >= 0 {
        num_traits::pow(q.clone(), e as usize)
    } else {
        num_traits::pow(q.recip(), (-e) as usize)
    }
}

/// Exact `d`-th root of a nonnegative integer, if one exists.
pub(crate) fn integer_root(n: &BigInt, d: u32) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.nth_root(d);
    if num_traits::pow(r.clone(), d as usize) == *n {
        Some(r)
    } else {
        None
    }
}

/// All rational `x` with `x^d = c`; empty when none exist.
///
/// For odd `d` there is at most one root; for even `d` the roots come in a
/// `±` pair (positive first).
pub fn rational_roots_of_power(c: &Rational, d: u32) -> Vec<Rational> {
    assert!(d >= 1);
    if c.is_zero() {
        return vec![Rational::zero()];
    }
    let negative = c.is_negative();
    if negative && d.is_multiple_of(2) {
        return Vec::new();
    }
    let (num, den) = (c.numer().abs(), c.denom().clone());
    let (Some(rn), Some(rd)) = (integer_root(&num, d), integer_root(&den, d)) else {
        return Vec::new();
    };
    let root = Rational::new(rn, rd);
    if d.is_multiple_of(2) {
        vec![root.clone(), -root]
    } else if negative {
        vec![-root]
    } else {
        vec![root]
    }
}

/// Prime factorization by trial division, as `(prime, exponent)` pairs.
fn factorize(mut n: BigInt) -> Vec<(BigInt, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    loop {
        if let Some(m) = n.to_u128() {
            out.append(&mut factorize_from(m, p));
            return out;
        }
        let big = BigInt::from(p);
        let mut e = 0;
        while (&n % &big).is_zero() {
            n /= &big;
            e += 1;
        }
        if e > 0 {
            out.push((big, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
}

fn factorize_from(mut m: u128, mut p: u64) -> Vec<(BigInt, u32)> {
    let mut out = Vec::new();
    while (p as u128) * (p as u128) <= m {
        let mut e = 0;
        while m.is_multiple_of(p as u128) {
            m /= p as u128;
            e += 1;
        }
        if e > 0 {
            out.push((BigInt::from(p), e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if m > 1 {
        out.push((BigInt::from(m), 1));
    }
    out
}

/// Positive divisors of a nonzero integer, ascending.
pub(crate) fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut out = vec![BigInt::one()];
    for (p, e) in factorize(n.abs()) {
        let mut next = Vec::with_capacity(out.len() * (e as usize + 1));
        for d in &out {
            let mut q = d.clone();
            for _ in 0..=e {
                next.push(q.clone());
                q *= &p;
            }
        }
        out = next;
    }
    out.sort();
    out
}
