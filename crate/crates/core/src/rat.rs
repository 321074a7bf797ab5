//! Exact rational scalars.
//!
//! Backed by [`num_rational::BigRational`], which already keeps the
//! denominator positive and the fraction reduced.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub type Rat = num_rational::BigRational;

pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Exact `j`-th root of a non-negative integer, if it exists.
fn exact_int_root(n: &BigInt, j: u32) -> Option<BigInt> {
    debug_assert!(!n.is_negative());
    let r = n.nth_root(j);
    (num_traits::pow(r.clone(), j as usize) == *n).then_some(r)
}

/// A rational `j`-th root of `q`, taking the positive one when two exist.
pub fn rational_root(q: &Rat, j: u32) -> Option<Rat> {
    assert!(j >= 1);
    if q.is_zero() {
        return Some(Rat::zero());
    }
    let negative = q.is_negative();
    if negative && j.is_multiple_of(2) {
        return None;
    }
    let num = exact_int_root(&q.numer().abs(), j)?;
    let den = exact_int_root(q.denom(), j)?;
    let root = Rat::new(num, den);
    Some(if negative { -root } else { root })
}

/// `q^e` for a signed exponent; `q` must be nonzero when `e < 0`.
pub fn pow_signed(q: &Rat, e: i64) -> Rat {
    if e >= 0 {
        num_traits::pow(q.clone(), e as usize)
    } else {
        num_traits::pow(q.recip(), (-e) as usize)
    }
}

/// Canonical text form: `num/den`, with the denominator omitted when it is 1.
pub fn format_rat(q: &Rat) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}
