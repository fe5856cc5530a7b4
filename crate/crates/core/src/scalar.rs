//! Exact rational scalars.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// The scalar field of every computation in this crate.
pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// `n/d` in lowest terms. Panics when `d == 0`.
pub fn frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn half() -> Q {
    frac(1, 2)
}

/// Exact fraction string, e.g. `-3/2` or `4`.
pub fn fmt_q(x: &Q) -> String {
    x.to_string()
}

/// Parses `a` or `a/b` with optional sign.
pub fn parse_q(s: &str) -> Option<Q> {
    let s = s.trim();
    match s.split_once('/') {
        Some((a, b)) => {
            let a: BigInt = a.trim().parse().ok()?;
            let b: BigInt = b.trim().parse().ok()?;
            if b.is_zero() {
                return None;
            }
            Some(Q::new(a, b))
        }
        None => s.parse::<BigInt>().ok().map(Q::from_integer),
    }
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// Binomial coefficient as a machine integer; only used for slice sizes.
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as usize
}

/// Number of bits needed to write the numerator and denominator.
pub(crate) fn bit_length(x: &Q) -> u64 {
    x.numer().bits() + x.denom().bits()
}

pub(crate) fn sign(parity_product: bool) -> Q {
    if parity_product {
        -Q::one()
    } else {
        Q::one()
    }
}
