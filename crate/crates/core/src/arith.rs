//! Exact scalars and the combinatorial functions built on them.
//!
//! [`Rational`] is `num_rational::BigRational`, which is always kept in lowest
//! terms with a positive denominator. Its `Display` impl prints `p/q`, or just `p`
//! when the denominator is one, and is the textual form used in every report.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

const FACTORIAL_TABLE_LEN: usize = 257;

fn factorial_table() -> &'static [BigInt] {
    static TABLE: OnceLock<Vec<BigInt>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut table = Vec::with_capacity(FACTORIAL_TABLE_LEN);
        table.push(BigInt::one());
        for i in 1..FACTORIAL_TABLE_LEN {
            let next = &table[i - 1] * BigInt::from(i);
            table.push(next);
        }
        table
    })
}

/// `n!` for `n >= 0`.
pub fn factorial(n: i64) -> Result<BigInt> {
    if n < 0 {
        return Err(Error::Domain(format!("factorial of negative integer {n}")));
    }
    let table = factorial_table();
    let n = n as usize;
    if n < table.len() {
        return Ok(table[n].clone());
    }
    let mut acc = table[table.len() - 1].clone();
    for i in table.len()..=n {
        acc *= BigInt::from(i);
    }
    Ok(acc)
}

/// `n!` for an index that is known to be nonnegative.
pub(crate) fn fact(n: usize) -> BigInt {
    factorial(n as i64).expect("nonnegative")
}

/// `n choose k`, zero when `k < 0` or `k > n`.
pub fn binomial(n: u64, k: i64) -> BigInt {
    if k < 0 || k as u64 > n {
        return BigInt::zero();
    }
    let k = (k as u64).min(n - k as u64);
    // Multiplicative formula; each partial product is itself a binomial coefficient.
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// `1/j!`, with the reciprocal-gamma convention `1/j! = 0` for negative `j`.
pub fn reciprocal_factorial(j: i64) -> Rational {
    if j < 0 {
        return Rational::zero();
    }
    Rational::new(BigInt::one(), factorial(j).expect("nonnegative"))
}

/// Exact sign as `-1`, `0` or `1`.
pub fn sign(x: &Rational) -> i8 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

/// `(-1)^e`.
pub fn parity_sign(e: i64) -> i64 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `p/q` or `p` into a reduced rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    s.trim()
        .parse::<Rational>()
        .map_err(|e| Error::Domain(format!("invalid rational literal {s:?}: {e}")))
}

/// Serde adapter writing a rational as its `p/q` string.
pub mod serde_rational {
    use serde::{Deserialize, Deserializer, Serializer};

    use super::{parse_rational, Rational};

    pub fn serialize<S: Serializer>(value: &Rational, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(value)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(deserializer: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(deserializer)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}
