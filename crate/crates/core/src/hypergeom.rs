//! The Karlsson-Minton sum and its terminating `3F2` form.
//!
//! For integers `0 <= l <= k <= min(m, n)`,
//!
//! ```text
//! Σ_i (-1)^i (m-i)! (n-k+i)! / ( i! (k-i)! (m-l-i)! (n+l-2k+i)! ) = (-1)^(k+l)
//! ```
//!
//! The sum runs over `i = 0..=k`; terms with a negative factorial argument in the
//! denominator vanish (`1/j! = 0` for `j < 0`), which reproduces the bounds
//! `max(0, 2k-l-n) <= i <= min(k, m-l)`.
//!
//! The successive-term ratio of the summand is
//!
//! ```text
//! t_{i+1} / t_i = (i - k)(i - (m-l))(i + n-k+1) / ( (i - m)(i + n+l-2k+1)(i + 1) )
//! ```
//!
//! so when the `i = 0` term is nonzero (`n + l - 2k >= 0`) the sum equals
//! `t_0 · 3F2(-k, n-k+1, -(m-l); -m, n+l-2k+1; 1)`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{fact, parity_sign, rat, Rational};
use crate::error::{Error, Result};

/// Indices of the sum, with `0 <= l <= k <= min(m, n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct KMParams {
    k: i64,
    l: i64,
    m: i64,
    n: i64,
}

impl KMParams {
    pub fn new(k: i64, l: i64, m: i64, n: i64) -> Result<Self> {
        if !(0 <= l && l <= k && k <= m.min(n)) {
            return Err(Error::Domain(format!(
                "Karlsson-Minton indices need 0 <= l <= k <= min(m, n), got k={k} l={l} m={m} n={n}"
            )));
        }
        Ok(KMParams { k, l, m, n })
    }

    pub fn k(&self) -> i64 {
        self.k
    }

    pub fn l(&self) -> i64 {
        self.l
    }

    pub fn m(&self) -> i64 {
        self.m
    }

    pub fn n(&self) -> i64 {
        self.n
    }

    /// `(-1)^(k+l)`, the closed-form value of the sum.
    pub fn expected(&self) -> Rational {
        rat(parity_sign(self.k + self.l))
    }
}

impl fmt::Display for KMParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(k={}, l={}, m={}, n={})", self.k, self.l, self.m, self.n)
    }
}

/// `1/j!` as an integer denominator, `None` when the term vanishes.
fn denominator_factorial(j: i64) -> Option<BigInt> {
    (j >= 0).then(|| fact(j as usize))
}

/// Direct summation of the left-hand side.
pub fn km_sum(p: &KMParams) -> Rational {
    let KMParams { k, l, m, n } = *p;
    let mut acc = Rational::zero();
    for i in 0..=k {
        let den = [i, k - i, m - l - i, n + l - 2 * k + i]
            .into_iter()
            .map(denominator_factorial)
            .try_fold(BigInt::one(), |acc, f| f.map(|f| acc * f));
        let Some(den) = den else { continue };
        let num = fact((m - i) as usize) * fact((n - k + i) as usize) * parity_sign(i);
        acc += Rational::new(num, den);
    }
    acc
}

pub fn km_check(p: &KMParams) -> bool {
    km_sum(p) == p.expected()
}

/// Every admissible tuple with `m, n <= max`, ordered by `(m, n, k, l)`.
pub fn admissible_tuples(max: usize) -> Vec<KMParams> {
    let max = max as i64;
    let mut out = Vec::new();
    for m in 0..=max {
        for n in 0..=max {
            out.extend(tuples_for(m, n));
        }
    }
    out
}

fn tuples_for(m: i64, n: i64) -> impl Iterator<Item = KMParams> {
    (0..=m.min(n)).flat_map(move |k| (0..=k).map(move |l| KMParams { k, l, m, n }))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepReport {
    pub tuples: usize,
    pub failures: Vec<KMParams>,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Runs a per-tuple predicate over all admissible tuples in parallel, returning
/// failures in canonical order.
fn sweep<F>(max: usize, include: impl Fn(&KMParams) -> bool + Sync, check: F) -> SweepReport
where
    F: Fn(&KMParams) -> bool + Sync,
{
    let tuples = admissible_tuples(max);
    let selected: Vec<&KMParams> = tuples.iter().filter(|p| include(p)).collect();
    let mut failures: Vec<KMParams> = selected
        .par_iter()
        .filter(|p| !check(p))
        .map(|p| **p)
        .collect();
    failures.sort_by_key(|p| (p.m, p.n, p.k, p.l));
    SweepReport {
        tuples: selected.len(),
        failures,
    }
}

/// `km_check` on every tuple with `0 <= m, n <= max`.
pub fn km_range_verify(max: usize) -> SweepReport {
    sweep(max, |_| true, km_check)
}

/// Parameters of a `3F2` series `Σ_i (a1)_i (a2)_i (a3)_i / ((b1)_i (b2)_i i!) z^i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HypergeomSpec {
    #[serde(serialize_with = "serialize_rationals")]
    pub upper: [Rational; 3],
    #[serde(serialize_with = "serialize_rationals")]
    pub lower: [Rational; 2],
    #[serde(with = "crate::arith::serde_rational")]
    pub argument: Rational,
}

fn serialize_rationals<S: serde::Serializer>(xs: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(xs.iter().map(ToString::to_string))
}

fn non_positive_integer(x: &Rational) -> Option<u64> {
    if x.is_integer() && !x.is_positive() {
        (-x.to_integer()).to_u64()
    } else {
        None
    }
}

impl HypergeomSpec {
    /// Index of the last possibly nonzero term: the smallest `|a|` over upper
    /// parameters that are non-positive integers.
    pub fn truncation_index(&self) -> Option<u64> {
        self.upper.iter().filter_map(non_positive_integer).min()
    }
}

/// Exact value of a terminating `3F2`.
///
/// Only the Pochhammer factors `(b + j)` with `j < T` are touched, where `T` is the
/// truncation index, so a lower parameter may be a non-positive integer as long as
/// its zero factor lies beyond the truncation.
pub fn eval_3f2_terminating(spec: &HypergeomSpec) -> Result<Rational> {
    let t = spec
        .truncation_index()
        .ok_or_else(|| Error::Domain("3F2 has no non-positive integer upper parameter".into()))?;
    let mut term = Rational::one();
    let mut acc = Rational::one();
    for i in 0..t {
        let shift = rat(i as i64);
        let mut num = spec.argument.clone();
        for a in &spec.upper {
            num *= a + &shift;
        }
        let mut den = rat(i as i64 + 1);
        for b in &spec.lower {
            let factor = b + &shift;
            if factor.is_zero() {
                return Err(Error::IllDefinedSeries(format!(
                    "lower parameter {b} gives a zero Pochhammer factor at term {}",
                    i + 1
                )));
            }
            den *= factor;
        }
        term = term * num / den;
        acc += &term;
    }
    Ok(acc)
}

/// The `3F2` restatement of [`km_sum`] and its leading term `t_0`, with
/// `t_0 · 3F2(...) = km_sum(p)`.
pub fn to_3f2(p: &KMParams) -> Result<(HypergeomSpec, Rational)> {
    let KMParams { k, l, m, n } = *p;
    let shift = n + l - 2 * k;
    if shift < 0 {
        return Err(Error::UnsupportedMapping(format!(
            "{p}: n + l - 2k = {shift} < 0, the sum starts above i = 0"
        )));
    }
    let spec = HypergeomSpec {
        upper: [rat(-k), rat(n - k + 1), rat(-(m - l))],
        lower: [rat(-m), rat(shift + 1)],
        argument: Rational::one(),
    };
    let prefactor = Rational::new(
        fact(m as usize) * fact((n - k) as usize),
        fact(k as usize) * fact((m - l) as usize) * fact(shift as usize),
    );
    Ok((spec, prefactor))
}

/// `t_0 · 3F2` for one tuple; `None` when the tuple has no `3F2` mapping.
pub fn km_via_3f2(p: &KMParams) -> Option<Result<Rational>> {
    let (spec, prefactor) = match to_3f2(p) {
        Ok(x) => x,
        Err(_) => return None,
    };
    Some(eval_3f2_terminating(&spec).map(|v| v * prefactor))
}

/// Compares the `3F2` route with [`km_sum`] on every mappable tuple with `m, n <= max`.
pub fn hypergeometric_range_verify(max: usize) -> SweepReport {
    sweep(
        max,
        |p| p.n + p.l - 2 * p.k >= 0,
        |p| matches!(km_via_3f2(p), Some(Ok(v)) if v == km_sum(p)),
    )
}
