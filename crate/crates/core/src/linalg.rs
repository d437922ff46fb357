//! Exact matrices over the rationals.
//!
//! Entries are stored per row as `(column, value)` pairs sorted by column, with
//! zeros never stored. The operator and Gram matrices of weight modules have at
//! most a couple of nonzeros per row, so tensor modules of dimension ~170 stay cheap.
//!
//! Rank and null space go through fraction-free Gauss-Jordan elimination: every
//! row is scaled to a primitive integer vector, pivots are eliminated with the
//! cross-multiplication `a_rr * row_i - a_ir * row_r`, and each updated row is
//! divided by its content again so entries stay small.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::Rational;
use crate::error::{Error, Result};

fn zero_ref() -> &'static Rational {
    static ZERO: OnceLock<Rational> = OnceLock::new();
    ZERO.get_or_init(Rational::zero)
}

#[derive(Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    /// Nonzero entries of each row, sorted by column.
    data: Vec<Vec<(usize, Rational)>>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix {
            rows,
            cols,
            data: vec![Vec::new(); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    /// Builds a matrix from row-major entries.
    pub fn from_entries(rows: usize, cols: usize, entries: Vec<Rational>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                actual: entries.len(),
            });
        }
        let mut m = Self::zeros(rows, cols);
        for (idx, v) in entries.into_iter().enumerate() {
            if !v.is_zero() {
                m.data[idx / cols].push((idx % cols, v));
            }
        }
        Ok(m)
    }

    /// Builds a matrix from nested rows; all rows must have the same length.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let n = rows.len();
        let cols = rows.first().map_or(0, Vec::len);
        let mut entries = Vec::with_capacity(n * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    actual: row.len(),
                });
            }
            entries.extend(row);
        }
        Self::from_entries(n, cols, entries)
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Rational::from_integer(x.into())).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> &Rational {
        assert!(row < self.rows && col < self.cols, "entry ({row}, {col}) out of bounds");
        let r = &self.data[row];
        match r.binary_search_by_key(&col, |e| e.0) {
            Ok(pos) => &r[pos].1,
            Err(_) => zero_ref(),
        }
    }

    pub fn set(&mut self, row: usize, col: usize, value: Rational) {
        assert!(row < self.rows && col < self.cols, "entry ({row}, {col}) out of bounds");
        let r = &mut self.data[row];
        match (r.binary_search_by_key(&col, |e| e.0), value.is_zero()) {
            (Ok(pos), true) => {
                r.remove(pos);
            }
            (Ok(pos), false) => r[pos].1 = value,
            (Err(_), true) => {}
            (Err(pos), false) => r.insert(pos, (col, value)),
        }
    }

    /// Nonzero entries of a row as `(column, value)`, sorted by column.
    pub fn row_entries(&self, row: usize) -> &[(usize, Rational)] {
        &self.data[row]
    }

    /// A row as a dense vector.
    pub fn row(&self, row: usize) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.cols];
        for (c, v) in &self.data[row] {
            out[*c] = v.clone();
        }
        out
    }

    pub fn nonzeros(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Vec::is_empty)
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && self
                .data
                .iter()
                .enumerate()
                .all(|(i, r)| r.iter().all(|(j, v)| self.get(*j, i) == v))
    }

    /// Whether every off-diagonal entry is zero.
    pub fn is_diagonal(&self) -> bool {
        self.is_square()
            && self
                .data
                .iter()
                .enumerate()
                .all(|(i, r)| r.iter().all(|(j, _)| *j == i))
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for (i, r) in self.data.iter().enumerate() {
            for (j, v) in r {
                t.data[*j].push((i, v.clone()));
            }
        }
        t
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        if factor.is_zero() {
            return Self::zeros(self.rows, self.cols);
        }
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .map(|r| r.iter().map(|(c, v)| (*c, v * factor)).collect())
                .collect(),
        }
    }

    fn combine(&self, other: &Self, sign: &Rational) -> Result<Self> {
        self.check_same_shape(other)?;
        let mut out = Self::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            let mut acc: BTreeMap<usize, Rational> = self.data[i].iter().cloned().collect();
            for (c, v) in &other.data[i] {
                *acc.entry(*c).or_insert_with(Rational::zero) += v * sign;
            }
            out.data[i] = acc.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.combine(other, &Rational::one())
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.combine(other, &-Rational::one())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                actual: other.rows,
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for (i, r) in self.data.iter().enumerate() {
            let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
            for (k, a) in r {
                for (j, b) in &other.data[*k] {
                    *acc.entry(*j).or_insert_with(Rational::zero) += a * b;
                }
            }
            out.data[i] = acc.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        }
        Ok(out)
    }

    /// Commutator `self * other - other * self`.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.mul(other)?.sub(&other.mul(self)?)
    }

    fn check_same_shape(&self, other: &Self) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                expected: self.rows * self.cols,
                actual: other.rows * other.cols,
            });
        }
        Ok(())
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ExactMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Exact product `a * v`.
pub fn mat_vec(a: &ExactMatrix, v: &[Rational]) -> Result<Vec<Rational>> {
    if v.len() != a.cols {
        return Err(Error::DimensionMismatch {
            expected: a.cols,
            actual: v.len(),
        });
    }
    Ok(a
        .data
        .iter()
        .map(|r| {
            r.iter()
                .filter(|(c, _)| !v[*c].is_zero())
                .fold(Rational::zero(), |acc, (c, x)| acc + x * &v[*c])
        })
        .collect())
}

/// `a` applied `s` times to `v`; `s = 0` returns `v` unchanged.
pub fn apply_power(a: &ExactMatrix, v: &[Rational], s: usize) -> Result<Vec<Rational>> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch {
            expected: a.rows,
            actual: a.cols,
        });
    }
    if v.len() != a.cols {
        return Err(Error::DimensionMismatch {
            expected: a.cols,
            actual: v.len(),
        });
    }
    let mut cur = v.to_vec();
    for _ in 0..s {
        cur = mat_vec(a, &cur)?;
    }
    Ok(cur)
}

pub fn rank(a: &ExactMatrix) -> usize {
    row_reduce(a).pivots.len()
}

/// Basis of `ker(a)`, each vector scaled so its first nonzero coordinate is 1.
///
/// The basis has one vector per free column of the reduced echelon form, in
/// increasing column order.
pub fn null_space(a: &ExactMatrix) -> Vec<Vec<Rational>> {
    let reduced = row_reduce(a);
    let is_pivot = {
        let mut flags = vec![false; a.cols];
        for &c in &reduced.pivots {
            flags[c] = true;
        }
        flags
    };
    let mut basis = Vec::new();
    for free in (0..a.cols).filter(|&c| !is_pivot[c]) {
        let mut x = vec![Rational::zero(); a.cols];
        x[free] = Rational::one();
        for (row, &pc) in reduced.rows.iter().zip(&reduced.pivots) {
            if !row[free].is_zero() {
                x[pc] = -Rational::new(row[free].clone(), row[pc].clone());
            }
        }
        normalize_leading(&mut x);
        basis.push(x);
    }
    basis
}

/// Scales `v` in place so its first nonzero coordinate is 1. Zero vectors are left alone.
pub fn normalize_leading(v: &mut [Rational]) {
    if let Some(lead) = v.iter().find(|x| !x.is_zero()).cloned() {
        if !lead.is_one() {
            for x in v.iter_mut() {
                *x /= &lead;
            }
        }
    }
}

struct Reduced {
    /// Nonzero rows of the reduced echelon form, one per pivot.
    rows: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
}

fn primitive(row: &mut [BigInt]) {
    let content = row.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if !content.is_zero() && !content.is_one() {
        for x in row.iter_mut() {
            *x /= &content;
        }
    }
}

fn integer_row(entries: &[(usize, Rational)], cols: usize) -> Vec<BigInt> {
    let lcm = entries.iter().fold(BigInt::one(), |l, (_, x)| l.lcm(x.denom()));
    let mut out = vec![BigInt::zero(); cols];
    for (c, x) in entries {
        out[*c] = x.numer() * (&lcm / x.denom());
    }
    primitive(&mut out);
    out
}

fn row_reduce(a: &ExactMatrix) -> Reduced {
    let mut rows: Vec<Vec<BigInt>> = (0..a.rows).map(|i| integer_row(a.row_entries(i), a.cols)).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..a.cols {
        if r == rows.len() {
            break;
        }
        // Smallest-magnitude pivot keeps the cross-multiplied entries small.
        let Some(p) = (r..rows.len())
            .filter(|&i| !rows[i][c].is_zero())
            .min_by(|&i, &j| rows[i][c].magnitude().cmp(rows[j][c].magnitude()))
        else {
            continue;
        };
        rows.swap(r, p);
        let (before, rest) = rows.split_at_mut(r);
        let (pivot_row, after) = rest.split_first_mut().expect("row r exists");
        for row in before.iter_mut().chain(after.iter_mut()) {
            if row[c].is_zero() {
                continue;
            }
            let g = pivot_row[c].gcd(&row[c]);
            let row_mul = &pivot_row[c] / &g;
            let pivot_mul = &row[c] / &g;
            for (x, y) in row.iter_mut().zip(pivot_row.iter()) {
                *x = &*x * &row_mul - y * &pivot_mul;
            }
            primitive(row);
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    // Keep pivots positive so the echelon form is canonical up to row content.
    for (row, &c) in rows.iter_mut().zip(&pivots) {
        if row[c].is_negative() {
            row.iter_mut().for_each(|x| *x = -&*x);
        }
    }
    Reduced { rows, pivots }
}
