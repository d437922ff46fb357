//! Singular vectors of `V_m ⊗ V_n` and the forms
//! `ω_k(v, w) = (Q⊗R)(v, X^{s_k} w)` on them, with `s_k = m + n - 2k`.
//!
//! Every quantity has two routes: a closed form and a brute-force computation
//! with the module matrices. [`omega_table`] refuses to report a value unless
//! both agree exactly.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::arith::{fact, parity_sign, rat, sign, Rational};
use crate::error::{Error, Result};
use crate::forms::{canonical_form, evaluate, tensor_form, BilinearForm};
use crate::linalg::{apply_power, null_space, ExactMatrix};
use crate::modules::{irreducible, tensor_product, weight_space_indices, Generator, ModuleVector, WeightModule};

fn check_k(m: usize, n: usize, k: usize) -> Result<()> {
    if k > m.min(n) {
        return Err(Error::Domain(format!("k = {k} exceeds min(m, n) = {}", m.min(n))));
    }
    Ok(())
}

fn nonzero(q: &Rational, r: &Rational) -> Result<()> {
    if q.is_zero() || r.is_zero() {
        return Err(Error::Degenerate(format!("form constants q = {q}, r = {r} must be nonzero")));
    }
    Ok(())
}

/// `s_k = m + n - 2k`.
pub fn s_k(m: usize, n: usize, k: usize) -> usize {
    m + n - 2 * k
}

/// Position of `e_{wa} ⊗ ẽ_{wb}` in `V_m ⊗ V_n`.
fn pair_index(m: usize, n: usize, wa: i64, wb: i64) -> usize {
    let i = ((wa + m as i64) / 2) as usize;
    let j = ((wb + n as i64) / 2) as usize;
    i * (n + 1) + j
}

/// `V_m ⊗ V_n` together with the per-`k` data both routes share.
#[derive(Debug, Clone)]
pub struct TensorPair {
    m: usize,
    n: usize,
    module: Arc<WeightModule>,
}

impl TensorPair {
    pub fn new(m: usize, n: usize) -> Self {
        TensorPair {
            m,
            n,
            module: tensor_product(&irreducible(m), &irreducible(n)),
        }
    }

    /// Uses a caller-supplied module in place of `V_m ⊗ V_n`; the brute-force routes
    /// then run on its matrices. Used for mutation testing.
    pub fn with_module(m: usize, n: usize, module: Arc<WeightModule>) -> Result<Self> {
        if module.dim() != (m + 1) * (n + 1) {
            return Err(Error::DimensionMismatch {
                expected: (m + 1) * (n + 1),
                actual: module.dim(),
            });
        }
        Ok(TensorPair { m, n, module })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn module(&self) -> &Arc<WeightModule> {
        &self.module
    }

    fn vector(&self, coords: Vec<Rational>) -> ModuleVector {
        ModuleVector::new(Arc::clone(&self.module), coords).expect("dimension matches")
    }

    /// `b_{-s_k} = Σ_{i=0}^{k} (-1)^i e_{-m+2i} ⊗ ẽ_{-n+2(k-i)}`.
    pub fn b_closed_form(&self, k: usize) -> Result<ModuleVector> {
        let (m, n) = (self.m, self.n);
        check_k(m, n, k)?;
        let mut coords = vec![Rational::zero(); self.module.dim()];
        for i in 0..=k as i64 {
            let idx = pair_index(m, n, -(m as i64) + 2 * i, -(n as i64) + 2 * (k as i64 - i));
            coords[idx] = rat(parity_sign(i));
        }
        Ok(self.vector(coords))
    }

    /// The Y-kernel of the weight `-s_k` space, computed by exact elimination.
    ///
    /// Fails with an inconsistency error unless the kernel is one-dimensional.
    pub fn y_kernel_singular(&self, k: usize) -> Result<ModuleVector> {
        check_k(self.m, self.n, k)?;
        let w = -(s_k(self.m, self.n, k) as i64);
        let mut kernel = self.y_kernel(w)?;
        if kernel.len() != 1 {
            return Err(Error::Inconsistency(format!(
                "Y-kernel of weight {w} in {} has dimension {}, expected 1",
                self.module.label(),
                kernel.len()
            )));
        }
        Ok(kernel.remove(0))
    }

    /// Basis of the kernel of `Y` restricted to the weight-`w` space.
    pub fn y_kernel(&self, w: i64) -> Result<Vec<ModuleVector>> {
        let cols = weight_space_indices(&self.module, w);
        let y = self.module.matrix(Generator::Y);
        // Y carries weight w into weight w - 2, so outside those rows it must vanish.
        let rows = weight_space_indices(&self.module, w - 2);
        for &c in &cols {
            for r in 0..self.module.dim() {
                if !y.get(r, c).is_zero() && self.module.weights()[r] != w - 2 {
                    return Err(Error::Inconsistency(format!(
                        "Y does not lower weight {w} by 2 in {}",
                        self.module.label()
                    )));
                }
            }
        }
        let mut restricted = ExactMatrix::zeros(rows.len(), cols.len());
        for (ri, &r) in rows.iter().enumerate() {
            for (ci, &c) in cols.iter().enumerate() {
                restricted.set(ri, ci, y.get(r, c).clone());
            }
        }
        Ok(null_space(&restricted)
            .into_iter()
            .map(|x| {
                let mut coords = vec![Rational::zero(); self.module.dim()];
                for (ci, &c) in cols.iter().enumerate() {
                    coords[c] = x[ci].clone();
                }
                self.vector(coords)
            })
            .collect())
    }

    /// `X^{s_k} b` by repeated application of the tensor module's `X` matrix.
    pub fn x_power_b_brute(&self, k: usize) -> Result<ModuleVector> {
        let b = self.b_closed_form(k)?;
        let s = s_k(self.m, self.n, k);
        let coords = apply_power(self.module.matrix(Generator::X), b.coords(), s)?;
        Ok(self.vector(coords))
    }

    /// `s_k! Σ_{l=0}^{k} (-1)^{k+l} (m-l)! (n-k+l)! / (l! (k-l)!) e_{m-2l} ⊗ ẽ_{n-2(k-l)}`.
    pub fn x_power_b_closed(&self, k: usize) -> Result<ModuleVector> {
        let (m, n) = (self.m, self.n);
        check_k(m, n, k)?;
        let s_fact = fact(s_k(m, n, k));
        let mut coords = vec![Rational::zero(); self.module.dim()];
        for l in 0..=k {
            let num = &s_fact * fact(m - l) * fact(n - k + l) * parity_sign((k + l) as i64);
            let den = fact(l) * fact(k - l);
            let idx = pair_index(m, n, m as i64 - 2 * l as i64, n as i64 - 2 * (k - l) as i64);
            coords[idx] = Rational::new(num, den);
        }
        Ok(self.vector(coords))
    }

    /// `Q ⊗ R` for the canonical forms with constants `q`, `r`.
    pub fn tensor_form(&self, q: &Rational, r: &Rational) -> Result<BilinearForm> {
        nonzero(q, r)?;
        tensor_form(&canonical_form(self.m, q)?, &canonical_form(self.n, r)?, &self.module)
    }

    /// `ω_k(b, b)` by the brute-force route.
    pub fn omega_value(&self, k: usize, q: &Rational, r: &Rational) -> Result<Rational> {
        let form = self.tensor_form(q, r)?;
        self.omega_value_with(&form, k)
    }

    fn omega_value_with(&self, form: &BilinearForm, k: usize) -> Result<Rational> {
        let b = self.b_closed_form(k)?;
        let xb = self.x_power_b_brute(k)?;
        evaluate(form, &b, &xb)
    }

    /// Matrix of `ω_k` on the standard spanning vectors of the weight `-s_k` space.
    pub fn omega_gram(&self, k: usize, q: &Rational, r: &Rational) -> Result<ExactMatrix> {
        check_k(self.m, self.n, k)?;
        let form = self.tensor_form(q, r)?;
        let s = s_k(self.m, self.n, k);
        let idx = weight_space_indices(&self.module, -(s as i64));
        let x = self.module.matrix(Generator::X);
        let mut gram = ExactMatrix::zeros(idx.len(), idx.len());
        for (a, &i) in idx.iter().enumerate() {
            let v = ModuleVector::basis(Arc::clone(&self.module), i)?;
            for (c, &j) in idx.iter().enumerate() {
                let w = ModuleVector::basis(Arc::clone(&self.module), j)?;
                let xw = self.vector(apply_power(x, w.coords(), s)?);
                gram.set(a, c, evaluate(&form, &v, &xw)?);
            }
        }
        Ok(gram)
    }

    /// Coefficient of `e_{m-2l} ⊗ ẽ_{n-2(k-l)}` in the brute-force `X^{s_k} b`, divided by
    /// `s_k! (m-l)! (n-k+l)! / (l! (k-l)!)`. Expanding `X^{s_k} b` by the Leibniz rule shows
    /// the quotient is the Karlsson-Minton sum, so this derives that sum from the module
    /// matrices alone.
    pub fn km_from_modules(&self, k: usize, l: usize) -> Result<Rational> {
        let (m, n) = (self.m, self.n);
        check_k(m, n, k)?;
        if l > k {
            return Err(Error::Domain(format!("l = {l} exceeds k = {k}")));
        }
        let xb = self.x_power_b_brute(k)?;
        let idx = pair_index(m, n, m as i64 - 2 * l as i64, n as i64 - 2 * (k - l) as i64);
        let scale = Rational::new(
            fact(s_k(m, n, k)) * fact(m - l) * fact(n - k + l),
            fact(l) * fact(k - l),
        );
        Ok(&xb.coords()[idx] / scale)
    }
}

pub fn b_closed_form(m: usize, n: usize, k: usize) -> Result<ModuleVector> {
    TensorPair::new(m, n).b_closed_form(k)
}

pub fn y_kernel_singular(m: usize, n: usize, k: usize) -> Result<ModuleVector> {
    TensorPair::new(m, n).y_kernel_singular(k)
}

pub fn x_power_b_brute(m: usize, n: usize, k: usize) -> Result<ModuleVector> {
    TensorPair::new(m, n).x_power_b_brute(k)
}

pub fn x_power_b_closed(m: usize, n: usize, k: usize) -> Result<ModuleVector> {
    TensorPair::new(m, n).x_power_b_closed(k)
}

pub fn omega_value(m: usize, n: usize, k: usize, q: &Rational, r: &Rational) -> Result<Rational> {
    check_k(m, n, k)?;
    TensorPair::new(m, n).omega_value(k, q, r)
}

/// `s_k! (-1)^k q r Σ_{l=0}^{k} (m-l)! (n-k+l)! / (l! (k-l)!)`.
pub fn omega_closed(m: usize, n: usize, k: usize, q: &Rational, r: &Rational) -> Result<Rational> {
    check_k(m, n, k)?;
    nonzero(q, r)?;
    let sum: Rational = (0..=k)
        .map(|l| Rational::new(fact(m - l) * fact(n - k + l), fact(l) * fact(k - l)))
        .sum();
    let prefactor = Rational::from_integer(fact(s_k(m, n, k)) * BigInt::from(parity_sign(k as i64)));
    Ok(prefactor * q * r * sum)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OmegaRow {
    pub k: usize,
    pub s: usize,
    #[serde(with = "crate::arith::serde_rational")]
    pub value: Rational,
    pub sign: i8,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OmegaReport {
    pub m: usize,
    pub n: usize,
    #[serde(with = "crate::arith::serde_rational")]
    pub q: Rational,
    #[serde(with = "crate::arith::serde_rational")]
    pub r: Rational,
    pub rows: Vec<OmegaRow>,
}

impl OmegaReport {
    /// Whether `sign(ω_k) = (-1)^k sign(qr)` for every row.
    pub fn alternating(&self) -> bool {
        let base = sign(&(&self.q * &self.r));
        base != 0
            && self
                .rows
                .iter()
                .all(|row| row.sign == base * parity_sign(row.k as i64) as i8)
    }
}

/// `ω_k(b, b)` for every `k`, with both routes required to agree.
pub fn omega_table(m: usize, n: usize, q: &Rational, r: &Rational) -> Result<OmegaReport> {
    omega_table_for(&TensorPair::new(m, n), q, r)
}

pub fn omega_table_for(pair: &TensorPair, q: &Rational, r: &Rational) -> Result<OmegaReport> {
    let (m, n) = (pair.m, pair.n);
    let form = pair.tensor_form(q, r)?;
    let mut rows = Vec::with_capacity(m.min(n) + 1);
    for k in 0..=m.min(n) {
        let brute = pair.omega_value_with(&form, k)?;
        let closed = omega_closed(m, n, k, q, r)?;
        if brute != closed {
            return Err(Error::Inconsistency(format!(
                "ω_{k} on V_{m}⊗V_{n}: matrix route {brute} differs from closed form {closed}"
            )));
        }
        rows.push(OmegaRow {
            k,
            s: s_k(m, n, k),
            sign: sign(&brute),
            value: brute,
        });
    }
    Ok(OmegaReport {
        m,
        n,
        q: q.clone(),
        r: r.clone(),
        rows,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TheoremReport {
    pub signs: Vec<i8>,
    /// Values of `k` where `sign(ω_k) != (-1)^k sign(qr)`.
    pub failing_k: Vec<usize>,
}

impl TheoremReport {
    pub fn passed(&self) -> bool {
        self.failing_k.is_empty()
    }
}

pub fn theorem_check(m: usize, n: usize, q: &Rational, r: &Rational) -> Result<TheoremReport> {
    Ok(theorem_report(&omega_table(m, n, q, r)?))
}

pub fn theorem_report(table: &OmegaReport) -> TheoremReport {
    let base = sign(&(&table.q * &table.r));
    let failing_k = table
        .rows
        .iter()
        .filter(|row| row.sign == 0 || row.sign != base * parity_sign(row.k as i64) as i8)
        .map(|row| row.k)
        .collect();
    TheoremReport {
        signs: table.rows.iter().map(|row| row.sign).collect(),
        failing_k,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::ratio;
    use crate::hypergeom::{km_sum, KMParams};
    use crate::modules::act;

    fn named(v: &ModuleVector) -> String {
        v.to_string()
    }

    #[test]
    fn b_examples() {
        assert_eq!(named(&b_closed_form(3, 2, 0).unwrap()), "e_{-3}⊗ẽ_{-2}");
        assert_eq!(named(&b_closed_form(1, 1, 1).unwrap()), "e_{-1}⊗ẽ_{1} - e_{1}⊗ẽ_{-1}");
        assert_eq!(
            named(&b_closed_form(2, 3, 2).unwrap()),
            "e_{-2}⊗ẽ_{1} - e_{0}⊗ẽ_{-1} + e_{2}⊗ẽ_{-3}"
        );
        assert!(matches!(b_closed_form(2, 2, 3), Err(Error::Domain(_))));
    }

    #[test]
    fn y_kernel_examples() {
        assert_eq!(named(&y_kernel_singular(4, 2, 0).unwrap()), "e_{-4}⊗ẽ_{-2}");
        assert_eq!(named(&y_kernel_singular(1, 1, 1).unwrap()), "e_{-1}⊗ẽ_{1} - e_{1}⊗ẽ_{-1}");
        assert_eq!(named(&y_kernel_singular(2, 2, 1).unwrap()), "e_{-2}⊗ẽ_{0} - e_{0}⊗ẽ_{-2}");
        assert!(y_kernel_singular(1, 3, 2).is_err());
    }

    #[test]
    fn y_kernel_detects_corruption() {
        // Zeroing Y on the weight 0 space of V_1⊗V_1 makes the whole space a kernel.
        let pair = TensorPair::new(1, 1);
        let bad = pair
            .module()
            .with_perturbed_entry(Generator::Y, 0, 1, &rat(-1))
            .with_perturbed_entry(Generator::Y, 0, 2, &rat(-1));
        let pair = TensorPair::with_module(1, 1, Arc::new(bad)).unwrap();
        assert!(matches!(pair.y_kernel_singular(1), Err(Error::Inconsistency(_))));
    }

    #[test]
    fn singular_vectors_are_killed_by_y() {
        for (m, n) in [(0, 0), (3, 5), (6, 6)] {
            let pair = TensorPair::new(m, n);
            for k in 0..=m.min(n) {
                let b = pair.b_closed_form(k).unwrap();
                assert!(act(pair.module(), Generator::Y, &b).unwrap().is_zero());
                assert_eq!(b.weight(), Some(-(s_k(m, n, k) as i64)));
            }
        }
    }

    #[test]
    fn x_power_brute_examples() {
        let pair = TensorPair::new(1, 1);
        assert_eq!(pair.x_power_b_brute(1).unwrap(), pair.b_closed_form(1).unwrap());
        assert_eq!(named(&x_power_b_brute(1, 1, 0).unwrap()), "2·e_{1}⊗ẽ_{1}");
        // By hand: X(e_{-2}⊗ẽ_1 - e_0⊗ẽ_{-1}) = 2e_0⊗ẽ_1 - (2e_2⊗ẽ_{-1} + e_0⊗ẽ_1).
        assert_eq!(named(&x_power_b_brute(2, 1, 1).unwrap()), "e_{0}⊗ẽ_{1} - 2·e_{2}⊗ẽ_{-1}");
    }

    #[test]
    fn x_power_closed_examples() {
        assert_eq!(named(&x_power_b_closed(1, 1, 0).unwrap()), "2·e_{1}⊗ẽ_{1}");
        assert_eq!(named(&x_power_b_closed(1, 1, 1).unwrap()), "e_{-1}⊗ẽ_{1} - e_{1}⊗ẽ_{-1}");
        // k = 0: single term (m+n)! m! n! e_m⊗ẽ_n.
        assert_eq!(named(&x_power_b_closed(2, 3, 0).unwrap()), "1440·e_{2}⊗ẽ_{3}");
        assert_eq!(x_power_b_closed(2, 3, 0).unwrap(), x_power_b_brute(2, 3, 0).unwrap());
        assert!(x_power_b_closed(1, 4, 2).is_err());
    }

    #[test]
    fn x_power_lands_in_weight_s() {
        for (m, n) in [(2, 5), (4, 4)] {
            for k in 0..=m.min(n) {
                let xb = x_power_b_brute(m, n, k).unwrap();
                assert_eq!(xb.weight(), Some(s_k(m, n, k) as i64));
            }
        }
    }

    #[test]
    fn omega_value_examples() {
        let one = rat(1);
        assert_eq!(omega_value(1, 1, 0, &one, &one).unwrap(), rat(2));
        assert_eq!(omega_value(1, 1, 1, &one, &one).unwrap(), rat(-2));
        assert_eq!(omega_value(2, 1, 1, &one, &one).unwrap(), rat(-3));
        assert!(matches!(omega_value(1, 1, 0, &rat(0), &one), Err(Error::Degenerate(_))));
    }

    #[test]
    fn omega_closed_examples() {
        let one = rat(1);
        assert_eq!(omega_closed(1, 1, 1, &one, &one).unwrap(), rat(-2));
        assert_eq!(omega_closed(1, 1, 0, &one, &rat(-1)).unwrap(), rat(-2));
        for m in 0..=6 {
            let expected = rat(parity_sign(m as i64) * (m as i64 + 1));
            assert_eq!(omega_closed(m, m, m, &one, &one).unwrap(), expected);
            assert_eq!(omega_value(m, m, m, &one, &one).unwrap(), expected);
        }
        assert!(omega_closed(2, 2, 0, &one, &rat(0)).is_err());
    }

    #[test]
    fn omega_table_examples() {
        let one = rat(1);
        let t = omega_table(1, 1, &one, &one).unwrap();
        let rows: Vec<_> = t.rows.iter().map(|r| (r.k, r.s, r.value.clone(), r.sign)).collect();
        assert_eq!(rows, vec![(0, 2, rat(2), 1), (1, 0, rat(-2), -1)]);
        let t = omega_table(2, 1, &one, &one).unwrap();
        let rows: Vec<_> = t.rows.iter().map(|r| (r.k, r.s, r.value.clone(), r.sign)).collect();
        assert_eq!(rows, vec![(0, 3, rat(12), 1), (1, 1, rat(-3), -1)]);
        let t = omega_table(0, 4, &ratio(-1, 2), &rat(3)).unwrap();
        assert_eq!(t.rows.len(), 1);
        assert_eq!(t.rows[0].sign, -1);
        assert!(t.alternating());
    }

    #[test]
    fn theorem_examples() {
        let r = theorem_check(5, 3, &rat(1), &rat(1)).unwrap();
        assert!(r.passed());
        assert_eq!(r.signs, vec![1, -1, 1, -1]);
        let r = theorem_check(5, 3, &rat(1), &rat(-1)).unwrap();
        assert!(r.passed());
        assert_eq!(r.signs, vec![-1, 1, -1, 1]);
        assert!(theorem_check(0, 0, &ratio(2, 3), &rat(-7)).unwrap().passed());
    }

    #[test]
    fn theorem_report_flags_wrong_signs() {
        let mut t = omega_table(2, 2, &rat(1), &rat(1)).unwrap();
        t.rows[1].sign = 1;
        let report = theorem_report(&t);
        assert_eq!(report.failing_k, vec![1]);
        assert!(!t.alternating());
    }

    #[test]
    fn corrupted_x_makes_table_fail() {
        let pair = TensorPair::new(2, 2);
        let bad = pair.module().with_perturbed_entry(Generator::X, 3, 0, &rat(1));
        let pair = TensorPair::with_module(2, 2, Arc::new(bad)).unwrap();
        assert!(matches!(omega_table_for(&pair, &rat(1), &rat(1)), Err(Error::Inconsistency(_))));
    }

    #[test]
    fn omega_is_symmetric_on_weight_space() {
        for (m, n) in [(1, 1), (3, 2), (4, 4)] {
            let pair = TensorPair::new(m, n);
            for k in 0..=m.min(n) {
                let g = pair.omega_gram(k, &ratio(1, 2), &rat(-3)).unwrap();
                assert_eq!(g.rows(), k + 1);
                assert!(g.is_symmetric(), "m={m} n={n} k={k}");
            }
        }
    }

    #[test]
    fn karlsson_minton_from_modules() {
        for (m, n) in [(2, 3), (4, 4), (5, 2)] {
            let pair = TensorPair::new(m, n);
            for k in 0..=m.min(n) {
                for l in 0..=k {
                    let p = KMParams::new(k as i64, l as i64, m as i64, n as i64).unwrap();
                    assert_eq!(pair.km_from_modules(k, l).unwrap(), km_sum(&p));
                }
            }
        }
    }
}
