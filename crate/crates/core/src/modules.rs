//! Finite-dimensional sl2 weight modules.
//!
//! Basis vectors of an irreducible `V_m` are ordered by increasing weight,
//! `e_{-m}, e_{-m+2}, ..., e_m`. Tensor products order `a_i ⊗ b_j` with the left
//! index outer, so the pair `(i, j)` sits at position `i * dim(B) + j`.
//!
//! The generators act by
//!
//! ```text
//! H e_{m-2i} = (m - 2i) e_{m-2i}
//! Y e_{m-2i} = e_{m-2i-2}                (e_{-m-2} = 0)
//! X e_{m-2i} = i (m - i + 1) e_{m-2i+2}  (e_{m+2} = 0)
//! ```

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::arith::{rat, Rational};
use crate::error::{Error, Result};
use crate::linalg::{mat_vec, ExactMatrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Generator {
    X,
    Y,
    H,
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Generator::X => "X",
            Generator::Y => "Y",
            Generator::H => "H",
        };
        f.write_str(s)
    }
}

/// A module given by a weight-labelled basis and exact matrices for `X`, `Y`, `H`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightModule {
    weights: Vec<i64>,
    act_x: ExactMatrix,
    act_y: ExactMatrix,
    act_h: ExactMatrix,
    label: String,
    basis_names: Vec<String>,
}

impl WeightModule {
    /// Assembles a module from raw parts. Only shapes are validated; use
    /// [`check_relations`] to verify that the matrices define a representation.
    pub fn from_parts(
        label: impl Into<String>,
        weights: Vec<i64>,
        act_x: ExactMatrix,
        act_y: ExactMatrix,
        act_h: ExactMatrix,
        basis_names: Vec<String>,
    ) -> Result<Self> {
        let dim = weights.len();
        for m in [&act_x, &act_y, &act_h] {
            if m.rows() != dim || m.cols() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    actual: m.rows().max(m.cols()),
                });
            }
        }
        if basis_names.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                actual: basis_names.len(),
            });
        }
        Ok(WeightModule {
            weights,
            act_x,
            act_y,
            act_h,
            label: label.into(),
            basis_names,
        })
    }

    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis_names
    }

    pub fn matrix(&self, g: Generator) -> &ExactMatrix {
        match g {
            Generator::X => &self.act_x,
            Generator::Y => &self.act_y,
            Generator::H => &self.act_h,
        }
    }

    /// Copy of the module with `delta` added to one entry of a generator matrix.
    pub fn with_perturbed_entry(&self, g: Generator, row: usize, col: usize, delta: &Rational) -> Self {
        let mut out = self.clone();
        let m = match g {
            Generator::X => &mut out.act_x,
            Generator::Y => &mut out.act_y,
            Generator::H => &mut out.act_h,
        };
        let v = m.get(row, col) + delta;
        m.set(row, col, v);
        out.label = format!("{} (perturbed)", self.label);
        out
    }

    /// Structural sameness, with a pointer fast path.
    pub(crate) fn same_as(self: &Arc<Self>, other: &Arc<Self>) -> bool {
        Arc::ptr_eq(self, other) || **self == **other
    }
}

/// Exact coordinate vector in the basis of a module.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleVector {
    module: Arc<WeightModule>,
    coords: Vec<Rational>,
}

impl ModuleVector {
    pub fn new(module: Arc<WeightModule>, coords: Vec<Rational>) -> Result<Self> {
        if coords.len() != module.dim() {
            return Err(Error::DimensionMismatch {
                expected: module.dim(),
                actual: coords.len(),
            });
        }
        Ok(ModuleVector { module, coords })
    }

    pub fn zero(module: Arc<WeightModule>) -> Self {
        let coords = vec![Rational::zero(); module.dim()];
        ModuleVector { module, coords }
    }

    /// The `index`-th standard basis vector.
    pub fn basis(module: Arc<WeightModule>, index: usize) -> Result<Self> {
        if index >= module.dim() {
            return Err(Error::Domain(format!(
                "basis index {index} out of range for {}",
                module.label()
            )));
        }
        let mut v = Self::zero(module);
        v.coords[index] = Rational::one();
        Ok(v)
    }

    pub fn module(&self) -> &Arc<WeightModule> {
        &self.module
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<Rational> {
        self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    /// Nonzero coordinates as `(basis index, coefficient)` pairs.
    pub fn terms(&self) -> impl Iterator<Item = (usize, &Rational)> {
        self.coords.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }

    /// The common weight of all nonzero terms, if the vector is a nonzero weight vector.
    pub fn weight(&self) -> Option<i64> {
        let mut ws = self.terms().map(|(i, _)| self.module.weights[i]);
        let first = ws.next()?;
        ws.all(|w| w == first).then_some(first)
    }
}

impl fmt::Display for ModuleVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.terms() {
            let name = &self.module.basis_names[i];
            let neg = c < &Rational::zero();
            let mag = if neg { -c } else { c.clone() };
            let sep = match (first, neg) {
                (true, false) => "",
                (true, true) => "-",
                (false, false) => " + ",
                (false, true) => " - ",
            };
            if mag.is_one() {
                write!(f, "{sep}{name}")?;
            } else {
                write!(f, "{sep}{mag}·{name}")?;
            }
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

fn weight_name(w: i64) -> String {
    format!("e_{{{w}}}")
}

/// The `(m+1)`-dimensional irreducible module `V_m`.
pub fn irreducible(m: usize) -> Arc<WeightModule> {
    let dim = m + 1;
    let mi = m as i64;
    let weights: Vec<i64> = (0..dim as i64).map(|j| -mi + 2 * j).collect();
    let mut x = ExactMatrix::zeros(dim, dim);
    let mut y = ExactMatrix::zeros(dim, dim);
    let mut h = ExactMatrix::zeros(dim, dim);
    for (j, &w) in weights.iter().enumerate() {
        h.set(j, j, rat(w));
        // Position j holds e_{m-2i} with i = m - j.
        let i = (m - j) as i64;
        if j + 1 < dim {
            x.set(j + 1, j, rat(i * (mi - i + 1)));
        }
        if j > 0 {
            y.set(j - 1, j, Rational::one());
        }
    }
    let names = weights.iter().map(|&w| weight_name(w)).collect();
    Arc::new(WeightModule {
        weights,
        act_x: x,
        act_y: y,
        act_h: h,
        label: format!("V_{m}"),
        basis_names: names,
    })
}

fn tilde(name: &str) -> String {
    match name.strip_prefix("e_") {
        Some(rest) => format!("ẽ_{rest}"),
        None => name.to_string(),
    }
}

/// `A ⊗ B` with the Leibniz action `g(a ⊗ b) = ga ⊗ b + a ⊗ gb`.
///
/// Right-factor basis names `e_…` are rendered as `ẽ_…`.
pub fn tensor_product(a: &WeightModule, b: &WeightModule) -> Arc<WeightModule> {
    let (da, db) = (a.dim(), b.dim());
    let dim = da * db;
    let idx = |i: usize, j: usize| i * db + j;
    let leibniz = |ga: &ExactMatrix, gb: &ExactMatrix| {
        let mut out = ExactMatrix::zeros(dim, dim);
        for i in 0..da {
            for j in 0..db {
                let col = idx(i, j);
                for r in 0..da {
                    let c = ga.get(r, i);
                    if !c.is_zero() {
                        let v = out.get(idx(r, j), col) + c;
                        out.set(idx(r, j), col, v);
                    }
                }
                for s in 0..db {
                    let c = gb.get(s, j);
                    if !c.is_zero() {
                        let v = out.get(idx(i, s), col) + c;
                        out.set(idx(i, s), col, v);
                    }
                }
            }
        }
        out
    };
    let mut weights = Vec::with_capacity(dim);
    let mut names = Vec::with_capacity(dim);
    for i in 0..da {
        for j in 0..db {
            weights.push(a.weights[i] + b.weights[j]);
            names.push(format!("{}⊗{}", a.basis_names[i], tilde(&b.basis_names[j])));
        }
    }
    Arc::new(WeightModule {
        weights,
        act_x: leibniz(&a.act_x, &b.act_x),
        act_y: leibniz(&a.act_y, &b.act_y),
        act_h: leibniz(&a.act_h, &b.act_h),
        label: format!("{}⊗{}", a.label, b.label),
        basis_names: names,
    })
}

/// Apply a generator to a vector of `module`.
pub fn act(module: &Arc<WeightModule>, g: Generator, v: &ModuleVector) -> Result<ModuleVector> {
    if !module.same_as(&v.module) {
        return Err(Error::ModuleMismatch(module.label().to_string()));
    }
    let coords = mat_vec(module.matrix(g), &v.coords)?;
    Ok(ModuleVector {
        module: Arc::clone(module),
        coords,
    })
}

/// Identities checked by [`check_relations`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Relation {
    /// `[X, Y] = H`
    XY,
    /// `[H, X] = 2X`
    HX,
    /// `[H, Y] = -2Y`
    HY,
    /// `H` is diagonal with the declared weights.
    HWeights,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Relation::XY => "[X,Y] = H",
            Relation::HX => "[H,X] = 2X",
            Relation::HY => "[H,Y] = -2Y",
            Relation::HWeights => "H = diag(weights)",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationReport {
    pub label: String,
    pub failing: Vec<Relation>,
}

impl RelationReport {
    pub fn passed(&self) -> bool {
        self.failing.is_empty()
    }
}

pub fn check_relations(module: &WeightModule) -> RelationReport {
    let (x, y, h) = (&module.act_x, &module.act_y, &module.act_h);
    let mut failing = Vec::new();
    let holds = |lhs: Result<ExactMatrix>, rhs: ExactMatrix| lhs.is_ok_and(|l| l == rhs);
    if !holds(x.commutator(y), h.clone()) {
        failing.push(Relation::XY);
    }
    if !holds(h.commutator(x), x.scale(&rat(2))) {
        failing.push(Relation::HX);
    }
    if !holds(h.commutator(y), y.scale(&rat(-2))) {
        failing.push(Relation::HY);
    }
    let diag_ok = h.is_diagonal()
        && module
            .weights
            .iter()
            .enumerate()
            .all(|(j, &w)| *h.get(j, j) == rat(w));
    if !diag_ok {
        failing.push(Relation::HWeights);
    }
    RelationReport {
        label: module.label.clone(),
        failing,
    }
}

/// Basis indices whose weight is `w`, in basis order.
pub fn weight_space_indices(module: &WeightModule, w: i64) -> Vec<usize> {
    (0..module.dim()).filter(|&i| module.weights[i] == w).collect()
}

/// Standard basis vectors of weight `w`; empty when `w` is not a weight.
pub fn weight_space_basis(module: &Arc<WeightModule>, w: i64) -> Vec<ModuleVector> {
    weight_space_indices(module, w)
        .into_iter()
        .map(|i| ModuleVector::basis(Arc::clone(module), i).expect("index in range"))
        .collect()
}

/// Multiplicities of irreducible summands, by highest weight.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DecompositionReport {
    /// `(highest weight, multiplicity)`, ascending by highest weight.
    pub summands: Vec<(i64, usize)>,
}

impl DecompositionReport {
    /// `Σ multiplicity · (label + 1)`.
    pub fn total_dim(&self) -> usize {
        self.summands.iter().map(|&(l, mult)| mult * (l as usize + 1)).sum()
    }
}

/// Decomposes a module into irreducibles by weight-multiplicity differencing:
/// `mult(V_j) = #{weight = j} - #{weight = j + 2}` for `j >= 0`.
pub fn decompose(module: &WeightModule) -> Result<DecompositionReport> {
    debug_assert!(
        check_relations(module).passed(),
        "decompose called on a module violating the sl2 relations"
    );
    decompose_weights(&module.weights).map_err(|e| match e {
        Error::Inconsistency(msg) => Error::Inconsistency(format!("{}: {msg}", module.label)),
        other => other,
    })
}

/// The differencing step of [`decompose`] on a bare weight multiset.
pub fn decompose_weights(weights: &[i64]) -> Result<DecompositionReport> {
    let mut counts: BTreeMap<i64, i64> = BTreeMap::new();
    for &w in weights {
        *counts.entry(w).or_default() += 1;
    }
    let count = |w: i64| counts.get(&w).copied().unwrap_or(0);
    let top = counts.keys().next_back().copied().unwrap_or(-1);
    let mut summands = Vec::new();
    for j in 0..=top {
        let mult = count(j) - count(j + 2);
        if mult < 0 {
            return Err(Error::Inconsistency(format!("negative multiplicity {mult} for V_{j}")));
        }
        if mult > 0 {
            summands.push((j, mult as usize));
        }
    }
    let report = DecompositionReport { summands };
    if report.total_dim() != weights.len() {
        return Err(Error::Inconsistency(format!(
            "weights do not form a union of sl2 strings ({} vs dim {})",
            report.total_dim(),
            weights.len()
        )));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(module: &Arc<WeightModule>, w: i64) -> ModuleVector {
        let i = module.weights().iter().position(|&x| x == w).unwrap();
        ModuleVector::basis(Arc::clone(module), i).unwrap()
    }

    fn scaled(v: &ModuleVector, c: i64) -> ModuleVector {
        ModuleVector::new(
            Arc::clone(v.module()),
            v.coords().iter().map(|x| x * rat(c)).collect(),
        )
        .unwrap()
    }

    #[test]
    fn trivial_module() {
        let v0 = irreducible(0);
        assert_eq!(v0.dim(), 1);
        for g in [Generator::X, Generator::Y, Generator::H] {
            assert!(v0.matrix(g).is_zero());
        }
    }

    #[test]
    fn v1_action() {
        let v1 = irreducible(1);
        assert_eq!(v1.weights(), &[-1, 1]);
        assert_eq!(act(&v1, Generator::X, &e(&v1, -1)).unwrap(), e(&v1, 1));
        assert_eq!(act(&v1, Generator::Y, &e(&v1, 1)).unwrap(), e(&v1, -1));
        assert!(act(&v1, Generator::Y, &e(&v1, -1)).unwrap().is_zero());
    }

    #[test]
    fn v2_action() {
        let v2 = irreducible(2);
        assert_eq!(act(&v2, Generator::X, &e(&v2, -2)).unwrap(), scaled(&e(&v2, 0), 2));
        assert_eq!(act(&v2, Generator::X, &e(&v2, 0)).unwrap(), scaled(&e(&v2, 2), 2));
        assert!(act(&v2, Generator::H, &e(&v2, 0)).unwrap().is_zero());
        assert!(act(&v2, Generator::X, &e(&v2, 2)).unwrap().is_zero());
    }

    #[test]
    fn act_rejects_foreign_vector() {
        let v1 = irreducible(1);
        let v2 = irreducible(2);
        let err = act(&v1, Generator::X, &e(&v2, 0)).unwrap_err();
        assert!(matches!(err, Error::ModuleMismatch(_)));
        // Structurally equal modules are interchangeable.
        assert!(act(&irreducible(1), Generator::X, &e(&v1, -1)).is_ok());
    }

    #[test]
    fn relations_hold() {
        assert!(check_relations(&irreducible(5)).passed());
        assert!(check_relations(&tensor_product(&irreducible(2), &irreducible(3))).passed());
    }

    #[test]
    fn perturbed_module_fails_relations() {
        let bad = irreducible(3).with_perturbed_entry(Generator::X, 1, 0, &rat(1));
        let report = check_relations(&bad);
        assert!(!report.passed());
        assert!(report.failing.contains(&Relation::XY));
        let bad_h = irreducible(2).with_perturbed_entry(Generator::H, 0, 0, &rat(1));
        assert!(check_relations(&bad_h).failing.contains(&Relation::HWeights));
    }

    #[test]
    fn tensor_examples() {
        let t = tensor_product(&irreducible(1), &irreducible(1));
        assert_eq!(t.dim(), 4);
        let mut ws = t.weights().to_vec();
        ws.sort();
        assert_eq!(ws, vec![-2, 0, 0, 2]);
        assert_eq!(t.label(), "V_1⊗V_1");

        let t = tensor_product(&irreducible(2), &irreducible(3));
        assert_eq!(t.dim(), 12);
        let lowest = ModuleVector::basis(Arc::clone(&t), 0).unwrap();
        assert_eq!(t.basis_names()[0], "e_{-2}⊗ẽ_{-3}");
        assert!(act(&t, Generator::Y, &lowest).unwrap().is_zero());
    }

    #[test]
    fn tensor_with_trivial_is_identity() {
        for n in 0..5 {
            let t = tensor_product(&irreducible(0), &irreducible(n));
            let v = irreducible(n);
            assert_eq!(t.weights(), v.weights());
            for g in [Generator::X, Generator::Y, Generator::H] {
                assert_eq!(t.matrix(g), v.matrix(g));
            }
        }
    }

    #[test]
    fn weight_spaces() {
        let t = tensor_product(&irreducible(1), &irreducible(1));
        let names: Vec<_> = weight_space_basis(&t, 0)
            .iter()
            .map(ToString::to_string)
            .collect();
        assert_eq!(names, vec!["e_{-1}⊗ẽ_{1}", "e_{1}⊗ẽ_{-1}"]);
        let t = tensor_product(&irreducible(3), &irreducible(4));
        assert_eq!(weight_space_basis(&t, -7).len(), 1);
        assert_eq!(weight_space_indices(&t, -7), vec![0]);
        assert!(weight_space_basis(&irreducible(1), 0).is_empty());
    }

    #[test]
    fn decomposition_examples() {
        let t = tensor_product(&irreducible(1), &irreducible(1));
        assert_eq!(decompose(&t).unwrap().summands, vec![(0, 1), (2, 1)]);
        let t = tensor_product(&irreducible(2), &irreducible(3));
        assert_eq!(decompose(&t).unwrap().summands, vec![(1, 1), (3, 1), (5, 1)]);
        assert_eq!(decompose(&irreducible(4)).unwrap().summands, vec![(4, 1)]);
    }

    #[test]
    fn decomposition_rejects_bad_weights() {
        assert!(matches!(decompose_weights(&[2]), Err(Error::Inconsistency(_))));
        assert!(matches!(decompose_weights(&[-2, 0, 2, 2]), Err(Error::Inconsistency(_))));
        assert_eq!(decompose_weights(&[]).unwrap().summands, vec![]);
        assert_eq!(decompose_weights(&[0, 0, 1, -1]).unwrap().summands, vec![(0, 2), (1, 1)]);
    }

    #[test]
    fn display_vectors() {
        let v2 = irreducible(2);
        let u = ModuleVector::new(Arc::clone(&v2), vec![rat(1), rat(-2), rat(0)]).unwrap();
        assert_eq!(u.to_string(), "e_{-2} - 2·e_{0}");
        assert_eq!(ModuleVector::zero(v2).to_string(), "0");
    }
}
