//! Symmetric bilinear forms compatible with the anti-involution
//! `X* = X`, `Y* = Y`, `H* = -H`.
//!
//! A form `Q` with Gram matrix `G` is a `*`-form for a module when
//! `Aᵀ G = G A*` for each generator matrix `A`, i.e. `Q(xu, v) = Q(u, x*v)`.

use std::sync::Arc;

use num_traits::{One, Zero};

use crate::arith::Rational;
use crate::error::{Error, Result};
use crate::linalg::{rank, ExactMatrix};
use crate::modules::{irreducible, Generator, ModuleVector, WeightModule};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BilinearForm {
    module: Arc<WeightModule>,
    gram: ExactMatrix,
}

impl BilinearForm {
    /// A form with the given symmetric Gram matrix in the module's basis.
    pub fn new(module: Arc<WeightModule>, gram: ExactMatrix) -> Result<Self> {
        if gram.rows() != module.dim() || gram.cols() != module.dim() {
            return Err(Error::DimensionMismatch {
                expected: module.dim(),
                actual: gram.rows().max(gram.cols()),
            });
        }
        if !gram.is_symmetric() {
            return Err(Error::Domain(format!(
                "Gram matrix on {} is not symmetric",
                module.label()
            )));
        }
        Ok(BilinearForm { module, gram })
    }

    pub fn module(&self) -> &Arc<WeightModule> {
        &self.module
    }

    pub fn gram(&self) -> &ExactMatrix {
        &self.gram
    }

    pub fn is_nondegenerate(&self) -> bool {
        rank(&self.gram) == self.module.dim()
    }
}

/// The form on `V_m` with `Q(e_i, e_{-i}) = q` and `Q(e_i, e_j) = 0` for `i != -j`.
pub fn canonical_form(m: usize, q: &Rational) -> Result<BilinearForm> {
    if q.is_zero() {
        return Err(Error::Degenerate(format!("canonical form on V_{m} with q = 0")));
    }
    let dim = m + 1;
    let mut gram = ExactMatrix::zeros(dim, dim);
    for i in 0..dim {
        gram.set(i, dim - 1 - i, q.clone());
    }
    Ok(BilinearForm {
        module: irreducible(m),
        gram,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StarReport {
    /// Generators whose compatibility identity fails.
    pub failing: Vec<Generator>,
    pub nondegenerate: bool,
}

impl StarReport {
    pub fn passed(&self) -> bool {
        self.failing.is_empty() && self.nondegenerate
    }
}

pub fn is_star_form(module: &Arc<WeightModule>, form: &BilinearForm) -> Result<StarReport> {
    if !module.same_as(&form.module) {
        return Err(Error::ModuleMismatch(module.label().to_string()));
    }
    let g = &form.gram;
    let mut failing = Vec::new();
    for gen in [Generator::X, Generator::Y, Generator::H] {
        let a = module.matrix(gen);
        let lhs = a.transpose().mul(g)?;
        let mut rhs = g.mul(a)?;
        if gen == Generator::H {
            rhs = rhs.scale(&-Rational::one());
        }
        if lhs != rhs {
            failing.push(gen);
        }
    }
    Ok(StarReport {
        failing,
        nondegenerate: form.is_nondegenerate(),
    })
}

/// Shape of a form on an irreducible module.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormStructure {
    /// Gram matrix is anti-diagonal with one nonzero constant.
    pub anti_diagonal_constant: bool,
    pub constant: Option<Rational>,
}

pub fn structure_of(form: &BilinearForm) -> FormStructure {
    let g = &form.gram;
    let dim = g.rows();
    let not_constant = FormStructure {
        anti_diagonal_constant: false,
        constant: None,
    };
    if dim == 0 {
        return not_constant;
    }
    let c = g.get(0, dim - 1).clone();
    if c.is_zero() {
        return not_constant;
    }
    for i in 0..dim {
        for j in 0..dim {
            let expected_zero = i + j != dim - 1;
            let entry = g.get(i, j);
            if (expected_zero && !entry.is_zero()) || (!expected_zero && *entry != c) {
                return not_constant;
            }
        }
    }
    FormStructure {
        anti_diagonal_constant: true,
        constant: Some(c),
    }
}

/// The induced form `(Q⊗R)(a⊗b, a'⊗b') = Q(a, a') R(b, b')` on `tensor`, which must
/// be the tensor product of the two forms' modules in its standard basis order.
pub fn tensor_form(q: &BilinearForm, r: &BilinearForm, tensor: &Arc<WeightModule>) -> Result<BilinearForm> {
    let (a, b) = (&q.module, &r.module);
    let (da, db) = (a.dim(), b.dim());
    let layout_ok = tensor.dim() == da * db
        && (0..da).all(|i| {
            (0..db).all(|j| tensor.weights()[i * db + j] == a.weights()[i] + b.weights()[j])
        });
    if !layout_ok {
        return Err(Error::BasisMismatch(tensor.label().to_string()));
    }
    let mut gram = ExactMatrix::zeros(da * db, da * db);
    for i in 0..da {
        for i2 in 0..da {
            let qv = q.gram.get(i, i2);
            if qv.is_zero() {
                continue;
            }
            for j in 0..db {
                for j2 in 0..db {
                    let rv = r.gram.get(j, j2);
                    if !rv.is_zero() {
                        gram.set(i * db + j, i2 * db + j2, qv * rv);
                    }
                }
            }
        }
    }
    Ok(BilinearForm {
        module: Arc::clone(tensor),
        gram,
    })
}

/// `uᵀ G v`.
pub fn evaluate(form: &BilinearForm, u: &ModuleVector, v: &ModuleVector) -> Result<Rational> {
    for w in [u, v] {
        if !form.module.same_as(w.module()) {
            return Err(Error::ModuleMismatch(form.module.label().to_string()));
        }
    }
    let mut acc = Rational::zero();
    for (i, ui) in u.terms() {
        for (j, vj) in v.terms() {
            let g = form.gram.get(i, j);
            if !g.is_zero() {
                acc += ui * g * vj;
            }
        }
    }
    Ok(acc)
}
