//! Parameter sweeps over `0 <= m, n <= max` that combine every check in the crate.
//!
//! Each suite runs its `(m, n)` cases in parallel and reports failures in
//! canonical `(m, n, ...)` order, so the output does not depend on scheduling.

use std::sync::Arc;

use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{parity_sign, rat, Rational};
use crate::forms::{canonical_form, is_star_form, tensor_form, BilinearForm};
use crate::hypergeom::{hypergeometric_range_verify, km_range_verify, SweepReport};
use crate::linalg::ExactMatrix;
use crate::modules::{
    act, check_relations, decompose, irreducible, tensor_product, weight_space_indices, Generator,
    WeightModule,
};
use crate::omega::{omega_table_for, s_k, theorem_report, TensorPair};

/// Deliberate corruption for checking that the suites can fail.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mutation {
    /// Adds 1 to entry `(1, 0)` of every `X` matrix the suites build (entry `(0, 0)`
    /// for one-dimensional modules).
    CorruptX,
    /// Adds 1 to entry `(0, 0)` of every Gram matrix checked by the `*`-form suite.
    CorruptGram,
}

#[derive(Debug, Clone)]
pub struct VerifyConfig {
    pub max: usize,
    pub qs: Vec<Rational>,
    pub rs: Vec<Rational>,
    pub mutation: Option<Mutation>,
}

impl VerifyConfig {
    pub fn new(max: usize, q: Rational, r: Rational) -> Self {
        VerifyConfig {
            max,
            qs: vec![q],
            rs: vec![r],
            mutation: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub name: &'static str,
    pub checked: usize,
    pub failures: Vec<String>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn from_sweep(name: &'static str, sweep: SweepReport) -> Self {
        SuiteReport {
            name,
            checked: sweep.tuples,
            failures: sweep.failures.iter().map(ToString::to_string).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub max: usize,
    pub suites: Vec<SuiteReport>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.suites.iter().all(SuiteReport::passed)
    }
}

fn pairs(max: usize) -> Vec<(usize, usize)> {
    (0..=max).flat_map(|m| (0..=max).map(move |n| (m, n))).collect()
}

fn mutate(module: Arc<WeightModule>, mutation: Option<Mutation>) -> Arc<WeightModule> {
    match mutation {
        Some(Mutation::CorruptX) => {
            let row = usize::from(module.dim() > 1);
            Arc::new(module.with_perturbed_entry(Generator::X, row, 0, &rat(1)))
        }
        _ => module,
    }
}

fn module_irreducible(m: usize, mutation: Option<Mutation>) -> Arc<WeightModule> {
    mutate(irreducible(m), mutation)
}

fn module_pair(m: usize, n: usize, mutation: Option<Mutation>) -> TensorPair {
    let base = TensorPair::new(m, n);
    let module = mutate(Arc::clone(base.module()), mutation);
    TensorPair::with_module(m, n, module).expect("same dimension")
}

/// Runs `case` on every `(m, n)` pair in parallel and concatenates failures in order.
fn per_pair<F>(name: &'static str, max: usize, case: F) -> SuiteReport
where
    F: Fn(usize, usize) -> (usize, Vec<String>) + Sync,
{
    let results: Vec<(usize, Vec<String>)> = pairs(max).into_par_iter().map(|(m, n)| case(m, n)).collect();
    SuiteReport {
        name,
        checked: results.iter().map(|r| r.0).sum(),
        failures: results.into_iter().flat_map(|r| r.1).collect(),
    }
}

/// `[X,Y] = H`, `[H,X] = 2X`, `[H,Y] = -2Y` on every `V_m` and `V_m ⊗ V_n`.
pub fn relations_suite(max: usize, mutation: Option<Mutation>) -> SuiteReport {
    per_pair("relations", max, |m, n| {
        let mut modules = vec![module_pair(m, n, mutation).module().clone()];
        if n == 0 {
            modules.push(module_irreducible(m, mutation));
        }
        let failures = modules
            .iter()
            .map(|module| check_relations(module))
            .filter(|r| !r.passed())
            .map(|r| {
                let failing: Vec<String> = r.failing.iter().map(ToString::to_string).collect();
                format!("{}: {}", r.label, failing.join(", "))
            })
            .collect();
        (modules.len(), failures)
    })
}

fn corrupt_gram(form: BilinearForm, mutation: Option<Mutation>) -> BilinearForm {
    if mutation != Some(Mutation::CorruptGram) {
        return form;
    }
    let mut gram: ExactMatrix = form.gram().clone();
    let v = gram.get(0, 0) + rat(1);
    gram.set(0, 0, v);
    BilinearForm::new(Arc::clone(form.module()), gram).expect("diagonal change keeps symmetry")
}

fn star_failure(label: &str, module: &Arc<WeightModule>, form: &BilinearForm) -> Option<String> {
    match is_star_form(module, form) {
        Ok(report) if report.passed() => None,
        Ok(report) => {
            let failing: Vec<String> = report.failing.iter().map(ToString::to_string).collect();
            Some(format!(
                "{label}: incompatible with {:?}, nondegenerate = {}",
                failing, report.nondegenerate
            ))
        }
        Err(e) => Some(format!("{label}: {e}")),
    }
}

/// `is_star_form` on the canonical forms of each `V_m` and on the induced forms
/// of each `V_m ⊗ V_n`.
pub fn star_forms_suite(max: usize, qs: &[Rational], rs: &[Rational], mutation: Option<Mutation>) -> SuiteReport {
    let mut constants: Vec<Rational> = qs.iter().chain(rs).cloned().collect();
    constants.sort();
    constants.dedup();
    per_pair("star-forms", max, |m, n| {
        let mut checked = 0;
        let mut failures = Vec::new();
        let irreducible_m = module_irreducible(m, mutation);
        if n == 0 {
            for c in &constants {
                checked += 1;
                let label = format!("canonical form on V_{m}, q = {c}");
                let form = match canonical_form(m, c) {
                    Ok(f) => BilinearForm::new(Arc::clone(&irreducible_m), f.gram().clone()).expect("same dim"),
                    Err(e) => {
                        failures.push(format!("{label}: {e}"));
                        continue;
                    }
                };
                let form = corrupt_gram(form, mutation);
                failures.extend(star_failure(&label, &irreducible_m, &form));
            }
        }
        let pair = module_pair(m, n, mutation);
        for q in qs {
            for r in rs {
                checked += 1;
                let label = format!("Q⊗R on V_{m}⊗V_{n}, q = {q}, r = {r}");
                let form = canonical_form(m, q)
                    .and_then(|fq| canonical_form(n, r).map(|fr| (fq, fr)))
                    .and_then(|(fq, fr)| tensor_form(&fq, &fr, pair.module()));
                match form {
                    Ok(form) => {
                        let form = corrupt_gram(form, mutation);
                        failures.extend(star_failure(&label, pair.module(), &form));
                    }
                    Err(e) => failures.push(format!("{label}: {e}")),
                }
            }
        }
        (checked, failures)
    })
}

/// The expected decomposition `V_{|m-n|} ⊕ V_{|m-n|+2} ⊕ ... ⊕ V_{m+n}`.
pub fn clebsch_gordan_series(m: usize, n: usize) -> Vec<(i64, usize)> {
    let lo = m.abs_diff(n) as i64;
    let hi = (m + n) as i64;
    (lo..=hi).step_by(2).map(|j| (j, 1)).collect()
}

/// Weight-differencing decomposition of `V_m ⊗ V_n` against the Clebsch-Gordan series,
/// plus the dimension count `k + 1` of each weight `-m-n+2k` space.
pub fn decomposition_suite(max: usize) -> SuiteReport {
    per_pair("decomposition", max, |m, n| {
        let t = tensor_product(&irreducible(m), &irreducible(n));
        let mut failures = Vec::new();
        match decompose(&t) {
            Ok(report) => {
                if report.summands != clebsch_gordan_series(m, n) {
                    failures.push(format!("V_{m}⊗V_{n}: got {:?}", report.summands));
                }
                if report.total_dim() != (m + 1) * (n + 1) {
                    failures.push(format!("V_{m}⊗V_{n}: summand dimensions add to {}", report.total_dim()));
                }
            }
            Err(e) => failures.push(format!("V_{m}⊗V_{n}: {e}")),
        }
        for k in 0..=m.min(n) {
            let w = -((m + n) as i64) + 2 * k as i64;
            let dim = weight_space_indices(&t, w).len();
            if dim != k + 1 {
                failures.push(format!("V_{m}⊗V_{n}: weight {w} space has dimension {dim}"));
            }
        }
        (1, failures)
    })
}

/// Null-space singular vector equals the closed form `b`, and `Y b = 0`.
pub fn singular_vector_suite(max: usize, mutation: Option<Mutation>) -> SuiteReport {
    per_pair("singular-vectors", max, |m, n| {
        let pair = module_pair(m, n, mutation);
        let mut failures = Vec::new();
        for k in 0..=m.min(n) {
            let label = format!("(m={m}, n={n}, k={k})");
            let b = pair.b_closed_form(k).expect("k in range");
            match pair.y_kernel_singular(k) {
                Ok(v) if v == b => {}
                Ok(v) => failures.push(format!("{label}: null space gives {v}, closed form {b}")),
                Err(e) => failures.push(format!("{label}: {e}")),
            }
            match act(pair.module(), Generator::Y, &b) {
                Ok(yb) if yb.is_zero() => {}
                Ok(yb) => failures.push(format!("{label}: Y b = {yb}")),
                Err(e) => failures.push(format!("{label}: {e}")),
            }
        }
        (m.min(n) + 1, failures)
    })
}

/// Matrix powering of `X` against the closed form for `X^{s_k} b`.
pub fn x_power_suite(max: usize, mutation: Option<Mutation>) -> SuiteReport {
    per_pair("x-power", max, |m, n| {
        let pair = module_pair(m, n, mutation);
        let mut failures = Vec::new();
        for k in 0..=m.min(n) {
            let (brute, closed) = (pair.x_power_b_brute(k), pair.x_power_b_closed(k));
            match (brute, closed) {
                (Ok(b), Ok(c)) if b == c => {}
                (Ok(b), Ok(c)) => failures.push(format!("(m={m}, n={n}, k={k}): matrix route {b}, closed form {c}")),
                (Err(e), _) | (_, Err(e)) => failures.push(format!("(m={m}, n={n}, k={k}): {e}")),
            }
        }
        (m.min(n) + 1, failures)
    })
}

/// The Karlsson-Minton sum read off the brute-force `X^{s_k} b` equals `(-1)^{k+l}`.
pub fn km_from_modules_suite(max: usize, mutation: Option<Mutation>) -> SuiteReport {
    per_pair("karlsson-minton-from-modules", max, |m, n| {
        let pair = module_pair(m, n, mutation);
        let mut checked = 0;
        let mut failures = Vec::new();
        for k in 0..=m.min(n) {
            for l in 0..=k {
                checked += 1;
                let expected = rat(parity_sign((k + l) as i64));
                match pair.km_from_modules(k, l) {
                    Ok(v) if v == expected => {}
                    Ok(v) => failures.push(format!("(k={k}, l={l}, m={m}, n={n}): {v}")),
                    Err(e) => failures.push(format!("(k={k}, l={l}, m={m}, n={n}): {e}")),
                }
            }
        }
        (checked, failures)
    })
}

/// Both routes for `ω_k` agree and the signs alternate as `(-1)^k sign(qr)`.
pub fn theorem_suite(max: usize, qs: &[Rational], rs: &[Rational], mutation: Option<Mutation>) -> SuiteReport {
    per_pair("theorem", max, |m, n| {
        let pair = module_pair(m, n, mutation);
        let mut checked = 0;
        let mut failures = Vec::new();
        for q in qs {
            for r in rs {
                checked += 1;
                let label = format!("(m={m}, n={n}, q={q}, r={r})");
                match omega_table_for(&pair, q, r) {
                    Ok(table) => {
                        let report = theorem_report(&table);
                        if !report.passed() {
                            failures.push(format!("{label}: signs {:?}", report.signs));
                        }
                        if table.rows.iter().any(|row| row.value.is_zero() || row.s != s_k(m, n, row.k)) {
                            failures.push(format!("{label}: malformed row"));
                        }
                    }
                    Err(e) => failures.push(format!("{label}: {e}")),
                }
            }
        }
        (checked, failures)
    })
}

pub fn km_direct_suite(max: usize) -> SuiteReport {
    SuiteReport::from_sweep("karlsson-minton", km_range_verify(max))
}

pub fn hypergeometric_suite(max: usize) -> SuiteReport {
    SuiteReport::from_sweep("3f2-route", hypergeometric_range_verify(max))
}

pub fn verify_all(config: &VerifyConfig) -> VerifyReport {
    let (max, qs, rs, mutation) = (config.max, &config.qs, &config.rs, config.mutation);
    let suites = vec![
        relations_suite(max, mutation),
        star_forms_suite(max, qs, rs, mutation),
        decomposition_suite(max),
        singular_vector_suite(max, mutation),
        x_power_suite(max, mutation),
        km_from_modules_suite(max, mutation),
        theorem_suite(max, qs, rs, mutation),
        km_direct_suite(max),
        hypergeometric_suite(max),
    ];
    VerifyReport { max, suites }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::ratio;

    fn constants() -> Vec<Rational> {
        vec![rat(1), rat(-1), ratio(1, 2), rat(-3)]
    }

    #[test]
    fn clebsch_gordan_examples() {
        assert_eq!(clebsch_gordan_series(1, 1), vec![(0, 1), (2, 1)]);
        assert_eq!(clebsch_gordan_series(3, 2), vec![(1, 1), (3, 1), (5, 1)]);
        assert_eq!(clebsch_gordan_series(0, 4), vec![(4, 1)]);
    }

    #[test]
    fn all_suites_pass_small() {
        let config = VerifyConfig {
            max: 4,
            qs: constants(),
            rs: constants(),
            mutation: None,
        };
        let report = verify_all(&config);
        for suite in &report.suites {
            assert!(suite.passed(), "{}: {:?}", suite.name, suite.failures);
            assert!(suite.checked > 0, "{}", suite.name);
        }
    }

    #[test]
    fn corrupt_x_flips_module_suites() {
        let qs = [rat(1)];
        assert!(!relations_suite(2, Some(Mutation::CorruptX)).passed());
        assert!(!star_forms_suite(2, &qs, &qs, Some(Mutation::CorruptX)).passed());
        assert!(!x_power_suite(2, Some(Mutation::CorruptX)).passed());
        assert!(!theorem_suite(2, &qs, &qs, Some(Mutation::CorruptX)).passed());
        assert!(decomposition_suite(2).passed());
    }

    #[test]
    fn corrupt_gram_flips_star_suite_only() {
        let qs = [rat(1)];
        assert!(!star_forms_suite(2, &qs, &qs, Some(Mutation::CorruptGram)).passed());
        assert!(relations_suite(2, Some(Mutation::CorruptGram)).passed());
    }

    #[test]
    fn suite_output_is_deterministic() {
        let a = relations_suite(3, Some(Mutation::CorruptX));
        let b = relations_suite(3, Some(Mutation::CorruptX));
        assert_eq!(a, b);
        assert_eq!(a.failures[0], "V_0⊗V_0 (perturbed): [H,X] = 2X");
    }
}
