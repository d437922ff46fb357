//! Text and JSON rendering of each command's result.

use clap::ValueEnum;
use num_traits::Zero;
use serde::Serialize;
use serde_json::json;
use sl2forms::error::Error;
use sl2forms::hypergeom::{hypergeometric_range_verify, km_range_verify, KMParams, SweepReport};
use sl2forms::modules::{act, decompose as decompose_module, tensor_product, irreducible, Generator};
use sl2forms::omega::{omega_table as build_omega_table, s_k, TensorPair};
use sl2forms::verify::{star_forms_suite, verify_all as run_all, Mutation, SuiteReport, VerifyConfig};
use sl2forms::Rational;

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAILED: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: Option<String>,
    pub code: u8,
}

impl Outcome {
    fn ok(stdout: String, passed: bool) -> Self {
        Outcome {
            stdout,
            stderr: None,
            code: if passed { EXIT_OK } else { EXIT_FAILED },
        }
    }

    fn usage(msg: impl Into<String>) -> Self {
        Outcome {
            stdout: String::new(),
            stderr: Some(msg.into()),
            code: EXIT_USAGE,
        }
    }

    fn failed(msg: impl Into<String>) -> Self {
        Outcome {
            stdout: String::new(),
            stderr: Some(msg.into()),
            code: EXIT_FAILED,
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("report serializes");
    s.push('\n');
    s
}

fn mark(ok: bool) -> &'static str {
    if ok {
        "✓"
    } else {
        "✗"
    }
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

fn check_constants(q: &Rational, r: &Rational) -> Result<(), Outcome> {
    if q.is_zero() || r.is_zero() {
        return Err(Outcome::usage(format!("form constants must be nonzero (q = {q}, r = {r})")));
    }
    Ok(())
}

pub fn decompose(m: usize, n: usize, format: Format) -> Outcome {
    let module = tensor_product(&irreducible(m), &irreducible(n));
    let report = match decompose_module(&module) {
        Ok(r) => r,
        Err(e) => return Outcome::failed(e.to_string()),
    };
    let dim_ok = report.total_dim() == (m + 1) * (n + 1);
    let stdout = match format {
        Format::Json => to_json(&report),
        Format::Text => {
            let summands: Vec<String> = report
                .summands
                .iter()
                .map(|&(j, mult)| if mult == 1 { format!("V{j}") } else { format!("{mult}·V{j}") })
                .collect();
            format!(
                "V{m}⊗V{n} = {} (dim {} {})\n",
                summands.join(" ⊕ "),
                module.dim(),
                mark(dim_ok)
            )
        }
    };
    Outcome::ok(stdout, dim_ok)
}

fn b_label(s: usize) -> String {
    if s == 0 {
        "b_0".to_string()
    } else {
        format!("b_{{-{s}}}")
    }
}

#[derive(Serialize)]
struct Term {
    basis: String,
    coefficient: String,
}

pub fn singular_vector(m: usize, n: usize, k: usize, format: Format) -> Outcome {
    if k > m.min(n) {
        return Outcome::usage(format!("k = {k} must satisfy 0 <= k <= min(m, n) = {}", m.min(n)));
    }
    let pair = TensorPair::new(m, n);
    let b = match pair.b_closed_form(k) {
        Ok(b) => b,
        Err(e) => return Outcome::failed(e.to_string()),
    };
    let y_ok = act(pair.module(), Generator::Y, &b).map(|v| v.is_zero()).unwrap_or(false);
    let null_ok = pair.y_kernel_singular(k).map(|v| v == b).unwrap_or(false);
    let s = s_k(m, n, k);
    let stdout = match format {
        Format::Json => {
            let terms: Vec<Term> = b
                .terms()
                .map(|(i, c)| Term {
                    basis: pair.module().basis_names()[i].clone(),
                    coefficient: c.to_string(),
                })
                .collect();
            to_json(&json!({
                "m": m,
                "n": n,
                "k": k,
                "s": s,
                "vector": b.to_string(),
                "terms": terms,
                "y_annihilates": y_ok,
                "null_space_agrees": null_ok,
            }))
        }
        Format::Text => format!(
            "{} = {}; Yb = 0 {}; null-space route {}\n",
            b_label(s),
            b,
            mark(y_ok),
            mark(null_ok)
        ),
    };
    Outcome::ok(stdout, y_ok && null_ok)
}

fn sign_char(sign: i8) -> &'static str {
    match sign {
        1 => "+",
        -1 => "-",
        _ => "0",
    }
}

pub fn omega_table(m: usize, n: usize, q: &Rational, r: &Rational, format: Format) -> Outcome {
    if let Err(o) = check_constants(q, r) {
        return o;
    }
    let table = match build_omega_table(m, n, q, r) {
        Ok(t) => t,
        Err(e @ Error::Inconsistency(_)) => return Outcome::failed(e.to_string()),
        Err(e) => return Outcome::usage(e.to_string()),
    };
    let alternating = table.alternating();
    let stdout = match format {
        Format::Json => {
            #[derive(Serialize)]
            struct WithVerdict<'a> {
                #[serde(flatten)]
                table: &'a sl2forms::omega::OmegaReport,
                alternating: bool,
            }
            to_json(&WithVerdict { table: &table, alternating })
        }
        Format::Text => {
            let values: Vec<String> = table.rows.iter().map(|row| row.value.to_string()).collect();
            let width = values.iter().map(|v| v.chars().count()).max().unwrap_or(0).max(5);
            let mut out = format!("ω_k on V{m}⊗V{n}, q = {q}, r = {r}\n");
            out.push_str(&format!("{:>3}  {:>3}  {:>width$}  sign\n", "k", "s", "value"));
            for (row, value) in table.rows.iter().zip(&values) {
                out.push_str(&format!(
                    "{:>3}  {:>3}  {:>width$}  {}\n",
                    row.k,
                    row.s,
                    value,
                    sign_char(row.sign)
                ));
            }
            out.push_str(&format!("alternating: {}\n", verdict(alternating)));
            out
        }
    };
    Outcome::ok(stdout, alternating)
}

fn tuple(p: &KMParams) -> [i64; 4] {
    [p.k(), p.l(), p.m(), p.n()]
}

#[derive(Serialize)]
struct SweepJson {
    tuples: usize,
    failures: Vec<[i64; 4]>,
}

impl From<&SweepReport> for SweepJson {
    fn from(s: &SweepReport) -> Self {
        SweepJson {
            tuples: s.tuples,
            failures: s.failures.iter().map(tuple).collect(),
        }
    }
}

fn count_line(name: &str, sweep: &SweepReport) -> String {
    let noun = if sweep.tuples == 1 { "tuple" } else { "tuples" };
    let mut line = format!("{name}: {} {noun}, {} failures\n", sweep.tuples, sweep.failures.len());
    for p in &sweep.failures {
        line.push_str(&format!("  failed: {p}\n"));
    }
    line
}

pub fn verify_km(max: usize, format: Format) -> Outcome {
    let direct = km_range_verify(max);
    let hyper = hypergeometric_range_verify(max);
    let passed = direct.passed() && hyper.passed();
    let stdout = match format {
        Format::Json => {
            #[derive(Serialize)]
            struct KmJson {
                #[serde(flatten)]
                direct: SweepJson,
                hypergeometric: SweepJson,
            }
            to_json(&KmJson {
                direct: (&direct).into(),
                hypergeometric: (&hyper).into(),
            })
        }
        Format::Text => format!(
            "{}{}",
            count_line("Karlsson-Minton sum", &direct),
            count_line("3F2 route", &hyper)
        ),
    };
    Outcome::ok(stdout, passed)
}

#[derive(Serialize)]
struct SuiteJson<'a> {
    name: &'a str,
    checked: usize,
    failures: &'a [String],
    passed: bool,
}

fn suites_json<'a>(suites: &'a [SuiteReport]) -> Vec<SuiteJson<'a>> {
    suites
        .iter()
        .map(|s| SuiteJson {
            name: s.name,
            checked: s.checked,
            failures: &s.failures,
            passed: s.passed(),
        })
        .collect()
}

const SHOWN_FAILURES: usize = 5;

fn suites_text(header: String, suites: &[SuiteReport]) -> String {
    let mut out = header;
    for s in suites {
        out.push_str(&format!("{:<30} {}  ({} checked)\n", s.name, verdict(s.passed()), s.checked));
        for f in s.failures.iter().take(SHOWN_FAILURES) {
            out.push_str(&format!("    {f}\n"));
        }
        if s.failures.len() > SHOWN_FAILURES {
            out.push_str(&format!("    ... {} more\n", s.failures.len() - SHOWN_FAILURES));
        }
    }
    let all = suites.iter().all(SuiteReport::passed);
    out.push_str(&format!("overall: {}\n", verdict(all)));
    out
}

fn suites_outcome(max: usize, q: &Rational, r: &Rational, suites: &[SuiteReport], format: Format) -> Outcome {
    let passed = suites.iter().all(SuiteReport::passed);
    let stdout = match format {
        Format::Json => to_json(&json!({
            "max": max,
            "q": q.to_string(),
            "r": r.to_string(),
            "suites": suites_json(suites),
            "passed": passed,
        })),
        Format::Text => suites_text(format!("m, n <= {max}, q = {q}, r = {r}\n"), suites),
    };
    Outcome::ok(stdout, passed)
}

pub fn verify_star(max: usize, q: &Rational, r: &Rational, format: Format) -> Outcome {
    if let Err(o) = check_constants(q, r) {
        return o;
    }
    let suite = star_forms_suite(max, std::slice::from_ref(q), std::slice::from_ref(r), None);
    suites_outcome(max, q, r, &[suite], format)
}

pub fn verify_all(max: usize, q: &Rational, r: &Rational, mutation: Option<Mutation>, format: Format) -> Outcome {
    if let Err(o) = check_constants(q, r) {
        return o;
    }
    let config = VerifyConfig {
        mutation,
        ..VerifyConfig::new(max, q.clone(), r.clone())
    };
    let report = run_all(&config);
    suites_outcome(max, q, r, &report.suites, format)
}
