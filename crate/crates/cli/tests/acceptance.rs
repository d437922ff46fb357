//! Exit criteria. Every comparison is exact equality of rationals; one line is
//! printed per criterion and the process fails if any criterion fails.

use std::process::Command;
use std::time::Instant;

use sl2forms::arith::{rat, ratio};
use sl2forms::omega::{omega_closed, omega_value};
use sl2forms::verify::{
    decomposition_suite, hypergeometric_suite, km_direct_suite, km_from_modules_suite, relations_suite,
    singular_vector_suite, star_forms_suite, theorem_suite, x_power_suite, SuiteReport,
};
use sl2forms::Rational;

fn constants() -> Vec<Rational> {
    vec![rat(1), rat(-1), ratio(1, 2), rat(-3)]
}

fn suites_ok(suites: &[SuiteReport]) -> Result<String, String> {
    let mut summary = Vec::new();
    for s in suites {
        if !s.passed() {
            let shown: Vec<&String> = s.failures.iter().take(3).collect();
            return Err(format!("{} failed {} of {}: {:?}", s.name, s.failures.len(), s.checked, shown));
        }
        if s.checked == 0 {
            return Err(format!("{} checked nothing", s.name));
        }
        summary.push(format!("{} {}", s.name, s.checked));
    }
    Ok(summary.join(", "))
}

fn relations_and_star() -> Result<String, String> {
    let c = constants();
    suites_ok(&[relations_suite(12, None), star_forms_suite(12, &c, &c, None)])
}

fn decomposition() -> Result<String, String> {
    suites_ok(&[decomposition_suite(12)])
}

fn singular_vectors() -> Result<String, String> {
    suites_ok(&[singular_vector_suite(12, None)])
}

fn x_power_dual_route() -> Result<String, String> {
    suites_ok(&[x_power_suite(10, None), km_from_modules_suite(10, None)])
}

fn karlsson_minton_direct() -> Result<String, String> {
    let report = km_direct_suite(20);
    // 0 <= l <= k <= min(m, n), m, n <= 20.
    let expected: usize = (0..=20usize)
        .flat_map(|m| (0..=20usize).map(move |n| m.min(n)))
        .map(|t| (t + 1) * (t + 2) / 2)
        .sum();
    if report.checked != expected {
        return Err(format!("checked {} tuples, expected {expected}", report.checked));
    }
    suites_ok(&[report])
}

fn hypergeometric_route() -> Result<String, String> {
    suites_ok(&[hypergeometric_suite(12)])
}

fn theorem() -> Result<String, String> {
    let c = constants();
    let summary = suites_ok(&[theorem_suite(12, &c, &c, None)])?;
    let one = rat(1);
    for (m, n, k, expected) in [(1, 1, 0, 2), (1, 1, 1, -2), (2, 1, 0, 12), (2, 1, 1, -3)] {
        let brute = omega_value(m, n, k, &one, &one).map_err(|e| e.to_string())?;
        let closed = omega_closed(m, n, k, &one, &one).map_err(|e| e.to_string())?;
        if brute != rat(expected) || closed != rat(expected) {
            return Err(format!("ω_{k}(V_{m}⊗V_{n}) = {brute} / {closed}, expected {expected}"));
        }
    }
    Ok(format!("{summary}, spot values 2, -2, 12, -3"))
}

fn cli_contract() -> Result<String, String> {
    let bin = env!("CARGO_BIN_EXE_sl2forms");
    let run = |args: &[&str]| {
        Command::new(bin)
            .args(args)
            .output()
            .map_err(|e| format!("cannot run {bin}: {e}"))
    };
    let clean = run(&["verify-all", "--max", "8"])?;
    if clean.status.code() != Some(0) {
        return Err(format!("verify-all --max 8 exited {:?}", clean.status.code()));
    }
    if !cfg!(debug_assertions) {
        return Err("mutation check needs a debug build (fault injection is compiled out)".into());
    }
    let mutated = run(&["verify-all", "--max", "8", "--inject-fault", "relations", "--format", "json"])?;
    if mutated.status.code() != Some(1) {
        return Err(format!("corrupted X exited {:?}, expected 1", mutated.status.code()));
    }
    let report: serde_json::Value =
        serde_json::from_slice(&mutated.stdout).map_err(|e| format!("bad JSON: {e}"))?;
    let relations_passed = report["suites"]
        .as_array()
        .and_then(|s| s.iter().find(|s| s["name"] == "relations"))
        .map(|s| s["passed"].clone());
    if relations_passed != Some(serde_json::Value::Bool(false)) {
        return Err("corrupted X did not fail the relations suite".into());
    }
    Ok("exit 0 clean, exit 1 with corrupted X (relations FAIL)".into())
}

fn main() {
    type Criterion = (&'static str, fn() -> Result<String, String>);
    let criteria: [Criterion; 8] = [
        ("1 relations and *-structure, m, n <= 12", relations_and_star),
        ("2 Clebsch-Gordan decomposition, m, n <= 12", decomposition),
        ("3 singular vectors: null space = closed form, Yb = 0, min(m, n) <= 12", singular_vectors),
        ("4 X^s b matrix route = closed form, min(m, n) <= 10", x_power_dual_route),
        ("5 Karlsson-Minton sum = (-1)^(k+l), m, n <= 20", karlsson_minton_direct),
        ("6 3F2 route = direct sum, m, n <= 12", hypergeometric_route),
        ("7 sign alternation of ω_k and closed form, m, n <= 12", theorem),
        ("8 CLI exit codes and mutation check", cli_contract),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let start = Instant::now();
        let result = check();
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("[PASS] criterion {name} ({detail}; {secs:.1}s)"),
            Err(detail) => {
                failed += 1;
                println!("[FAIL] criterion {name}: {detail} ({secs:.1}s)");
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
