use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use sl2forms::arith::parse_rational;
use sl2forms::Rational;

mod render;

use render::{Format, Outcome};

#[derive(Parser, Debug)]
#[command(name = "sl2forms", version, about = "Exact checks for invariant forms on sl2 tensor products")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Worker threads for parameter sweeps (default: one per core).
    #[arg(long, global = true)]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct FormConstants {
    /// Constant q of the form on the left factor, as p/q.
    #[arg(long, default_value = "1", allow_hyphen_values = true, value_parser = rational)]
    q: Rational,

    /// Constant r of the form on the right factor, as p/q.
    #[arg(long, default_value = "1", allow_hyphen_values = true, value_parser = rational)]
    r: Rational,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decompose V_m ⊗ V_n into irreducibles.
    Decompose { m: usize, n: usize },

    /// Singular vector of weight -(m+n-2k) in V_m ⊗ V_n.
    SingularVector { m: usize, n: usize, k: usize },

    /// Table of ω_k(b, b) for k = 0..min(m, n).
    OmegaTable {
        m: usize,
        n: usize,
        #[command(flatten)]
        constants: FormConstants,
    },

    /// Exhaustive check of the Karlsson-Minton sum for m, n <= max.
    VerifyKm {
        #[arg(long, default_value_t = 10)]
        max: usize,
    },

    /// Check the canonical and induced forms are *-forms for m, n <= max.
    VerifyStar {
        #[arg(long, default_value_t = 10)]
        max: usize,
        #[command(flatten)]
        constants: FormConstants,
    },

    /// Run every suite for m, n <= max.
    VerifyAll {
        #[arg(long, default_value_t = 10)]
        max: usize,
        #[command(flatten)]
        constants: FormConstants,
        /// Corrupt one matrix entry to confirm the suites can fail.
        #[cfg(debug_assertions)]
        #[arg(long, value_enum, hide = true)]
        inject_fault: Option<Fault>,
    },
}

#[cfg(debug_assertions)]
#[derive(ValueEnum, Debug, Clone, Copy)]
enum Fault {
    /// Perturb the X matrices.
    Relations,
    /// Perturb the Gram matrices of the *-form suite.
    Gram,
}

fn rational(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

fn run(cli: Cli) -> Outcome {
    let format = cli.format;
    match cli.command {
        Command::Decompose { m, n } => render::decompose(m, n, format),
        Command::SingularVector { m, n, k } => render::singular_vector(m, n, k, format),
        Command::OmegaTable { m, n, constants } => render::omega_table(m, n, &constants.q, &constants.r, format),
        Command::VerifyKm { max } => render::verify_km(max, format),
        Command::VerifyStar { max, constants } => render::verify_star(max, &constants.q, &constants.r, format),
        #[cfg(debug_assertions)]
        Command::VerifyAll { max, constants, inject_fault } => {
            let mutation = inject_fault.map(|f| match f {
                Fault::Relations => sl2forms::verify::Mutation::CorruptX,
                Fault::Gram => sl2forms::verify::Mutation::CorruptGram,
            });
            render::verify_all(max, &constants.q, &constants.r, mutation, format)
        }
        #[cfg(not(debug_assertions))]
        Command::VerifyAll { max, constants } => render::verify_all(max, &constants.q, &constants.r, None, format),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            eprintln!("error: cannot configure {jobs} worker threads: {e}");
            return ExitCode::from(2);
        }
    }
    let timed = matches!(
        cli.command,
        Command::VerifyKm { .. } | Command::VerifyStar { .. } | Command::VerifyAll { .. }
    );
    let start = Instant::now();
    let outcome = run(cli);
    let mut stdout = std::io::stdout().lock();
    let _ = stdout.write_all(outcome.stdout.as_bytes());
    let _ = stdout.flush();
    if let Some(err) = &outcome.stderr {
        eprintln!("error: {err}");
    }
    if timed && outcome.code != render::EXIT_USAGE {
        eprintln!("elapsed: {:.2?}", start.elapsed());
    }
    ExitCode::from(outcome.code)
}
