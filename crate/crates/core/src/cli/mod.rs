//! Command-line front end.
//!
//! Exit codes: 0 all checks pass, 1 a property failed or was inconclusive,
//! 2 usage, applicability or membership error, 3 parse or schema error.

mod expr;
mod render;

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::ambient::GroupSignature;
use crate::iso::{build_translation_iso, IsoError, TranslationIso};
use crate::monoid::{MonoidSpec, QuadraticSurd, Window};
use crate::powmon::{Divisibility, FinSubset1, PowmonError, SetLiteralError, DEFAULT_DIVISIBILITY_CAP};
use crate::suites::{run_example_rank4, run_suites, SuiteConfig, SuiteReport, DEFAULT_SEED, SUITE_NAMES};

pub use expr::{evaluate, parse_expr, EvalError, Expr};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_PARSE: i32 = 3;

/// Suites run by `iso` after a successful construction.
const ISO_SUITES: &[&str] =
    &["two_sets", "cardinality", "homomorphism", "uniqueness", "pullback_powers", "quotients", "onereversed", "decomposition"];

#[derive(Parser, Debug)]
#[command(name = "powmon", version, about = "Exact computation in reduced finitary power monoids")]
pub struct Cli {
    /// Sup-norm bound of the search and sampling window.
    #[arg(long, global = true, default_value_t = 8, value_parser = clap::value_parser!(u64).range(1..))]
    window: u64,
    /// Sampling seed; an explicit flag wins over the environment.
    #[arg(long, global = true, env = "POWMON_SEED", default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Samples per suite.
    #[arg(long, global = true, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..))]
    samples: u64,
    /// Largest sampled set, identity included.
    #[arg(long, global = true, default_value_t = 6, value_parser = clap::value_parser!(u64).range(1..))]
    max_set_size: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    format: Format,
    /// Largest `Y` accepted by `divides`.
    #[arg(long, global = true, default_value_t = DEFAULT_DIVISIBILITY_CAP)]
    cap: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Human,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate an expression such as `rev({0,1}^2 * {0,3})`.
    Eval {
        expression: String,
        /// Monoid file; defaults to N0.
        #[arg(long)]
        monoid: Option<PathBuf>,
    },
    /// Decide whether `X` divides `Y`.
    Divides {
        x: String,
        y: String,
        #[arg(long)]
        monoid: Option<PathBuf>,
    },
    /// Units, irreducibles, valuation verdict and pseudo-unit decomposition on the window.
    Analyze { monoid: PathBuf },
    /// Build the translation isomorphism between two monoids and check it.
    Iso { domain: PathBuf, codomain: PathBuf },
    /// Run property suites; defaults to every suite on the half-plane and the sqrt(2) cone.
    Suite {
        names: Vec<String>,
        #[arg(long, requires = "codomain")]
        domain: Option<PathBuf>,
        #[arg(long, requires = "domain")]
        codomain: Option<PathBuf>,
    },
    /// The rank-4 pair of non-isomorphic monoids with isomorphic power monoids.
    ExampleRank4,
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(code: i32, stdout: String) -> Self {
        Outcome { code, stdout, stderr: String::new() }
    }

    fn err(code: i32, stderr: impl Into<String>) -> Self {
        Outcome { code, stdout: String::new(), stderr: stderr.into() }
    }
}

struct Ctx {
    format: Format,
    window: Window,
    cap: usize,
    suite: SuiteConfig,
}

impl Ctx {
    fn emit<T: Serialize>(&self, value: &T, human: impl FnOnce() -> String) -> String {
        match self.format {
            Format::Json => serde_json::to_string_pretty(value).expect("report serializes") + "\n",
            Format::Human => human(),
        }
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn execute<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let text = e.render().to_string();
            return if e.use_stderr() { Outcome::err(code, text) } else { Outcome::ok(code, text) };
        }
    };
    let ctx = Ctx {
        format: cli.format,
        window: Window::new(cli.window),
        cap: cli.cap,
        suite: SuiteConfig {
            seed: cli.seed,
            window_bound: cli.window,
            sample_count: cli.samples as usize,
            max_set_size: cli.max_set_size as usize,
        },
    };
    match cli.command {
        Command::Eval { expression, monoid } => cmd_eval(&ctx, &expression, monoid.as_deref()),
        Command::Divides { x, y, monoid } => cmd_divides(&ctx, &x, &y, monoid.as_deref()),
        Command::Analyze { monoid } => cmd_analyze(&ctx, &monoid),
        Command::Iso { domain, codomain } => cmd_iso(&ctx, &domain, &codomain),
        Command::Suite { names, domain, codomain } => cmd_suite(&ctx, &names, domain.as_deref().zip(codomain.as_deref())),
        Command::ExampleRank4 => cmd_example_rank4(&ctx),
    }
}

fn load_monoid(path: &Path) -> Result<Arc<MonoidSpec>, Outcome> {
    let text = fs::read_to_string(path)
        .map_err(|e| Outcome::err(EXIT_USAGE, format!("cannot read {}: {e}\n", path.display())))?;
    MonoidSpec::from_json(&text)
        .map(Arc::new)
        .map_err(|e| Outcome::err(EXIT_PARSE, format!("{}: {e}\n", path.display())))
}

fn load_or_n0(path: Option<&Path>) -> Result<Arc<MonoidSpec>, Outcome> {
    path.map(load_monoid).unwrap_or_else(|| Ok(Arc::new(MonoidSpec::full_n0())))
}

fn powmon_failure(e: &PowmonError) -> Outcome {
    Outcome::err(EXIT_USAGE, format!("{e}\n"))
}

#[derive(Serialize)]
struct EvalReport<'a> {
    monoid: &'a str,
    expression: &'a str,
    result: &'a FinSubset1,
}

fn cmd_eval(ctx: &Ctx, expression: &str, monoid: Option<&Path>) -> Outcome {
    let monoid = match load_or_n0(monoid) {
        Ok(m) => m,
        Err(o) => return o,
    };
    match evaluate(&monoid, expression) {
        Ok(set) => {
            let report = EvalReport { monoid: monoid.label(), expression, result: &set };
            Outcome::ok(EXIT_PASS, ctx.emit(&report, || format!("{set}\n")))
        }
        Err(EvalError::Parse(e)) => Outcome::err(EXIT_PARSE, format!("{e}\n{expression}\n{:>1$}\n", "^", e.position + 1)),
        Err(e @ EvalError::Invalid { .. }) => Outcome::err(EXIT_USAGE, format!("{e}\n")),
    }
}

#[derive(Serialize)]
struct DividesReport {
    x: String,
    y: String,
    divides: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<String>,
}

fn cmd_divides(ctx: &Ctx, x: &str, y: &str, monoid: Option<&Path>) -> Outcome {
    let monoid = match load_or_n0(monoid) {
        Ok(m) => m,
        Err(o) => return o,
    };
    let parse = |text: &str| {
        FinSubset1::parse(monoid.clone(), text).map_err(|e| match e {
            SetLiteralError::Parse(p) => Outcome::err(EXIT_PARSE, format!("{p}\n")),
            SetLiteralError::Invalid(p) => powmon_failure(&p),
        })
    };
    let (x, y) = match (parse(x), parse(y)) {
        (Ok(x), Ok(y)) => (x, y),
        (Err(o), _) | (_, Err(o)) => return o,
    };
    match x.divides(&y, ctx.cap) {
        Ok(verdict) => {
            let witness = match &verdict {
                Divisibility::Yes(z) => Some(z.to_string()),
                Divisibility::No => None,
            };
            let human = match &witness {
                Some(z) => format!("YES({z})\n"),
                None => "NO\n".to_string(),
            };
            let report = DividesReport { x: x.to_string(), y: y.to_string(), divides: witness.is_some(), witness };
            Outcome::ok(EXIT_PASS, ctx.emit(&report, || human))
        }
        Err(e) => powmon_failure(&e),
    }
}

fn cmd_analyze(ctx: &Ctx, path: &Path) -> Outcome {
    let monoid = match load_monoid(path) {
        Ok(m) => m,
        Err(o) => return o,
    };
    let report = render::analyze(&monoid, ctx.window);
    Outcome::ok(EXIT_PASS, ctx.emit(&report, || render::analysis_human(&report)))
}

fn suites_outcome(ctx: &Ctx, reports: Vec<SuiteReport>, header: Option<String>) -> Outcome {
    let passed = reports.iter().all(|r| r.verdict.is_success());
    let code = if passed { EXIT_PASS } else { EXIT_FAILURE };
    let stdout = ctx.emit(&reports, || {
        let mut text = header.unwrap_or_default();
        text.push_str(&render::suites_human(&reports));
        text
    });
    let stderr = reports
        .iter()
        .find(|r| !r.verdict.is_success())
        .map(|r| {
            let first = r.failures.first().map(|f| format!(": {}", f.message)).unwrap_or_default();
            format!("suite {} {:?}{first}\n", r.suite, r.verdict)
        })
        .unwrap_or_default();
    Outcome { code, stdout, stderr }
}

fn build(domain: Arc<MonoidSpec>, codomain: Arc<MonoidSpec>) -> Result<TranslationIso, Outcome> {
    build_translation_iso(domain, codomain).map_err(|e| match e {
        IsoError::ApplicabilityFailed { .. } => Outcome::err(EXIT_USAGE, format!("{e}\n")),
        other => Outcome::err(EXIT_FAILURE, format!("{other}\n")),
    })
}

fn cmd_iso(ctx: &Ctx, domain: &Path, codomain: &Path) -> Outcome {
    let (h, k) = match (load_monoid(domain), load_monoid(codomain)) {
        (Ok(h), Ok(k)) => (h, k),
        (Err(o), _) | (_, Err(o)) => return o,
    };
    let f = match build(h, k) {
        Ok(f) => f,
        Err(o) => return o,
    };
    let reports = run_suites(ISO_SUITES, &f, &ctx.suite).expect("built-in suite names");
    let header = format!("translation isomorphism {} -> {} ({:?})\n", f.domain(), f.codomain(), f.certificate());
    suites_outcome(ctx, reports, Some(header))
}

/// Half-plane to `√2`-cone in `Z²`.
pub fn planar_pair() -> (MonoidSpec, MonoidSpec) {
    let z2 = GroupSignature::free(2);
    let h = MonoidSpec::half_plane_lex(z2.clone(), [0, 1]).expect("valid embedding").with_label("H~");
    let alpha = QuadraticSurd::sqrt(2).expect("2 is not a square");
    let k = MonoidSpec::irrational_cone(z2, [0, 1], alpha).expect("valid embedding").with_label("K~");
    (h, k)
}

fn cmd_suite(ctx: &Ctx, names: &[String], files: Option<(&Path, &Path)>) -> Outcome {
    let (h, k) = match files {
        Some((d, c)) => match (load_monoid(d), load_monoid(c)) {
            (Ok(h), Ok(k)) => (h, k),
            (Err(o), _) | (_, Err(o)) => return o,
        },
        None => {
            let (h, k) = planar_pair();
            (Arc::new(h), Arc::new(k))
        }
    };
    let f = match build(h, k) {
        Ok(f) => f,
        Err(o) => return o,
    };
    let names: Vec<&str> = if names.is_empty() { SUITE_NAMES.to_vec() } else { names.iter().map(String::as_str).collect() };
    match run_suites(&names, &f, &ctx.suite) {
        Ok(reports) => suites_outcome(ctx, reports, None),
        Err(e) => Outcome::err(EXIT_USAGE, format!("{e}\n")),
    }
}

fn cmd_example_rank4(ctx: &Ctx) -> Outcome {
    let report = run_example_rank4(&ctx.suite);
    let code = if report.verdict.is_success() { EXIT_PASS } else { EXIT_FAILURE };
    let stdout = ctx.emit(&report, || render::example_human(&report));
    let stderr = report.failures.first().map(|f| format!("{}\n", f.message)).unwrap_or_default();
    Outcome { code, stdout, stderr }
}
