//! `weakhopf`: build, check and inspect weak Hopf algebra artifacts.

mod build;
mod cache;
mod check;
mod files;
mod inspect;
mod report;
mod suite;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use weakhopf::double::{DoubleOptions, DEFAULT_MAX_TERMS};
use weakhopf::error::Error;
use weakhopf::scalar::FieldSpec;

use crate::cache::Cache;

#[derive(Parser, Debug)]
#[command(name = "weakhopf", version, about = "Exact workbench for weak Hopf algebras, quantum doubles and their R-matrices")]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct GlobalArgs {
    /// Ground field for constructed algebras: Q or Fp:<prime>.
    #[arg(long, global = true, default_value = "Q", value_parser = parse_field)]
    field: FieldSpec,

    /// Bound on the number of terms of tensor expansions.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_TERMS, value_parser = parse_max_terms)]
    max_terms: u128,

    /// Directory for cached constructions; WORKBENCH_CACHE takes precedence.
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = ReportFormat::Text)]
    report: ReportFormat,

    /// Build doubles even when the algebra is not biperfect.
    #[arg(long, global = true)]
    force: bool,

    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,

    /// Record wall time per check (reports are then not reproducible).
    #[arg(long, global = true)]
    timings: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Construct an artifact and write it as canonical JSON.
    Build(build::BuildArgs),
    /// Run checks on an artifact and emit a report.
    Check(check::CheckArgs),
    /// Run the full matrix-monoid pipeline and the small-instance double suite.
    PaperSuite(suite::SuiteArgs),
    /// Pretty-print a summary of an artifact.
    Inspect(inspect::InspectArgs),
}

fn parse_field(s: &str) -> Result<FieldSpec, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_max_terms(s: &str) -> Result<u128, String> {
    match s.parse::<u128>() {
        Ok(0) => Err("must be positive".into()),
        Ok(n) => Ok(n),
        Err(e) => Err(e.to_string()),
    }
}

/// Settings shared by every subcommand.
pub struct Context {
    pub field: FieldSpec,
    pub max_terms: u128,
    pub cache: Cache,
    pub report: ReportFormat,
    pub force: bool,
    pub timings: bool,
}

impl Context {
    pub fn double_options(&self) -> DoubleOptions {
        DoubleOptions {
            force: self.force,
            max_terms: self.max_terms,
        }
    }
}

/// A command-line or input problem; exits with status 2.
#[derive(Debug)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

pub fn usage(msg: impl Into<String>) -> anyhow::Error {
    UsageError(msg.into()).into()
}

/// 2 for usage, parse and I/O problems; 1 for failed constructions.
fn exit_code(err: &anyhow::Error) -> u8 {
    if err.chain().any(|e| e.is::<UsageError>() || e.is::<std::io::Error>()) {
        return 2;
    }
    match err.chain().find_map(|e| e.downcast_ref::<Error>()) {
        Some(Error::Format(_) | Error::ScalarParse { .. } | Error::DimensionMismatch(_) | Error::IndexOutOfBounds { .. } | Error::InvalidMonoid(_)) => 2,
        Some(_) => 1,
        None => 2,
    }
}

/// WORKBENCH_CACHE, when set and non-empty, overrides `--cache-dir`.
fn cache_dir(flag: Option<PathBuf>) -> Option<PathBuf> {
    match std::env::var_os("WORKBENCH_CACHE") {
        Some(v) if !v.is_empty() => Some(PathBuf::from(v)),
        _ => flag,
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).format_timestamp(None).init();
    let cli = Cli::parse();
    let g = cli.global;
    if let Some(n) = g.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global() {
            log::warn!("could not size the thread pool: {e}");
        }
    }
    let ctx = Context {
        field: g.field,
        max_terms: g.max_terms,
        cache: Cache::new(cache_dir(g.cache_dir)),
        report: g.report,
        force: g.force,
        timings: g.timings,
    };
    let result = match cli.command {
        Command::Build(args) => build::run(&ctx, args).map(|()| true),
        Command::Check(args) => check::run(&ctx, args),
        Command::PaperSuite(args) => suite::run(&ctx, args),
        Command::Inspect(args) => inspect::run(args).map(|()| true),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
