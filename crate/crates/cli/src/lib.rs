//! Command-line front end for `gwloc`: argument parsing, the graph cache,
//! and JSON/CSV reports.

mod commands;
mod record;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use gwloc::schubert::Partition2;
use thiserror::Error;

pub use record::{
    parse_report, parse_result_record, to_csv, to_json, Check, ExactValue, JobConfig, Meta, Report, ResultRecord,
};

pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;
pub const EXIT_CORRESPONDENCE: i32 = 4;
pub const EXIT_VERIFY: i32 = 5;
pub const EXIT_CACHE: i32 = 6;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("internal error: {0}")]
    Internal(String),
    #[error("cache: {0}")]
    Cache(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => EXIT_CONFIG,
            CliError::Internal(_) => EXIT_INTERNAL,
            CliError::Cache(_) => EXIT_CACHE,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "gw",
    version,
    about = "Genus-zero Gromov-Witten invariants of Gr(2,n) by torus localization"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Invariant of Gr(2,n).
    Gr(JobArgs),
    /// Twisted invariant of (P^{n-1})^2 in bidegree (d1,d2).
    Twisted(JobArgs),
    /// Compare Gr(2,n) with half the twisted (P^{n-1})^2 sum.
    Correspondence(JobArgs),
    /// Run a property suite.
    Verify {
        suite: Suite,
        #[command(flatten)]
        job: JobArgs,
    },
    /// Enumerate graphs, through the cache when one is configured.
    Enumerate(JobArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Martin,
    Vanishing,
    Census,
    LambdaIndependence,
    EdgeLemma,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TargetArg {
    Gr,
    Pp,
    Proj,
}

#[derive(Debug, Clone, Args)]
pub struct JobArgs {
    #[arg(long, default_value_t = 4)]
    pub n: u32,
    #[arg(long)]
    pub d: Option<u32>,
    #[arg(long)]
    pub d1: Option<u32>,
    #[arg(long)]
    pub d2: Option<u32>,
    /// Number of marked points; defaults to the number of insertions.
    #[arg(long)]
    pub m: Option<usize>,
    /// Schubert classes as "a,b" with n-2 >= a >= b >= 0.
    #[arg(long = "insert", num_args = 1.., action = clap::ArgAction::Append)]
    pub insert: Vec<String>,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Number of seeds for lambda-independence.
    #[arg(long, default_value_t = 2)]
    pub seeds: u32,
    #[arg(long, env = "GW_CACHE_DIR")]
    pub cache_dir: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long)]
    pub jobs: Option<usize>,
    /// Include the full t-dependence of twisted sums.
    #[arg(long)]
    pub t_report: bool,
    /// Record wall times; the report is then no longer reproducible byte for byte.
    #[arg(long)]
    pub timing: bool,
    #[arg(long, value_enum, default_value_t = TargetArg::Gr)]
    pub target: TargetArg,
    #[arg(short, long, action = clap::ArgAction::Count)]
    pub verbose: u8,
    /// Test hook: drop the twisting class from the (P^{n-1})^2 side.
    #[arg(long, hide = true)]
    pub disable_twist: bool,
}

/// Parses one `--insert` value for Gr(2,n).
pub fn parse_insertion(s: &str, n: u32) -> Result<Partition2, CliError> {
    let p: Partition2 = s.parse().map_err(|e| CliError::Config(format!("{e}")))?;
    p.check_box(n).map_err(|e| CliError::Config(e.to_string()))?;
    Ok(p)
}

/// The report and the exit code its checks call for.
pub struct Outcome {
    pub report: Report,
    pub exit_code: i32,
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let start = Instant::now();
    let (job, name) = match &cli.command {
        Command::Gr(j) => (j, "gr".to_string()),
        Command::Twisted(j) => (j, "twisted".to_string()),
        Command::Correspondence(j) => (j, "correspondence".to_string()),
        Command::Verify { suite, job } => (job, format!("verify {}", suite_name(*suite))),
        Command::Enumerate(j) => (j, "enumerate".to_string()),
    };
    if let Some(jobs) = job.jobs {
        // fails only if a pool already exists, which then stays in use
        let _ = rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build_global();
    }
    let ctx = commands::Context::new(job, &name)?;
    let (results, checks, failure_code) = match &cli.command {
        Command::Gr(_) => commands::gr(&ctx)?,
        Command::Twisted(_) => commands::twisted(&ctx)?,
        Command::Correspondence(_) => commands::correspondence(&ctx)?,
        Command::Verify { suite, .. } => commands::verify(&ctx, *suite)?,
        Command::Enumerate(_) => commands::enumerate(&ctx)?,
    };
    let exit_code = if checks.iter().all(|c| c.pass) { 0 } else { failure_code };
    let report = Report {
        config: ctx.config.clone(),
        results,
        checks,
        meta: Meta {
            seed: job.seed,
            version: env!("CARGO_PKG_VERSION").to_string(),
            runtime_ms: job.timing.then(|| start.elapsed().as_millis() as u64),
        },
    };
    Ok(Outcome { report, exit_code })
}

fn suite_name(s: Suite) -> &'static str {
    match s {
        Suite::Martin => "martin",
        Suite::Vanishing => "vanishing",
        Suite::Census => "census",
        Suite::LambdaIndependence => "lambda-independence",
        Suite::EdgeLemma => "edge-lemma",
    }
}

/// Parse arguments, run, print the report to `out` and errors to `err`;
/// returns the process exit code.
pub fn main_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_CONFIG } else { 0 };
            let _ = if code == 0 {
                write!(out, "{e}")
            } else {
                write!(err, "{e}")
            };
            return code;
        }
    };
    let format = match &cli.command {
        Command::Gr(j) | Command::Twisted(j) | Command::Correspondence(j) | Command::Enumerate(j) => j.format,
        Command::Verify { job, .. } => job.format,
    };
    match run(&cli) {
        Ok(outcome) => {
            let text = match format {
                Format::Json => Ok(to_json(&outcome.report)),
                Format::Csv => to_csv(&outcome.report),
            };
            match text {
                Ok(t) => {
                    let _ = out.write_all(t.as_bytes());
                    outcome.exit_code
                }
                Err(e) => {
                    let _ = writeln!(err, "gw: {e}");
                    EXIT_INTERNAL
                }
            }
        }
        Err(e) => {
            let _ = writeln!(err, "gw: {e}");
            e.exit_code()
        }
    }
}
