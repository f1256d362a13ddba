//! The `detcode` command line.
//!
//! [`run`] parses arguments, runs one subcommand and returns the process exit
//! code; the binary is a thin wrapper around it so tests can drive the CLI
//! in-process.
//!
//! Exit codes: 0 success, 1 failed check or internal inconsistency, 2 usage
//! error, 3 resource limit, 4 counterexample found by `conjecture`.

mod cache;
mod commands;
mod report;
mod verify;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::Value;

use crate::error::Error;
use crate::matrix::DEFAULT_ENUMERATION_GUARD;
use crate::oracle::DEFAULT_SUBSPACE_GUARD;

pub use cache::{Cache, CacheKey, CACHE_ENV};
pub use report::{CheckItem, CheckReport};
pub use verify::{run_suites, Suite};

/// Written into every JSON document and every cache record.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;
pub const EXIT_COUNTEREXAMPLE: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "detcode", version, about = "Weights, distributions and generalized Hamming weights of determinantal codes")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print the weight table w_hat_r(t) for r = 1..l.
    Table(TableArgs),
    /// Run a verification suite over a parameter grid.
    Verify(VerifyArgs),
    /// Build the code and export its generator matrix and parameters.
    Code(CodeArgs),
    /// Print generalized Hamming weights with the method behind each value.
    Ghw(GhwArgs),
    /// Scan the weight orderings for counterexamples.
    Conjecture(ConjectureArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Json,
    Csv,
}

#[derive(Args, Debug, Clone)]
pub struct CommonArgs {
    #[arg(long, value_enum, default_value_t = Format::Human)]
    pub format: Format,
    /// Write the output here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Worker threads; 0 uses all cores.
    #[arg(long, default_value_t = 0)]
    pub jobs: usize,
    /// Largest number of matrices or codewords one enumeration may visit.
    #[arg(long, default_value_t = DEFAULT_ENUMERATION_GUARD, value_parser = clap::value_parser!(u64).range(1..))]
    pub guard: u64,
}

#[derive(Args, Debug, Clone)]
pub struct ShapeArgs {
    #[arg(long)]
    pub q: u64,
    #[arg(long)]
    pub l: usize,
    #[arg(long)]
    pub m: usize,
}

#[derive(Args, Debug, Clone)]
pub struct TableArgs {
    #[command(flatten)]
    pub shape: ShapeArgs,
    /// Only this rank bound.
    #[arg(long)]
    pub t: Option<usize>,
    /// Only this coefficient rank.
    #[arg(long)]
    pub r: Option<usize>,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Args, Debug, Clone)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = Suite::All)]
    pub suite: Suite,
    #[arg(long, value_delimiter = ',', default_values_t = vec![2u64, 3])]
    pub q_list: Vec<u64>,
    #[arg(long, default_value_t = 3)]
    pub max_m: usize,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Args, Debug, Clone)]
pub struct CodeArgs {
    #[command(flatten)]
    pub shape: ShapeArgs,
    #[arg(long)]
    pub t: usize,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Args, Debug, Clone)]
pub struct GhwArgs {
    #[command(flatten)]
    pub shape: ShapeArgs,
    #[arg(long)]
    pub t: usize,
    /// Only this subcode dimension.
    #[arg(long)]
    pub s: Option<usize>,
    /// Also search subcodes exhaustively where the guards allow, and compare.
    #[arg(long)]
    pub exhaustive: bool,
    /// Largest number of subcodes one exhaustive search may visit.
    #[arg(long, default_value_t = DEFAULT_SUBSPACE_GUARD, value_parser = clap::value_parser!(u64).range(1..))]
    pub subspace_guard: u64,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Args, Debug, Clone)]
pub struct ConjectureArgs {
    #[arg(long, value_delimiter = ',', default_values_t = vec![2u64])]
    pub q_list: Vec<u64>,
    #[arg(long, default_value_t = 5)]
    pub max_m: usize,
    #[command(flatten)]
    pub common: CommonArgs,
}

impl Command {
    fn common(&self) -> &CommonArgs {
        match self {
            Command::Table(a) => &a.common,
            Command::Verify(a) => &a.common,
            Command::Code(a) => &a.common,
            Command::Ghw(a) => &a.common,
            Command::Conjecture(a) => &a.common,
        }
    }
}

/// What a subcommand produced: the rendered document and its exit code.
pub struct Outcome {
    pub text: String,
    pub code: i32,
    /// Extra lines for stderr.
    pub notes: Vec<String>,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, code: EXIT_OK, notes: Vec::new() }
    }
}

/// Maps a library error to its exit code.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::InvalidParameter(_) => EXIT_USAGE,
        Error::ResourceLimit { .. } => EXIT_RESOURCE,
        Error::InternalConsistency(_) => EXIT_CHECK_FAILED,
    }
}

/// Pretty JSON with a trailing newline. Object keys come out sorted, so
/// parsing and re-emitting a document reproduces it byte for byte.
pub fn render_json(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("JSON values always serialize");
    s.push('\n');
    s
}

/// CSV with a header row, comma separated, LF line endings.
pub(crate) fn render_csv(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    w.write_record(header).expect("in-memory CSV write");
    for row in rows {
        w.write_record(row).expect("in-memory CSV write");
    }
    String::from_utf8(w.into_inner().expect("in-memory CSV flush")).expect("CSV of UTF-8 fields")
}

/// Runs the command line `args` (including the program name), writing the
/// document to `out` (or `--out`) and diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if code == EXIT_OK { out.write_all(rendered.as_bytes()) } else { err.write_all(rendered.as_bytes()) };
            return code;
        }
    };
    let common = cli.command.common().clone();
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(common.jobs).build() {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "error: cannot start {} worker threads: {e}", common.jobs);
            return EXIT_USAGE;
        }
    };
    let result = pool.install(|| commands::dispatch(&cli.command));
    match result {
        Ok(outcome) => {
            for note in &outcome.notes {
                let _ = writeln!(err, "{note}");
            }
            let written = match &common.out {
                Some(path) => std::fs::write(path, outcome.text.as_bytes()),
                None => out.write_all(outcome.text.as_bytes()),
            };
            if let Err(e) = written {
                let _ = writeln!(err, "error: cannot write output: {e}");
                return EXIT_USAGE;
            }
            outcome.code
        }
        Err(e) => {
            let mut msg = format!("error: {e}");
            if exit_code(&e) == EXIT_USAGE {
                let _ = write!(msg, "\n\nFor usage, run `detcode --help`.");
            }
            let _ = writeln!(err, "{msg}");
            exit_code(&e)
        }
    }
}
