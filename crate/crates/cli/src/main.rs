//! `golod`: dimension tables, growth-bound checks and nil constructions for
//! graded ideals of the free associative algebra.

mod commands;
mod input;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "golod", version, about = "Exact graded algebra in F{x1,…,xd}")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Dimension table of T/I up to a degree, with the basic-inequality slack.
    Dims(DimsArgs),
    /// Build a generator sequence block by block and write it as JSON.
    Construct(ConstructArgs),
    /// Nilpotence exponent of g from a blueprint, optionally checked by membership.
    Nilcheck(NilcheckArgs),
    /// Growth-bound conditions and the recurrence ledger.
    Bound(BoundArgs),
    /// |J(q,n)|, its bound, tuples and orbit sizes.
    Jcount(JcountArgs),
    /// Print s_j and h_j for a window (d, c).
    Symfun(SymfunArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Args, Debug)]
pub struct DimsArgs {
    /// Generator file: one polynomial per line, `#` starts a comment.
    #[arg(long, conflicts_with = "random")]
    pub gens: Option<PathBuf>,
    #[arg(long)]
    pub d: u32,
    /// gf2, gf<p> or q.
    #[arg(long, default_value = "gf2")]
    pub field: String,
    #[arg(long)]
    pub maxdeg: usize,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    /// Write the table here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Use this many random homogeneous generators instead of a file.
    #[arg(long)]
    pub random: Option<usize>,
    /// Degree range lo..=hi of random generators.
    #[arg(long, default_value = "2..=4", value_parser = input::parse_degree_range)]
    pub random_degrees: (usize, usize),
    /// Number of sampled words per random generator.
    #[arg(long, default_value_t = 4)]
    pub random_terms: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Largest number of words d^n handled in any degree.
    #[arg(long)]
    pub cap: Option<u64>,
}

#[derive(Args, Debug)]
pub struct ConstructArgs {
    #[arg(long)]
    pub d: u32,
    /// ε as a/b.
    #[arg(long, required_unless_present = "toy_c")]
    pub eps: Option<String>,
    #[arg(long, default_value_t = 1)]
    pub blocks: usize,
    /// symbolic or dense.
    #[arg(long, default_value = "symbolic")]
    pub mode: String,
    /// Single toy block with window degree c, ignoring ε.
    #[arg(long, requires = "toy_n", conflicts_with = "eps")]
    pub toy_c: Option<u32>,
    #[arg(long, requires = "toy_c")]
    pub toy_n: Option<u32>,
    /// Write the blueprint here; otherwise it goes to stdout and the summary to stderr.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Largest |J| and q^n materialized in dense mode.
    #[arg(long)]
    pub cap: Option<u64>,
}

#[derive(Args, Debug)]
pub struct NilcheckArgs {
    #[arg(long)]
    pub blueprint: PathBuf,
    #[arg(long)]
    pub g: String,
    #[arg(long, default_value = "q")]
    pub field: String,
    /// Check g^n ∈ I on a dense table of the blueprint generators.
    #[arg(long)]
    pub verify: bool,
}

#[derive(Args, Debug)]
pub struct BoundArgs {
    #[arg(long)]
    pub d: u32,
    /// ε as a/b; sets (v, c, u) = (ε, ε², d-2ε).
    #[arg(long, conflicts_with_all = ["v", "c", "u"])]
    pub eps: Option<String>,
    #[arg(long, requires_all = ["c", "u"])]
    pub v: Option<String>,
    #[arg(long, requires_all = ["v", "u"])]
    pub c: Option<String>,
    #[arg(long, requires_all = ["v", "c"])]
    pub u: Option<String>,
    /// Generator counts per degree, e.g. `13:1,15:2`.
    #[arg(long, conflicts_with = "blueprint")]
    pub r: Option<String>,
    /// Take r from a blueprint file.
    #[arg(long)]
    pub blueprint: Option<PathBuf>,
    /// b_0,b_1,… as a comma list, or `pow` for b_n = d^n up to --maxdeg.
    #[arg(long)]
    pub b: Option<String>,
    /// Largest degree considered for condition (a) and for `--b pow`.
    #[arg(long, default_value_t = 12)]
    pub maxdeg: usize,
}

#[derive(Args, Debug)]
pub struct JcountArgs {
    #[arg(long)]
    pub q: u32,
    #[arg(long)]
    pub n: u32,
    /// Print every tuple of J(q,n).
    #[arg(long)]
    pub list: bool,
    /// Orbit size of a tuple such as `1,1,1,2,2,2,2`.
    #[arg(long)]
    pub orbit: Option<String>,
}

#[derive(Args, Debug)]
pub struct SymfunArgs {
    #[arg(long)]
    pub d: u32,
    #[arg(long)]
    pub c: usize,
    /// Weakly increasing tuple over the window, e.g. `1,2`.
    #[arg(long)]
    pub j: String,
    #[arg(long, default_value = "q")]
    pub field: String,
}

/// How a run ended.
#[derive(Debug)]
pub enum Failure {
    /// A mathematical check did not hold.
    Check(String),
    /// Bad flags or input.
    Usage(String),
}

impl From<golod_core::Error> for Failure {
    fn from(e: golod_core::Error) -> Self {
        match e {
            golod_core::Error::Eq1Violated { .. } => Failure::Check(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Dims(a) => commands::dims(&a),
        Command::Construct(a) => commands::construct(&a),
        Command::Nilcheck(a) => commands::nilcheck(&a),
        Command::Bound(a) => commands::bound(&a),
        Command::Jcount(a) => commands::jcount(&a),
        Command::Symfun(a) => commands::symfun(&a),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check(msg)) => {
            eprintln!("check failed: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
