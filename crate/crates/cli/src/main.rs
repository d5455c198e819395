mod report;
mod run;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

#[derive(Parser)]
#[command(name = "tropx", version, about = "Approximate min-plus products, shortest paths and convolutions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Min-plus product of the first two matrices in the input.
    Product(RunArgs),
    /// Min-plus convolution of the first two sequences in the input.
    Conv(RunArgs),
    /// All-pairs shortest paths of the first graph in the input.
    Apsp(RunArgs),
    /// A graph characteristic of the first graph in the input.
    Char(CharArgs),
    /// Writes a seeded random instance.
    Gen(GenArgs),
    /// Operation counts and wall times across weight ranges.
    Bench(BenchArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Algo {
    Covering,
    Zwick,
    Exact,
    Simple,
    Combined,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Backend {
    Naive,
    SkipInfinite,
    Threshold,
    Subquadratic,
}

#[derive(Args, Clone)]
pub struct RunArgs {
    /// Instance file, or `-` for stdin.
    pub input: PathBuf,
    #[arg(long, default_value_t = 0.1)]
    pub eps: f64,
    #[arg(long, value_enum)]
    pub algo: Option<Algo>,
    /// Min-max kernel used on covering layers.
    #[arg(long, value_enum)]
    pub backend: Option<Backend>,
    /// Also run the exact oracle and report the largest relative error.
    #[arg(long)]
    pub check: bool,
    /// Tolerance of the check; defaults to `--eps`.
    #[arg(long)]
    pub check_eps: Option<f64>,
    #[arg(long)]
    pub count_ops: bool,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Writes the full result in instance format.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Clone)]
pub struct CharArgs {
    #[command(flatten)]
    pub run: RunArgs,
    /// diameter, radius, median, min_triangle or min_cycle.
    #[arg(long)]
    pub kind: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GenKindArg {
    Directed,
    Undirected,
    Matrix,
    Seq,
}

#[derive(Args, Clone)]
pub struct GenArgs {
    #[arg(long, value_enum)]
    pub kind: GenKindArg,
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 0)]
    pub exp_lo: i64,
    #[arg(long, default_value_t = 8)]
    pub exp_hi: i64,
    #[arg(long, default_value_t = 1.0)]
    pub density: f64,
    /// Adds a random spanning cycle to graphs.
    #[arg(long)]
    pub connected: bool,
    /// Number of matrices or sequences.
    #[arg(long, default_value_t = 2)]
    pub blocks: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Problem {
    Product,
    Conv,
    Apsp,
    MinmaxProduct,
    MinmaxConv,
}

#[derive(Args, Clone)]
pub struct BenchArgs {
    #[arg(long, value_enum)]
    pub problem: Problem,
    #[arg(long, default_value_t = 64)]
    pub n: usize,
    #[arg(long, default_value_t = 0.1)]
    pub eps: f64,
    /// Upper ends of the weight exponent ranges `[0, hi]`.
    #[arg(long, value_delimiter = ',', default_values_t = [8, 512])]
    pub spans: Vec<i64>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

/// Failure surfaced as error JSON with exit code 2.
#[derive(Debug)]
pub struct Failure {
    pub kind: &'static str,
    pub message: String,
    pub position: Option<(usize, usize)>,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Failure {
        Failure { kind: "usage", message: message.into(), position: None }
    }
}

impl From<tropical_approx::Error> for Failure {
    fn from(e: tropical_approx::Error) -> Failure {
        let position = match &e {
            tropical_approx::Error::Parse { line, column, .. } => Some((*line, *column)),
            _ => None,
        };
        let kind = if position.is_some() { "parse" } else { "input" };
        Failure { kind, message: e.to_string(), position }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Failure {
        Failure { kind: "io", message: e.to_string(), position: None }
    }
}

fn fail(f: Failure) -> ExitCode {
    let mut err = json!({ "kind": f.kind, "message": f.message });
    if let Some((line, column)) = f.position {
        err["line"] = json!(line);
        err["column"] = json!(column);
    }
    println!("{}", json!({ "schema": 1, "error": err }));
    ExitCode::from(2)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => e.exit(),
        Err(e) => {
            eprintln!("{e}");
            return fail(Failure::usage(e.kind().to_string()));
        }
    };
    let argv: Vec<String> = std::env::args().skip(1).collect();
    let out = match cli.command {
        Command::Product(a) => run::product(&a, argv),
        Command::Conv(a) => run::conv(&a, argv),
        Command::Apsp(a) => run::apsp(&a, argv),
        Command::Char(a) => run::characteristic(&a, argv),
        Command::Gen(a) => run::gen(&a, argv),
        Command::Bench(a) => run::bench(&a, argv),
    };
    match out {
        Ok(Some(r)) => {
            println!("{}", serde_json::to_string(&r).expect("report serializes"));
            if r.check.as_ref().is_some_and(|c| !c.ok) {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Ok(None) => ExitCode::SUCCESS,
        Err(f) => fail(f),
    }
}
