mod descent_cmd;
mod ffd_cmd;
mod reduce_cmd;
mod sumpoly_cmd;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use semaev::Error;

pub const SCHEMA: &str = "semaev/1";

/// Summation polynomials, Weil descent, degree-fall experiments and the 3-SAT reduction chain.
#[derive(Parser, Debug)]
#[command(name = "semaev", version)]
pub struct RunConfig {
    #[command(subcommand)]
    command: Command,
    /// Log progress to stderr.
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    verbose: u8,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Summation polynomials.
    #[command(subcommand)]
    Sumpoly(SumpolyCommand),
    /// Identity checks on descended summation polynomials.
    #[command(subcommand)]
    Descent(DescentCommand),
    /// Degree-fall experiments on subspace restrictions.
    #[command(subcommand)]
    Ffd(FfdCommand),
    /// Reduce a DIMACS 3-SAT file to a summation-polynomial instance.
    Reduce(ReduceArgs),
    /// Check a witness against an instance written by `reduce`.
    Verify(VerifyArgs),
}

#[derive(Subcommand, Debug)]
enum SumpolyCommand {
    /// Print `S_r` of a Weierstrass curve.
    Compute(ComputeArgs),
}

#[derive(Args, Debug)]
pub struct ComputeArgs {
    /// `p` or `p^n`.
    #[arg(long)]
    pub field: String,
    /// Modulus coefficients, constant term first (default: first irreducible).
    #[arg(long, value_delimiter = ',')]
    pub modulus: Option<Vec<u64>>,
    /// Curve coefficients: integers, field indices, or comma-separated coordinates.
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub a1: String,
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub a2: String,
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub a3: String,
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub a4: String,
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub a6: String,
    #[arg(long)]
    pub r: usize,
    #[arg(long)]
    pub json: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Auto,
    Exhaustive,
    Symbolic,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BasisChoice {
    Power,
    Random,
}

#[derive(Subcommand, Debug)]
enum DescentCommand {
    /// Weighted sum of descended components against its linear right side.
    #[command(name = "check-w8")]
    CheckW8(CheckArgs),
    /// Trace identity for `S_3(X1, X2, x(P))`.
    #[command(name = "check-w7")]
    CheckW7(CheckArgs),
}

#[derive(Args, Debug)]
pub struct CheckArgs {
    /// Extension degree of GF(2^n).
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = Mode::Auto)]
    pub mode: Mode,
    #[arg(long, value_enum, default_value_t = BasisChoice::Power)]
    pub basis: BasisChoice,
    #[arg(long)]
    pub json: bool,
}

#[derive(Subcommand, Debug)]
enum FfdCommand {
    /// Profile seeded subspace instances and write a CSV.
    Run(FfdArgs),
}

#[derive(Args, Debug)]
pub struct FfdArgs {
    #[arg(long, value_delimiter = ',', required = true)]
    pub n_list: Vec<usize>,
    #[arg(long)]
    pub trials: u64,
    /// Trials use seeds `seed, seed + 1, ...`.
    #[arg(long)]
    pub seed: u64,
    #[arg(long, default_value_t = 6)]
    pub dmax: u32,
    /// Bytes per Macaulay matrix.
    #[arg(long, env = "SEMAEV_MEM_BUDGET", default_value_t = 4 << 30)]
    pub mem: u64,
    /// Directory for `results.csv` and per-instance JSON; CSV goes to stdout otherwise.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Fill the wall-time column (outputs then differ between runs).
    #[arg(long)]
    pub timing: bool,
    #[arg(long)]
    pub json: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum RouteArg {
    Ec,
    Cusp,
}

#[derive(Args, Debug)]
pub struct ReduceArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long, value_enum)]
    pub route: RouteArg,
    #[arg(long)]
    pub out: PathBuf,
    /// Curve search seed (required for the elliptic route).
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, default_value_t = semaev::reductions::DEFAULT_ORDER_BOUND)]
    pub order_bound: u64,
    #[arg(long)]
    pub json: bool,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long)]
    pub instance: PathBuf,
    #[arg(long)]
    pub witness: PathBuf,
    #[arg(long)]
    pub json: bool,
}

/// Result of a command that ran to completion.
pub enum Outcome {
    /// Verified, solvable or PASS.
    Yes,
    /// Refuted, unsatisfiable or FAIL.
    No,
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Lib(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

pub type CliResult = std::result::Result<Outcome, CliError>;

pub fn log(verbose: u8, msg: &str) {
    if verbose > 0 {
        eprintln!("{msg}");
    }
}

pub fn to_json(v: &serde_json::Value) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

fn main() -> ExitCode {
    let cfg = RunConfig::parse();
    let v = cfg.verbose;
    let result = match cfg.command {
        Command::Sumpoly(SumpolyCommand::Compute(a)) => sumpoly_cmd::compute(&a),
        Command::Descent(DescentCommand::CheckW8(a)) => descent_cmd::check_combination(&a, v),
        Command::Descent(DescentCommand::CheckW7(a)) => descent_cmd::check_trace(&a, v),
        Command::Ffd(FfdCommand::Run(a)) => ffd_cmd::run(&a, v),
        Command::Reduce(a) => reduce_cmd::reduce(&a, v),
        Command::Verify(a) => reduce_cmd::verify(&a),
    };
    match result {
        Ok(Outcome::Yes) => ExitCode::from(0),
        Ok(Outcome::No) => ExitCode::from(1),
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Lib(e)) => {
            eprintln!("error: {e}");
            match e {
                Error::ResourceCap(_) | Error::SearchExhausted(_) => ExitCode::from(3),
                _ => ExitCode::from(2),
            }
        }
    }
}
