mod commands;
mod config;

use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser, Debug)]
#[command(name = "diophlab", version, about = "Minimal points, exponent constants and map identities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the exponent constants, or their JSON form.
    Constants(ConstantsArgs),
    /// Fuzz the determinant and map identities with exact integers.
    VerifyMaps(VerifyMapsArgs),
    /// Enumerate minimal points of xi in Z^(n+1).
    Minpoints(MinpointsArgs),
    /// Write chain, C_ij, Schmidt and exponent tables for a records file.
    Analyze(AnalyzeArgs),
    /// Re-derive records below a bound by brute force and compare.
    OracleCheck(OracleCheckArgs),
    /// Run the synthetic vanishing-minor construction on random bases.
    Prop43Test(Prop43Args),
    /// Test |x0| <= X, L(x) <= c X^-lambda on a geometric grid of X.
    HypothesisScan(HypothesisArgs),
}

#[derive(Args, Debug)]
pub struct ConstantsArgs {
    /// Emit JSON in place of the table.
    #[arg(long)]
    pub json: bool,
    /// Decimal digits per constant.
    #[arg(long, default_value_t = 50, value_parser = clap::value_parser!(u16).range(1..=1000))]
    pub digits: u16,
    /// Check the identity catalog at this residual tolerance, e.g. 1e-40.
    #[arg(long, value_name = "TOL")]
    pub verify: Option<String>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Fault {
    /// Flip the sign of the first term of E.
    ESign,
}

#[derive(Args, Debug)]
pub struct VerifyMapsArgs {
    #[arg(long, default_value_t = 10_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub trials: u64,
    #[arg(long, default_value_t = 7)]
    pub seed: u64,
    /// Coordinates are drawn from [-B, B].
    #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(i64).range(1..=1_000_000_000))]
    pub coeff_bound: i64,
    /// Run against a deliberately broken kernel.
    #[arg(long, value_enum)]
    pub inject_fault: Option<Fault>,
    /// Directory for fuzz.jsonl, fuzz_summary.json and the run config.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct MinpointsArgs {
    /// Preset (sqrt2, sqrt2-1, 2^(1/4), 2^(1/4)-1) or {"poly": [...], "lo": "...", "hi": "..."}.
    #[arg(long)]
    pub xi: String,
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
    pub n: u8,
    /// Scan every x0 up to this bound (accepts 1e8).
    #[arg(long, value_parser = config::parse_count, conflicts_with = "count", required_unless_present = "count")]
    pub max_x0: Option<u64>,
    /// Stop after this many new records.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub count: Option<u64>,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..=4096))]
    pub shards: u16,
    #[arg(long)]
    pub out: PathBuf,
    /// Continue the run stored in --out from its cursor.
    #[arg(long)]
    pub resume: bool,
}

#[derive(Args, Debug)]
pub struct AnalyzeArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
    /// Overrides the xi stored beside the input.
    #[arg(long)]
    pub xi: Option<String>,
    /// Number of trailing records in the exponent window.
    #[arg(long, default_value_t = diophlab::structure::DEFAULT_WINDOW)]
    pub window: usize,
}

#[derive(Args, Debug)]
pub struct OracleCheckArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    /// Compare records with x0 up to this bound (accepts 1e5).
    #[arg(long, value_parser = config::parse_count)]
    pub bound: u64,
    #[arg(long)]
    pub xi: Option<String>,
}

#[derive(Args, Debug)]
pub struct Prop43Args {
    #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..))]
    pub trials: u64,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(i64).range(1..=1_000_000_000))]
    pub coeff_bound: i64,
    /// Directory for prop43.jsonl, prop43_summary.json and the run config.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct HypothesisArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    /// Exponent, as a rational or decimal.
    #[arg(long)]
    pub lambda: String,
    /// Positive constant, as a rational or decimal.
    #[arg(long)]
    pub c: String,
    /// Ratio between consecutive grid values.
    #[arg(long, default_value_t = 1.1)]
    pub ratio: f64,
    /// Largest X covered by the records; defaults to the stored cursor.
    #[arg(long, value_parser = config::parse_count)]
    pub covered_to: Option<u64>,
    #[arg(long)]
    pub xi: Option<String>,
    /// Directory for hypothesis.csv and the run config.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Constants(a) => commands::constants(a),
        Command::VerifyMaps(a) => commands::verify_maps(a),
        Command::Minpoints(a) => commands::minpoints(a),
        Command::Analyze(a) => commands::analyze(a),
        Command::OracleCheck(a) => commands::oracle_check(a),
        Command::Prop43Test(a) => commands::prop43(a),
        Command::HypothesisScan(a) => commands::hypothesis(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
