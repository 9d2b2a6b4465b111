use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::network::BuiltinExample;

#[derive(Debug, Parser)]
#[command(name = "qlnc", version, about = "Bit/phase shadow simulator for multiple-unicast quantum network codes")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print per-pair ranks of the transfer blocks and check a rate choice.
    Rates(RatesArgs),
    /// Monte Carlo estimate of the bit and phase error probabilities.
    Simulate(SimulateArgs),
    /// Field-size and block-length schedules.
    Params(ParamsArgs),
    /// Exhaustive state-vector checks at toy sizes.
    Oracle(OracleArgs),
    /// Probability experiments on random subspaces and the scrambler.
    Lemmas(LemmasArgs),
    /// Dump a deterministic encode/decode test vector as JSON.
    Vector(VectorArgs),
}

#[derive(Debug, Clone, Args)]
pub struct NetworkSource {
    /// Network description in JSON.
    #[arg(long, value_name = "PATH", conflicts_with = "example")]
    pub network: Option<PathBuf>,
    /// Built-in network: butterfly, two_way or one_sender.
    #[arg(long, value_name = "NAME", value_parser = parse_example)]
    pub example: Option<BuiltinExample>,
}

fn parse_example(s: &str) -> Result<BuiltinExample, String> {
    s.parse().map_err(|e: crate::network::NetworkError| e.to_string())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct RatesArgs {
    #[command(flatten)]
    pub source: NetworkSource,
    /// Pair to check a rate choice for (1-based).
    #[arg(long, default_value_t = 1)]
    pub pair: usize,
    #[arg(long)]
    pub a: Option<usize>,
    #[arg(long = "aphase")]
    pub a_phase: Option<usize>,
    /// Plain text table unless set.
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

/// `auto` or a fixed extension degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AlphaChoice {
    Auto,
    Fixed(usize),
}

impl FromStr for AlphaChoice {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "auto" {
            return Ok(AlphaChoice::Auto);
        }
        match s.parse::<usize>() {
            Ok(a) if a > 0 => Ok(AlphaChoice::Fixed(a)),
            _ => Err(format!("expected a positive integer or \"auto\", got {s:?}")),
        }
    }
}

impl fmt::Display for AlphaChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlphaChoice::Auto => f.write_str("auto"),
            AlphaChoice::Fixed(a) => write!(f, "{a}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InterferenceArg {
    Zero,
    Uniform,
    Fixed(PathBuf),
}

impl FromStr for InterferenceArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "zero" => Ok(InterferenceArg::Zero),
            "uniform" => Ok(InterferenceArg::Uniform),
            _ => match s.strip_prefix("fixed:") {
                Some(path) if !path.is_empty() => Ok(InterferenceArg::Fixed(path.into())),
                _ => Err(format!("expected zero, uniform or fixed:PATH, got {s:?}")),
            },
        }
    }
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub source: NetworkSource,
    /// Pair to simulate (1-based).
    #[arg(long, default_value_t = 1)]
    pub pair: usize,
    #[arg(long)]
    pub a: usize,
    #[arg(long = "aphase", default_value_t = 0)]
    pub a_phase: usize,
    /// Block length over the network field.
    #[arg(long)]
    pub n: usize,
    /// Extension degree, or `auto` to derive it from `n`.
    #[arg(long, default_value = "auto")]
    pub alpha: AlphaChoice,
    #[arg(long, default_value_t = 1000)]
    pub trials: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// zero, uniform or fixed:PATH (a JSON matrix over the extension field).
    #[arg(long, default_value = "uniform")]
    pub interference: InterferenceArg,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// Worker threads; all cores when unset.
    #[arg(long)]
    pub jobs: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ParamsMode {
    /// Extension degree and padded block length for the code.
    Qprime,
    /// Schedule for the secret-sharing front end.
    Theorem2,
}

#[derive(Debug, Args)]
pub struct ParamsArgs {
    #[arg(value_enum)]
    pub mode: ParamsMode,
    #[arg(long)]
    pub n: u64,
    #[arg(long)]
    pub q: u64,
    #[arg(long)]
    pub m: usize,
    #[arg(long)]
    pub a: usize,
    #[arg(long = "aphase", default_value_t = 0)]
    pub a_phase: usize,
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    /// Node actions on phase-basis states.
    Lemma1,
    /// Full simulation of a network against its bit and phase transfers.
    Shadow,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    #[arg(long, value_enum, default_value = "lemma1")]
    pub suite: Suite,
    /// Field order (lemma1 suite).
    #[arg(long, default_value_t = 2)]
    pub q: u64,
    /// Register rows (lemma1 suite).
    #[arg(long, default_value_t = 1)]
    pub m: usize,
    /// Register columns.
    #[arg(long, default_value_t = 1)]
    pub n: usize,
    /// Network for the shadow suite; butterfly when unset.
    #[command(flatten)]
    pub source: NetworkSource,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LemmaKind {
    /// Random subspace avoiding a fixed one.
    #[value(name = "3")]
    Subspace,
    /// Random wide matrix having full row rank.
    #[value(name = "4")]
    FullRank,
    /// Scrambler key columns annihilating a fixed vector.
    #[value(name = "5")]
    Scrambler,
}

#[derive(Debug, Args)]
pub struct LemmasArgs {
    #[arg(value_enum)]
    pub which: LemmaKind,
    /// Field order.
    #[arg(long)]
    pub q: u64,
    #[arg(long)]
    pub da: Option<usize>,
    #[arg(long)]
    pub db: Option<usize>,
    #[arg(long)]
    pub dc: Option<usize>,
    #[arg(long)]
    pub d: Option<usize>,
    #[arg(long)]
    pub dp: Option<usize>,
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long = "n-prime")]
    pub n_prime: Option<usize>,
    /// Enumerate every matrix instead of sampling (lemmas 3 and 4).
    #[arg(long)]
    pub exhaustive: bool,
    /// Samples, or draws of `V` for lemma 5.
    #[arg(long, default_value_t = 10_000)]
    pub trials: u64,
    #[arg(long = "x-samples", default_value_t = 50)]
    pub x_samples: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VectorArgs {
    /// Base field order.
    #[arg(long)]
    pub q: u64,
    #[arg(long)]
    pub alpha: usize,
    #[arg(long)]
    pub m: usize,
    #[arg(long)]
    pub a: usize,
    #[arg(long = "aphase", default_value_t = 0)]
    pub a_phase: usize,
    /// Block length over the base field; a multiple of alpha.
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
}
