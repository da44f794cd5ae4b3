use std::path::PathBuf;

use clap::builder::TypedValueParser;
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "quantumness", version, about = "Commutator quantumness, interferometry and discord witnessing")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Q(rho_a, rho_b) for two states
    Witness(WitnessArgs),
    /// Simulate one controlled-U interference experiment and fit its fringe
    Interfere(InterfereArgs),
    /// Search local projective measurements for non-commuting conditional states
    Discord(DiscordArgs),
    /// Evaluate the witness on a built-in example state
    Example(ExampleArgs),
    /// Write a seeded random density matrix
    RandomState(RandomStateArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Direct,
    Trace,
    Interfere,
}

#[derive(Debug, Args)]
pub struct WitnessArgs {
    #[arg(long)]
    pub state_a: PathBuf,
    #[arg(long)]
    pub state_b: PathBuf,
    #[arg(long, value_enum, default_value = "direct")]
    pub method: MethodArg,
    /// Shots per phase; switches the interferometric method to sampled mode
    #[arg(long)]
    pub shots: Option<u64>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CascadeArg {
    U1,
    U2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Exact,
    Sampled,
}

#[derive(Debug, Args)]
pub struct InterfereArgs {
    #[arg(long, value_enum)]
    pub u: CascadeArg,
    #[arg(long)]
    pub state_a: PathBuf,
    #[arg(long)]
    pub state_b: PathBuf,
    /// Number of equally spaced phase settings in [0, 2 pi)
    #[arg(long, default_value_t = 8)]
    pub phases: usize,
    #[arg(long, value_enum, default_value = "exact")]
    pub mode: ModeArg,
    #[arg(long)]
    pub shots: Option<u64>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// CSV destination; an empty path is accepted here and fails at write time
    #[arg(long, value_parser = clap::builder::OsStringValueParser::new().map(PathBuf::from))]
    pub fringes_out: PathBuf,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct DiscordArgs {
    #[arg(long)]
    pub state: PathBuf,
    #[arg(long, num_args = 2, value_names = ["DA", "DB"], required = true)]
    pub dims: Vec<usize>,
    #[arg(long, default_value_t = 12)]
    pub grid: usize,
    #[arg(long, default_value_t = 5)]
    pub starts: usize,
    #[arg(long, default_value_t = 2000)]
    pub max_evals: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ExampleArg {
    Epr,
    Separable,
}

#[derive(Debug, Args)]
pub struct ExampleArgs {
    #[arg(value_enum)]
    pub which: ExampleArg,
    #[arg(long, allow_negative_numbers = true)]
    pub phi: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub theta: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct RandomStateArgs {
    #[arg(long)]
    pub dim: usize,
    #[arg(long)]
    pub rank: usize,
    #[arg(long)]
    pub seed: u64,
    #[arg(long)]
    pub out: PathBuf,
}
