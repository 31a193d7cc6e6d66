use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Debug, Parser)]
#[command(
    name = "polex",
    version,
    about = "Puzzle generation, fragment compatibility and assembly"
)]
pub struct Cli {
    /// Increase log verbosity (-v info, -vv debug).
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    pub verbose: u8,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate eroded Voronoi puzzles.
    Generate(GenerateArgs),
    /// Export ground-truth neighbor pairs as pair directories.
    Pairs(PairsArgs),
    /// Compute extrapolated bands for every fragment of a puzzle.
    Extrapolate(ExtrapolateArgs),
    /// Rank alignment configurations for one pair.
    Compat(CompatArgs),
    /// Assemble a puzzle with beam search.
    Solve(SolveArgs),
    /// Evaluate a ranking or an assembly against ground truth.
    Eval(EvalArgs),
    /// Fragment statistics per fragment count over a dataset.
    Stats(StatsArgs),
    /// Best-of-n curves over γ for a dataset with bands.
    Sweep(SweepArgs),
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct GenerateArgs {
    /// Directory of PNG base images, used in name order. Procedural images
    /// are drawn when omitted.
    #[arg(long)]
    pub images: Option<PathBuf>,
    /// Voronoi sites per puzzle.
    #[arg(long)]
    pub n: usize,
    /// Largest erosion radius in pixels.
    #[arg(long, default_value_t = 0.0)]
    pub erosion: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Number of puzzles; puzzle k uses seed + k.
    #[arg(long, default_value_t = 1)]
    pub count: usize,
    /// Procedural image width.
    #[arg(long, default_value_t = 1000)]
    pub width: u32,
    /// Procedural image height.
    #[arg(long, default_value_t = 1000)]
    pub height: u32,
    #[arg(long, default_value_t = polex_core::fragmentation::DEFAULT_MIN_FRAGMENT_PX)]
    pub min_fragment_px: usize,
    #[arg(long, default_value_t = 4.0)]
    pub noise_frequency: f64,
    #[arg(long, default_value_t = 4)]
    pub noise_octaves: u32,
    #[arg(long, default_value_t = 0.5)]
    pub noise_persistence: f64,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct PairsArgs {
    #[arg(long)]
    pub puzzle: PathBuf,
    /// Band directory whose bands are copied into each pair directory.
    #[arg(long)]
    pub bands: Option<PathBuf>,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ExtrapolationMode {
    Native,
    Adapter,
    Oracle,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ExtrapolateArgs {
    #[arg(long)]
    pub puzzle: PathBuf,
    #[arg(long, value_enum, default_value_t = ExtrapolationMode::Native)]
    pub mode: ExtrapolationMode,
    /// Dilation kernel size; even values are rounded up to odd.
    #[arg(long, default_value_t = polex_core::extrapolation::DEFAULT_N_PX)]
    pub n_px: u32,
    /// Defaults to `<puzzle>/bands`.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// External extrapolation program for adapter mode.
    #[arg(long)]
    pub adapter: Option<String>,
    /// Extra argument passed to the adapter program (repeatable).
    #[arg(long = "adapter-arg", allow_hyphen_values = true)]
    pub adapter_args: Vec<String>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct CompatArgs {
    /// Pair directory written by `pairs`.
    #[arg(long)]
    pub pair: PathBuf,
    /// Band directory; defaults to the pair directory.
    #[arg(long)]
    pub bands: Option<PathBuf>,
    #[arg(long)]
    pub params: Option<PathBuf>,
    /// Keep only the best N configurations.
    #[arg(long)]
    pub top: Option<usize>,
    /// Patch sampling seed; overrides the parameter file.
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct SolveArgs {
    #[arg(long)]
    pub puzzle: PathBuf,
    #[arg(long)]
    pub bands: PathBuf,
    /// Beam width; overrides the parameter file.
    #[arg(long)]
    pub beam: Option<usize>,
    #[arg(long)]
    pub params: Option<PathBuf>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct EvalArgs {
    /// `ranking.json` or `assembly.json`.
    #[arg(long)]
    pub pred: PathBuf,
    /// `puzzle.json` of the ground-truth puzzle (or its directory).
    #[arg(long)]
    pub gt: PathBuf,
    /// Pair directory naming the ranked pair.
    #[arg(long)]
    pub pair: Option<PathBuf>,
    #[arg(long, requires = "source")]
    pub target: Option<u32>,
    #[arg(long, requires = "target")]
    pub source: Option<u32>,
    /// Contact threshold for neighbor precision/recall; defaults to 2g + 2.
    #[arg(long)]
    pub contact: Option<f64>,
    #[arg(long)]
    pub params: Option<PathBuf>,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct StatsArgs {
    /// Directory of puzzle directories.
    #[arg(long)]
    pub dataset: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct SweepArgs {
    /// Directory of puzzle directories, each holding a band subdirectory.
    #[arg(long)]
    pub dataset: PathBuf,
    /// Band subdirectory name inside each puzzle directory.
    #[arg(long, default_value = "bands")]
    pub bands: String,
    #[arg(long, value_delimiter = ',', default_values_t = vec![0.3, 0.5, 0.7])]
    pub gammas: Vec<f64>,
    #[arg(long, value_delimiter = ',', default_values_t = vec![1usize, 5, 10, 25])]
    pub top: Vec<usize>,
    #[arg(long)]
    pub params: Option<PathBuf>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub out: PathBuf,
}
