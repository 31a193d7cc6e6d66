mod compat;
mod eval;
mod extrapolate;
mod generate;
mod pairs;
mod solve;
mod stats;
mod sweep;

pub use compat::compat;
pub use eval::{eval, EvalSummary, METRICS_HEADER, NEIGHBORS_FILE};
pub use extrapolate::extrapolate;
pub use generate::{generate, puzzle_dir_name};
pub use pairs::pairs;
pub use solve::solve;
pub use stats::{stats, StatsRow, STATS_FILE, STATS_PLOT};
pub use sweep::{sweep, CurveRow, SweepResult, CANDIDATES_FILE, CURVES_FILE, CURVES_PLOT};
