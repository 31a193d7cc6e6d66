//! Command-line front-end: dataset generation, extrapolation, pairwise
//! compatibility, assembly, evaluation, statistics and curve sweeps.

pub mod args;
pub mod commands;
pub mod config;
pub mod plot;
pub mod store;

pub use args::{Cli, Command};

/// Runs one parsed command.
pub fn run(cli: &Cli) -> anyhow::Result<()> {
    match &cli.command {
        Command::Generate(a) => {
            let dirs = commands::generate(a)?;
            log::info!("generated {} puzzle(s)", dirs.len());
        }
        Command::Pairs(a) => {
            let n = commands::pairs(a)?;
            log::info!("wrote {n} pair(s)");
        }
        Command::Extrapolate(a) => {
            let n = commands::extrapolate(a)?;
            log::info!("wrote {n} band(s)");
        }
        Command::Compat(a) => {
            let r = commands::compat(a)?;
            log::info!("kept {} configuration(s)", r.len());
        }
        Command::Solve(a) => {
            let s = commands::solve(a)?;
            log::info!("placed {} fragment(s), score {}", s.poses.len(), s.score);
        }
        Command::Eval(a) => {
            let s = commands::eval(a)?;
            log::info!("evaluated {} row(s)", s.rows.len());
        }
        Command::Stats(a) => {
            let r = commands::stats(a)?;
            log::info!("{} fragment count(s)", r.len());
        }
        Command::Sweep(a) => {
            let r = commands::sweep(a)?;
            log::info!("{} curve point(s)", r.curves.len());
        }
    }
    Ok(())
}
