use anyhow::{Context, Result};
use polex_core::dataset::{read_fragments, read_puzzle_record, IMAGE_FILE};
use polex_core::extrapolation::{effective_n_px, native_band, oracle_extrapolate, run_adapter_jobs, AdapterCommand};
use polex_core::io;
use rayon::prelude::*;

use crate::args::{ExtrapolateArgs, ExtrapolationMode};
use crate::config::{resolve_seed, RunConfig};
use crate::store::BandSet;

pub const ADAPTER_DIR: &str = "adapter";
pub const ADAPTER_REPORT: &str = "adapter_report.json";

/// Writes `band_<id>.png` for every fragment plus `bands.json`.
pub fn extrapolate(args: &ExtrapolateArgs) -> Result<usize> {
    let n_px = effective_n_px(args.n_px)?;
    let seed = resolve_seed(Some(args.seed), 0)?;
    let out = args.out.clone().unwrap_or_else(|| args.puzzle.join("bands"));
    let record = read_puzzle_record(&args.puzzle)?;
    let fragments = read_fragments(&args.puzzle, &record)?;
    let bands = match args.mode {
        ExtrapolationMode::Native => fragments
            .par_iter()
            .map(|f| native_band(f, n_px))
            .collect::<polex_core::Result<Vec<_>>>()?,
        ExtrapolationMode::Oracle => {
            let image = io::read_rgba(&args.puzzle.join(IMAGE_FILE))?;
            fragments
                .par_iter()
                .map(|f| oracle_extrapolate(f, &image, n_px))
                .collect::<polex_core::Result<Vec<_>>>()?
        }
        ExtrapolationMode::Adapter => {
            let command = args.adapter.as_ref().map(|program| AdapterCommand {
                program: program.clone(),
                args: args.adapter_args.clone(),
            });
            let (bands, report) = run_adapter_jobs(&fragments, n_px, &out.join(ADAPTER_DIR), command.as_ref(), seed)
                .context("adapter extrapolation")?;
            io::write_json(&out.join(ADAPTER_REPORT), &report)?;
            bands
        }
    };
    BandSet::write(&out, n_px, &bands)?;
    RunConfig::new("extrapolate", args)?.seed(seed).write(&out)?;
    Ok(bands.len())
}
