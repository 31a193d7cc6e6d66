use anyhow::Result;
use polex_core::dataset::{read_fragments, read_puzzle_record};
use polex_core::io;
use polex_core::solver::{beam_search, Assembly};

use crate::args::SolveArgs;
use crate::config::{resolve_seed, ParamFile, RunConfig};
use crate::store::{prepare, BandSet};

pub fn solve(args: &SolveArgs) -> Result<Assembly> {
    let mut params = ParamFile::load(args.params.as_deref())?;
    params.compat.seed = resolve_seed(args.seed, params.compat.seed)?;
    if let Some(b) = args.beam {
        params.solver.beam_width = b;
    }
    params.validate()?;
    let record = read_puzzle_record(&args.puzzle)?;
    let fragments = read_fragments(&args.puzzle, &record)?;
    let bands = BandSet::read(&args.bands)?.load(&args.bands, &fragments)?;
    let prepared = prepare(&fragments, bands, &params.geometry)?;
    let assembly = beam_search(&prepared, &params.compat, &params.solver)?;
    io::write_json(&args.out, &assembly)?;
    RunConfig::new("solve", args)?
        .seed(params.compat.seed)
        .params(&params)
        .write_beside(&args.out)?;
    Ok(assembly)
}
