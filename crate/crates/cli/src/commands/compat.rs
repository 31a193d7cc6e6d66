use anyhow::{bail, Result};
use polex_core::compatibility::{rank_candidates, RankingEntry};
use polex_core::io;

use crate::args::CompatArgs;
use crate::config::{resolve_seed, ParamFile, RunConfig};
use crate::store::{prepare, BandSet, PairDir};

/// Ranks every admissible configuration of one pair; writes the best `top`.
pub fn compat(args: &CompatArgs) -> Result<Vec<RankingEntry>> {
    let mut params = ParamFile::load(args.params.as_deref())?;
    params.compat.seed = resolve_seed(args.seed, params.compat.seed)?;
    if args.top == Some(0) {
        bail!("--top must be at least 1");
    }
    let pair = PairDir::read(&args.pair)?;
    let band_dir = args.bands.as_deref().unwrap_or(&args.pair);
    let fragments = [pair.target, pair.source];
    let bands = BandSet::read(band_dir)?.load(band_dir, &fragments)?;
    let prepared = prepare(&fragments, bands, &params.geometry)?;
    let ranked = rank_candidates(&prepared[0], &prepared[1], &params.compat)?;
    let keep = args.top.unwrap_or(ranked.len()).min(ranked.len());
    let entries: Vec<RankingEntry> = ranked[..keep].iter().map(RankingEntry::from).collect();
    io::write_json(&args.out, &entries)?;
    RunConfig::new("compat", args)?
        .seed(params.compat.seed)
        .params(&params)
        .write_beside(&args.out)?;
    Ok(entries)
}
