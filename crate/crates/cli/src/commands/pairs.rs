use anyhow::Result;
use polex_core::dataset::{read_fragments, read_puzzle_record};
use polex_core::io;

use crate::args::PairsArgs;
use crate::config::RunConfig;
use crate::store::{ground_truth_pairs, pair_dir_name, BandSet, PairDir, PAIRS_FILE};

/// Writes `pairs.json` and one pair directory per ground-truth neighbor pair.
pub fn pairs(args: &PairsArgs) -> Result<usize> {
    let record = read_puzzle_record(&args.puzzle)?;
    let fragments = read_fragments(&args.puzzle, &record)?;
    let bands = match &args.bands {
        Some(dir) => {
            let set = BandSet::read(dir)?;
            let loaded = set.load(dir, &fragments)?;
            Some((set.n_px, loaded))
        }
        None => None,
    };
    let pairs = ground_truth_pairs(&record)?;
    let config = RunConfig::new("pairs", args)?;
    config.write(&args.out)?;
    io::write_json(&args.out.join(PAIRS_FILE), &pairs)?;
    let index = |id: u32| fragments.iter().position(|f| f.id == id).expect("recorded fragment");
    for p in &pairs {
        let dir = args.out.join(pair_dir_name(p));
        let (ti, si) = (index(p.target), index(p.source));
        PairDir::write(&dir, p, &fragments[ti], &fragments[si])?;
        if let Some((n_px, bands)) = &bands {
            BandSet::write(&dir, *n_px, &[bands[ti].clone(), bands[si].clone()])?;
        }
        config.write(&dir)?;
    }
    Ok(pairs.len())
}
