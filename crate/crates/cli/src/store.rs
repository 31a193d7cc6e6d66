//! Band directories, pair directories and dataset discovery.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use polex_core::compatibility::PreparedFragment;
use polex_core::dataset::{self, PUZZLE_FILE};
use polex_core::extrapolation::{read_band, write_band, ExtrapolatedBand, Provenance};
use polex_core::fragmentation::{Fragment, FragmentPair};
use polex_core::geometry::{GeometryParams, RigidTransform2D};
use polex_core::io;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub const BANDS_FILE: &str = "bands.json";
pub const PAIR_FILE: &str = "pair.json";
pub const PAIRS_FILE: &str = "pairs.json";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BandEntry {
    pub fragment: u32,
    pub provenance: Provenance,
}

/// Contents of `bands.json`; band images sit beside it as `band_<id>.png`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BandSet {
    pub n_px: u32,
    pub bands: Vec<BandEntry>,
}

impl BandSet {
    pub fn write(dir: &Path, n_px: u32, bands: &[ExtrapolatedBand]) -> Result<()> {
        io::ensure_dir(dir)?;
        for b in bands {
            write_band(dir, b)?;
        }
        let set = BandSet {
            n_px,
            bands: bands
                .iter()
                .map(|b| BandEntry {
                    fragment: b.fragment,
                    provenance: b.provenance,
                })
                .collect(),
        };
        io::write_json(&dir.join(BANDS_FILE), &set)?;
        Ok(())
    }

    pub fn read(dir: &Path) -> Result<Self> {
        Ok(io::read_json(&dir.join(BANDS_FILE))?)
    }

    /// Bands for `fragments`, in the same order; every fragment must have one.
    pub fn load(&self, dir: &Path, fragments: &[Fragment]) -> Result<Vec<ExtrapolatedBand>> {
        fragments
            .par_iter()
            .map(|f| {
                let entry = self
                    .bands
                    .iter()
                    .find(|e| e.fragment == f.id)
                    .ok_or_else(|| anyhow!("{}: no band for fragment {}", dir.display(), f.id))?;
                Ok(read_band(dir, f, self.n_px, entry.provenance)?)
            })
            .collect()
    }
}

/// Geometry and bands for each fragment, in input order.
pub fn prepare(
    fragments: &[Fragment],
    bands: Vec<ExtrapolatedBand>,
    geometry: &GeometryParams,
) -> Result<Vec<PreparedFragment>> {
    fragments
        .par_iter()
        .zip(bands)
        .map(|(f, b)| PreparedFragment::new(f, Some(b), geometry).with_context(|| format!("fragment {}", f.id)))
        .collect()
}

/// Ground-truth relative poses for every recorded neighbor pair, lower id as
/// target.
pub fn ground_truth_pairs(record: &dataset::PuzzleRecord) -> Result<Vec<FragmentPair>> {
    record
        .adjacency
        .iter()
        .map(|&(a, b)| {
            let (t, s) = (fragment_pose(record, a)?, fragment_pose(record, b)?);
            Ok(FragmentPair {
                target: a,
                source: b,
                relative: t.inverse().compose(&s),
            })
        })
        .collect()
}

pub fn fragment_pose(record: &dataset::PuzzleRecord, id: u32) -> Result<RigidTransform2D> {
    record
        .fragment(id)
        .map(|f| f.pose)
        .ok_or_else(|| anyhow!("puzzle has no fragment {id}"))
}

pub fn pair_dir_name(pair: &FragmentPair) -> String {
    format!("pair_{}_{}", pair.target, pair.source)
}

/// A pair directory: `pair.json` plus `fragments/<id>.png` for both ends.
pub struct PairDir {
    pub pair: FragmentPair,
    pub target: Fragment,
    pub source: Fragment,
}

impl PairDir {
    pub fn write(dir: &Path, pair: &FragmentPair, target: &Fragment, source: &Fragment) -> Result<()> {
        io::ensure_dir(&dir.join(dataset::FRAGMENTS_DIR))?;
        io::write_json(&dir.join(PAIR_FILE), pair)?;
        dataset::write_fragment(&dataset::fragment_path(dir, target.id), target)?;
        dataset::write_fragment(&dataset::fragment_path(dir, source.id), source)?;
        Ok(())
    }

    pub fn read(dir: &Path) -> Result<Self> {
        let pair: FragmentPair = io::read_json(&dir.join(PAIR_FILE))?;
        let load = |id| dataset::read_fragment(&dataset::fragment_path(dir, id), id, RigidTransform2D::identity());
        Ok(Self {
            target: load(pair.target)?,
            source: load(pair.source)?,
            pair,
        })
    }
}

/// `dir` itself when it holds a puzzle, else its immediate subdirectories
/// that do, in name order.
pub fn discover_puzzles(dir: &Path) -> Result<Vec<PathBuf>> {
    if dir.join(PUZZLE_FILE).is_file() {
        return Ok(vec![dir.to_path_buf()]);
    }
    let entries = fs::read_dir(dir).with_context(|| format!("reading {}", dir.display()))?;
    let mut found = Vec::new();
    for e in entries {
        let p = e?.path();
        if p.join(PUZZLE_FILE).is_file() {
            found.push(p);
        }
    }
    if found.is_empty() {
        bail!("{}: no puzzle directories found", dir.display());
    }
    found.sort();
    Ok(found)
}

/// The puzzle directory named by a `puzzle.json` path or by the directory
/// itself.
pub fn puzzle_dir(path: &Path) -> PathBuf {
    if path.is_dir() {
        path.to_path_buf()
    } else {
        crate::config::parent_dir(path).to_path_buf()
    }
}

/// Writes rows under `header` as CSV.
pub fn write_csv(path: &Path, header: &[&str], rows: &[Vec<String>]) -> Result<()> {
    io::ensure_parent(path)?;
    let mut w = csv::Writer::from_path(path).with_context(|| format!("writing {}", path.display()))?;
    w.write_record(header)?;
    for r in rows {
        w.write_record(r)?;
    }
    w.flush()?;
    Ok(())
}

/// Shortest round-trip decimal, empty for a missing value.
pub fn fmt_opt(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}
