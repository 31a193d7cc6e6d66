//! Puzzle directories: `puzzle.json`, `fragments/<id>.png` (alpha = mask),
//! `image.png` and `labels.png`.

use std::path::{Path, PathBuf};

use image::RgbaImage;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fragmentation::{voronoi_partition, Fragment, Puzzle, PuzzleSpec, SitePair};
use crate::geometry::{Point, RigidTransform2D};
use crate::io;
use crate::raster::BinaryMask;

pub const PUZZLE_FILE: &str = "puzzle.json";
pub const IMAGE_FILE: &str = "image.png";
pub const LABELS_FILE: &str = "labels.png";
pub const FRAGMENTS_DIR: &str = "fragments";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FragmentRecord {
    pub id: u32,
    pub area: usize,
    pub pose: RigidTransform2D,
}

/// Contents of `puzzle.json`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PuzzleRecord {
    pub spec: PuzzleSpec,
    pub sites: Vec<Point>,
    pub adjacency: Vec<SitePair>,
    pub fragments: Vec<FragmentRecord>,
}

impl PuzzleRecord {
    pub fn from_puzzle(p: &Puzzle) -> Self {
        Self {
            spec: p.spec.clone(),
            sites: p.sites.clone(),
            adjacency: p.adjacency.clone(),
            fragments: p
                .fragments
                .iter()
                .map(|f| FragmentRecord {
                    id: f.id,
                    area: f.area(),
                    pose: f.pose,
                })
                .collect(),
        }
    }

    pub fn fragment(&self, id: u32) -> Option<&FragmentRecord> {
        self.fragments.iter().find(|f| f.id == id)
    }
}

pub fn fragment_path(dir: &Path, id: u32) -> PathBuf {
    dir.join(FRAGMENTS_DIR).join(format!("{id}.png"))
}

pub fn write_fragment(path: &Path, fragment: &Fragment) -> Result<()> {
    io::write_rgba(path, &fragment.image)
}

/// Loads a fragment crop; pixels with non-zero alpha form the mask.
pub fn read_fragment(path: &Path, id: u32, pose: RigidTransform2D) -> Result<Fragment> {
    let img = io::read_rgba(path)?;
    let mask = BinaryMask::from_fn(img.width(), img.height(), |x, y| img.get_pixel(x, y).0[3] > 0)?;
    if mask.is_empty() {
        return Err(Error::invalid(format!(
            "{}: fragment has no opaque pixels",
            path.display()
        )));
    }
    let image = RgbaImage::from_fn(img.width(), img.height(), |x, y| {
        if mask.get(x as i64, y as i64) {
            *img.get_pixel(x, y)
        } else {
            image::Rgba([0, 0, 0, 0])
        }
    });
    Ok(Fragment { id, mask, image, pose })
}

pub fn write_puzzle(dir: &Path, puzzle: &Puzzle) -> Result<()> {
    io::ensure_dir(&dir.join(FRAGMENTS_DIR))?;
    io::write_json(&dir.join(PUZZLE_FILE), &PuzzleRecord::from_puzzle(puzzle))?;
    io::write_rgba(&dir.join(IMAGE_FILE), &puzzle.image)?;
    io::write_labels(&dir.join(LABELS_FILE), &puzzle.labels)?;
    for f in &puzzle.fragments {
        write_fragment(&fragment_path(dir, f.id), f)?;
    }
    Ok(())
}

pub fn read_puzzle_record(dir: &Path) -> Result<PuzzleRecord> {
    io::read_json(&dir.join(PUZZLE_FILE))
}

/// Fragments listed in `record`, checked against their recorded areas.
pub fn read_fragments(dir: &Path, record: &PuzzleRecord) -> Result<Vec<Fragment>> {
    record
        .fragments
        .iter()
        .map(|r| {
            let f = read_fragment(&fragment_path(dir, r.id), r.id, r.pose)?;
            if f.area() != r.area {
                return Err(Error::invalid(format!(
                    "fragment {} has {} pixels, puzzle.json records {}",
                    r.id,
                    f.area(),
                    r.area
                )));
            }
            Ok(f)
        })
        .collect()
}

/// Reloads a puzzle written by [`write_puzzle`]. The pre-erosion partition is
/// recomputed from the stored sites.
pub fn read_puzzle(dir: &Path) -> Result<Puzzle> {
    let record = read_puzzle_record(dir)?;
    record.spec.validate()?;
    let extent = (record.spec.width, record.spec.height);
    let image = io::read_rgba(&dir.join(IMAGE_FILE))?;
    let labels = io::read_labels(&dir.join(LABELS_FILE))?;
    for dims in [image.dimensions(), labels.dimensions()] {
        if dims != extent {
            return Err(Error::DimensionMismatch {
                expected: extent,
                actual: dims,
            });
        }
    }
    let fragments = read_fragments(dir, &record)?;
    Ok(Puzzle {
        partition: voronoi_partition(&record.sites, extent),
        spec: record.spec,
        image,
        sites: record.sites,
        labels,
        fragments,
        adjacency: record.adjacency,
    })
}
