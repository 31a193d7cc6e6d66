use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::puzzle::Puzzle;
use crate::error::Result;
use crate::geometry::{extract_contour, polygonize};
use crate::raster::LabelMap;

/// Tolerance factor of the polygon used to measure perimeters.
const PERIMETER_ALPHA: f64 = 0.005;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FragmentStats {
    pub id: u32,
    pub area: usize,
    /// Perimeter (pixels) of the polygonized unsmoothed boundary, image
    /// border segments included.
    pub perimeter: f64,
    pub neighbors: usize,
    /// The fragment's Voronoi region does not touch the image border.
    pub interior: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PuzzleStats {
    pub sites: usize,
    pub fragments: usize,
    pub erosion_rate: f64,
    pub mean_area: f64,
    pub mean_perimeter: f64,
    pub mean_neighbors: f64,
    /// `None` when every fragment touches the border.
    pub mean_interior_neighbors: Option<f64>,
    pub per_fragment: Vec<FragmentStats>,
}

fn border_labels(labels: &LabelMap) -> BTreeSet<u32> {
    let (w, h) = labels.dimensions();
    let mut s = BTreeSet::new();
    for x in 0..w {
        s.insert(labels.get(x, 0));
        s.insert(labels.get(x, h - 1));
    }
    for y in 0..h {
        s.insert(labels.get(0, y));
        s.insert(labels.get(w - 1, y));
    }
    s
}

fn mean(v: impl Iterator<Item = f64>) -> Option<f64> {
    let (s, n) = v.fold((0.0, 0usize), |(s, n), x| (s + x, n + 1));
    (n > 0).then(|| s / n as f64)
}

pub fn puzzle_stats(puzzle: &Puzzle) -> Result<PuzzleStats> {
    let border = border_labels(&puzzle.partition);
    let mut per_fragment = Vec::with_capacity(puzzle.fragments.len());
    for f in &puzzle.fragments {
        let contour = extract_contour(&f.mask, 0.0)?;
        let perimeter = polygonize(&contour, PERIMETER_ALPHA)
            .map(|p| p.perimeter)
            .unwrap_or_else(|_| contour.perimeter());
        let neighbors = puzzle
            .adjacency
            .iter()
            .filter(|(a, b)| *a == f.id || *b == f.id)
            .count();
        per_fragment.push(FragmentStats {
            id: f.id,
            area: f.area(),
            perimeter,
            neighbors,
            interior: !border.contains(&f.id),
        });
    }
    Ok(PuzzleStats {
        sites: puzzle.sites.len(),
        fragments: per_fragment.len(),
        erosion_rate: puzzle.spec.erosion_rate,
        mean_area: mean(per_fragment.iter().map(|s| s.area as f64)).unwrap_or(0.0),
        mean_perimeter: mean(per_fragment.iter().map(|s| s.perimeter)).unwrap_or(0.0),
        mean_neighbors: mean(per_fragment.iter().map(|s| s.neighbors as f64)).unwrap_or(0.0),
        mean_interior_neighbors: mean(per_fragment.iter().filter(|s| s.interior).map(|s| s.neighbors as f64)),
        per_fragment,
    })
}
