use std::collections::BTreeMap;

use image::{Rgba, RgbaImage};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::delaunay::{image_adjacency, SitePair};
use super::erosion::erode_partition;
use super::noise::{perlin_field, NoiseParams};
use super::sites::sample_sites;
use super::voronoi::voronoi_partition;
use crate::error::{Error, Result};
use crate::geometry::{Point, RigidTransform2D};
use crate::raster::{BinaryMask, LabelMap, PixelBox};

/// Fragments (and fragment components) below this many pixels are culled.
pub const DEFAULT_MIN_FRAGMENT_PX: usize = 50;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PuzzleSpec {
    pub width: u32,
    pub height: u32,
    /// Number of Voronoi sites `N`.
    pub fragments: usize,
    /// Erosion radius in pixels where the noise field reaches 1.
    pub erosion_rate: f64,
    #[serde(default)]
    pub noise: NoiseParams,
    pub seed: u64,
    #[serde(default = "default_min_fragment_px")]
    pub min_fragment_px: usize,
}

fn default_min_fragment_px() -> usize {
    DEFAULT_MIN_FRAGMENT_PX
}

impl PuzzleSpec {
    pub fn new(width: u32, height: u32, fragments: usize, erosion_rate: f64, seed: u64) -> Self {
        Self {
            width,
            height,
            fragments,
            erosion_rate,
            noise: NoiseParams::default(),
            seed,
            min_fragment_px: DEFAULT_MIN_FRAGMENT_PX,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.width == 0 || self.height == 0 {
            return Err(Error::invalid("puzzle dimensions must be positive"));
        }
        if self.fragments < 2 {
            return Err(Error::invalid("a puzzle needs at least two fragments"));
        }
        if !(self.erosion_rate >= 0.0) {
            return Err(Error::invalid("erosion_rate must be non-negative"));
        }
        self.noise.validate()
    }
}

/// A puzzle piece: tight crop of mask and pixels plus the pose that places
/// the crop back into the puzzle frame.
#[derive(Debug, Clone, PartialEq)]
pub struct Fragment {
    pub id: u32,
    pub mask: BinaryMask,
    /// RGBA crop; alpha is 255 on the mask and 0 elsewhere.
    pub image: RgbaImage,
    pub pose: RigidTransform2D,
}

impl Fragment {
    pub fn area(&self) -> usize {
        self.mask.count()
    }

    /// Local-frame centroid of the mask.
    pub fn centroid(&self) -> Point {
        self.mask.centroid().expect("fragment masks are non-empty")
    }
}

#[derive(Debug, Clone)]
pub struct Puzzle {
    pub spec: PuzzleSpec,
    /// Unmodified base image.
    pub image: RgbaImage,
    /// Sites in continuous pixel coordinates (pixel `(x, y)` covers `[x, x+1) × [y, y+1)`).
    pub sites: Vec<Point>,
    /// Voronoi labels before erosion.
    pub partition: LabelMap,
    /// Labels after erosion and culling.
    pub labels: LabelMap,
    pub fragments: Vec<Fragment>,
    /// Neighbor pairs among surviving fragments, by fragment id.
    pub adjacency: Vec<SitePair>,
}

/// Ground-truth neighbor pair. `relative` maps source-local coordinates into
/// the target's local frame.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FragmentPair {
    pub target: u32,
    pub source: u32,
    pub relative: RigidTransform2D,
}

impl Puzzle {
    pub fn fragment(&self, id: u32) -> Option<&Fragment> {
        self.fragments.iter().find(|f| f.id == id)
    }

    /// Base image with eroded pixels made transparent.
    pub fn eroded_image(&self) -> RgbaImage {
        RgbaImage::from_fn(self.image.width(), self.image.height(), |x, y| {
            if self.labels.get(x, y) == LabelMap::BACKGROUND {
                Rgba([0, 0, 0, 0])
            } else {
                *self.image.get_pixel(x, y)
            }
        })
    }
}

/// Full generation pipeline for one puzzle over `image`.
pub fn generate_puzzle(spec: &PuzzleSpec, image: &RgbaImage) -> Result<Puzzle> {
    spec.validate()?;
    let extent = (spec.width, spec.height);
    if image.dimensions() != extent {
        return Err(Error::DimensionMismatch {
            expected: extent,
            actual: image.dimensions(),
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let sites = sample_sites(spec.fragments, extent, &mut rng)?;
    let partition = voronoi_partition(&sites, extent);
    let adjacency = image_adjacency(&sites, extent)?;
    let eroded = if spec.erosion_rate > 0.0 {
        rng.set_stream(1);
        let noise = perlin_field(extent, &spec.noise, &mut rng)?;
        erode_partition(&partition, &noise, spec.erosion_rate)?
    } else {
        partition.clone()
    };
    let (fragments, labels) = extract_fragments(image, &eroded, spec.min_fragment_px)?;
    let alive: std::collections::BTreeSet<u32> = fragments.iter().map(|f| f.id).collect();
    let adjacency = adjacency
        .into_iter()
        .filter(|(a, b)| alive.contains(a) && alive.contains(b))
        .collect();
    Ok(Puzzle {
        spec: spec.clone(),
        image: image.clone(),
        sites,
        partition,
        labels,
        fragments,
        adjacency,
    })
}

/// Cuts one fragment per surviving label. Components smaller than `min_px`
/// are removed, as are whole fragments left with fewer than `min_px`
/// pixels; the returned label map reflects the culling.
pub fn extract_fragments(image: &RgbaImage, labels: &LabelMap, min_px: usize) -> Result<(Vec<Fragment>, LabelMap)> {
    if image.dimensions() != labels.dimensions() {
        return Err(Error::DimensionMismatch {
            expected: labels.dimensions(),
            actual: image.dimensions(),
        });
    }
    if labels.count_labeled() == 0 {
        return Err(Error::EmptyLabelMap);
    }
    let mut boxes: BTreeMap<u32, PixelBox> = BTreeMap::new();
    for y in 0..labels.height() {
        for x in 0..labels.width() {
            let l = labels.get(x, y);
            if l == LabelMap::BACKGROUND {
                continue;
            }
            let (x, y) = (x as i64, y as i64);
            boxes
                .entry(l)
                .and_modify(|b| {
                    b.x0 = b.x0.min(x);
                    b.y0 = b.y0.min(y);
                    b.x1 = b.x1.max(x);
                    b.y1 = b.y1.max(y);
                })
                .or_insert(PixelBox {
                    x0: x,
                    y0: y,
                    x1: x,
                    y1: y,
                });
        }
    }
    let mut cleaned = labels.clone();
    let mut fragments = Vec::new();
    for (&id, b) in &boxes {
        let raw = BinaryMask::from_fn(b.width() as u32, b.height() as u32, |x, y| {
            labels.get(b.x0 as u32 + x, b.y0 as u32 + y) == id
        })?;
        let kept = raw.cull_small_components(min_px);
        let drop_all = kept.count() < min_px;
        for (x, y) in raw.iter_set() {
            if drop_all || !kept.get(x as i64, y as i64) {
                cleaned.set(b.x0 as u32 + x, b.y0 as u32 + y, LabelMap::BACKGROUND);
            }
        }
        if drop_all || kept.is_empty() {
            continue;
        }
        let tight = kept.bbox().expect("non-empty");
        let mask = kept.crop(tight)?;
        let (ox, oy) = (b.x0 + tight.x0, b.y0 + tight.y0);
        let crop = RgbaImage::from_fn(mask.width(), mask.height(), |x, y| {
            if mask.get(x as i64, y as i64) {
                *image.get_pixel(ox as u32 + x, oy as u32 + y)
            } else {
                Rgba([0, 0, 0, 0])
            }
        });
        let center = mask.centroid().expect("non-empty");
        fragments.push(Fragment {
            id,
            mask,
            image: crop,
            pose: RigidTransform2D::new(0.0, ox as f64, oy as f64, center),
        });
    }
    if fragments.is_empty() {
        return Err(Error::EmptyLabelMap);
    }
    Ok((fragments, cleaned))
}

/// Emits every adjacent surviving pair with the lower id as target.
pub fn extract_pairs(puzzle: &Puzzle) -> Vec<FragmentPair> {
    puzzle
        .adjacency
        .iter()
        .filter_map(|&(a, b)| {
            let (t, s) = (puzzle.fragment(a)?, puzzle.fragment(b)?);
            Some(FragmentPair {
                target: a,
                source: b,
                relative: t.pose.inverse().compose(&s.pose),
            })
        })
        .collect()
}

/// Pastes every fragment back by its pose onto a transparent canvas.
pub fn paste_fragments(fragments: &[Fragment], extent: (u32, u32)) -> RgbaImage {
    let mut canvas = RgbaImage::from_pixel(extent.0, extent.1, Rgba([0, 0, 0, 0]));
    for f in fragments {
        for (x, y) in f.mask.iter_set() {
            let p = f.pose.apply(Point::new(x as f64, y as f64));
            let (px, py) = (p.x.round() as i64, p.y.round() as i64);
            if px >= 0 && py >= 0 && (px as u32) < extent.0 && (py as u32) < extent.1 {
                canvas.put_pixel(px as u32, py as u32, *f.image.get_pixel(x, y));
            }
        }
    }
    canvas
}
