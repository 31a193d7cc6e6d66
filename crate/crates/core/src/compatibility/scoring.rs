use rand::Rng;

use super::params::CompatParams;
use super::region::AlignedBands;
use crate::color::{max_lab_distance, Lab};

/// Corresponding pixels of one patch in the shared region.
#[derive(Debug, Clone, PartialEq)]
pub struct PatchPair {
    /// Anchor (patch center) on the target canvas.
    pub anchor: (i64, i64),
    pub side: u32,
    /// Target-canvas pixels of `Ω_i`.
    pub pixels: Vec<(u32, u32)>,
    pub target: Vec<Lab>,
    pub source: Vec<Lab>,
}

/// Patches centered on a stride grid over the region's bounding box (grid
/// points sit at cell centers, `s / 2` in from the box corner, or mid-box
/// when the box is narrower than that), each
/// with an independent random side in `[patch_min, patch_max]`, clipped to
/// the region. Returns `None` when the region has fewer than `min_overlap`
/// pixels.
pub fn sample_patch_pairs<R: Rng + ?Sized>(
    aligned: &AlignedBands,
    params: &CompatParams,
    rng: &mut R,
) -> Option<Vec<PatchPair>> {
    let area = aligned.area();
    if area == 0 || area < params.min_overlap {
        return None;
    }
    let bbox = aligned.region.bbox()?;
    let stride = params.stride as i64;
    let mut out = Vec::new();
    let start = |lo: i64, hi: i64| (lo + stride / 2).min((lo + hi + 1) / 2);
    let mut ay = start(bbox.y0, bbox.y1);
    while ay <= bbox.y1 {
        let mut ax = start(bbox.x0, bbox.x1);
        while ax <= bbox.x1 {
            let side = rng.gen_range(params.patch_min..=params.patch_max);
            let lo = side as i64 / 2;
            let (x0, y0) = (ax - lo, ay - lo);
            let mut pair = PatchPair {
                anchor: (ax, ay),
                side,
                pixels: Vec::new(),
                target: Vec::new(),
                source: Vec::new(),
            };
            for y in y0.max(bbox.y0)..(y0 + side as i64).min(bbox.y1 + 1) {
                for x in x0.max(bbox.x0)..(x0 + side as i64).min(bbox.x1 + 1) {
                    if aligned.region.get(x, y) {
                        let i = aligned.index(x as u32, y as u32);
                        pair.pixels.push((x as u32, y as u32));
                        pair.target.push(aligned.target[i]);
                        pair.source.push(aligned.source[i]);
                    }
                }
            }
            if !pair.pixels.is_empty() {
                out.push(pair);
            }
            ax += stride;
        }
        ay += stride;
    }
    Some(out)
}

/// Mean CIE76 distance over the patch.
pub fn patch_dissimilarity(pair: &PatchPair) -> f64 {
    let n = pair.target.len();
    if n == 0 {
        return 0.0;
    }
    let sum: f64 = pair.target.iter().zip(&pair.source).map(|(a, b)| a.delta_e(*b)).sum();
    sum / n as f64
}

/// Normalized p-mean of patch distances, amplified by `lambda` when more
/// than `lambda_fraction` of the patches exceed `lambda_threshold`. An empty
/// list scores 1.0.
pub fn aggregate_score(delta_e: &[f64], params: &CompatParams) -> f64 {
    if delta_e.is_empty() {
        return 1.0;
    }
    let d_max = max_lab_distance();
    let n = delta_e.len() as f64;
    let p = params.p_norm;
    let base = (delta_e.iter().map(|d| d.powf(p)).sum::<f64>() / n).powf(1.0 / p) / d_max;
    let exceptions = delta_e.iter().filter(|&&d| d / d_max > params.lambda_threshold).count();
    if exceptions as f64 / n > params.lambda_fraction {
        (params.lambda * base).min(params.lambda)
    } else {
        base
    }
}
