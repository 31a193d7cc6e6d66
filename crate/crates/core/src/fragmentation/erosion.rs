use super::noise::NoiseField;
use crate::error::{Error, Result};
use crate::raster::{BinaryMask, LabelMap};

/// Pixels with a 4-neighbor carrying a different label.
pub fn boundary_map(labels: &LabelMap) -> BinaryMask {
    let (w, h) = labels.dimensions();
    BinaryMask::from_fn(w, h, |x, y| {
        let l = labels.get(x, y);
        (x > 0 && labels.get(x - 1, y) != l)
            || (x + 1 < w && labels.get(x + 1, y) != l)
            || (y > 0 && labels.get(x, y - 1) != l)
            || (y + 1 < h && labels.get(x, y + 1) != l)
    })
    .expect("positive extent")
}

/// Deletes every pixel strictly closer than `noise(b) · erosion_rate` to some
/// boundary pixel `b` of the input partition. Radii come from the original
/// boundary, so the result does not depend on visiting order.
pub fn erode_partition(labels: &LabelMap, noise: &NoiseField, erosion_rate: f64) -> Result<LabelMap> {
    if !(erosion_rate >= 0.0) {
        return Err(Error::invalid("erosion_rate must be non-negative"));
    }
    let (w, h) = labels.dimensions();
    if (noise.width(), noise.height()) != (w, h) {
        return Err(Error::DimensionMismatch {
            expected: (w, h),
            actual: (noise.width(), noise.height()),
        });
    }
    let mut out = labels.clone();
    if erosion_rate == 0.0 {
        return Ok(out);
    }
    let edges = boundary_map(labels);
    for (bx, by) in edges.iter_set() {
        let r = noise.get(bx, by) * erosion_rate;
        if r <= 0.0 {
            continue;
        }
        let r2 = r * r;
        let ri = r.ceil() as i64;
        let (bx, by) = (bx as i64, by as i64);
        for y in (by - ri).max(0)..=(by + ri).min(h as i64 - 1) {
            let dy = (y - by) as f64;
            for x in (bx - ri).max(0)..=(bx + ri).min(w as i64 - 1) {
                let dx = (x - bx) as f64;
                if dx * dx + dy * dy < r2 {
                    out.set(x as u32, y as u32, LabelMap::BACKGROUND);
                }
            }
        }
    }
    Ok(out)
}
