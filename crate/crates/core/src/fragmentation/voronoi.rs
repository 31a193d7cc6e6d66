use crate::geometry::Point;
use crate::raster::LabelMap;

const BLOCK: u32 = 16;

#[inline]
fn pixel_center(x: u32, y: u32) -> Point {
    Point::new(x as f64 + 0.5, y as f64 + 0.5)
}

/// Labels each pixel with the index of its nearest site (Euclidean distance
/// from the pixel center `(x + 0.5, y + 0.5)`); ties go to the lowest index.
///
/// Work is bucketed in 16×16 blocks: a site can own a pixel of a block only
/// if its distance to the block is at most the best worst-case distance of
/// any site, so each block scans a short exact candidate list.
pub fn voronoi_partition(sites: &[Point], extent: (u32, u32)) -> LabelMap {
    let (w, h) = extent;
    let mut labels = LabelMap::new(w, h, 0).expect("positive extent");
    let mut candidates: Vec<usize> = Vec::with_capacity(sites.len());
    for by in (0..h).step_by(BLOCK as usize) {
        for bx in (0..w).step_by(BLOCK as usize) {
            let x1 = (bx + BLOCK).min(w) - 1;
            let y1 = (by + BLOCK).min(h) - 1;
            let (lo, hi) = (pixel_center(bx, by), pixel_center(x1, y1));
            let min_d2 = |s: &Point| {
                let dx = (lo.x - s.x).max(0.0).max(s.x - hi.x);
                let dy = (lo.y - s.y).max(0.0).max(s.y - hi.y);
                dx * dx + dy * dy
            };
            let max_d2 = |s: &Point| {
                let dx = (s.x - lo.x).abs().max((s.x - hi.x).abs());
                let dy = (s.y - lo.y).abs().max((s.y - hi.y).abs());
                dx * dx + dy * dy
            };
            let bound = sites.iter().map(max_d2).fold(f64::INFINITY, f64::min);
            candidates.clear();
            candidates.extend((0..sites.len()).filter(|&i| min_d2(&sites[i]) <= bound));
            for y in by..=y1 {
                for x in bx..=x1 {
                    let p = pixel_center(x, y);
                    let mut best = (f64::INFINITY, 0usize);
                    for &i in &candidates {
                        let d = (sites[i] - p).norm_sq();
                        if d < best.0 {
                            best = (d, i);
                        }
                    }
                    labels.set(x, y, best.1 as u32);
                }
            }
        }
    }
    labels
}
