use image::{Rgba, RgbaImage};

use super::band::{band_from_extrapolation, BandGeometry, ExtrapolatedBand, Provenance};
use crate::error::Result;
use crate::fragmentation::Fragment;

const NEIGHBORS: [(i64, i64); 8] = [(-1, -1), (0, -1), (1, -1), (-1, 0), (1, 0), (-1, 1), (0, 1), (1, 1)];

/// Extends the fragment over its dilation ring by boundary color diffusion.
///
/// Sweeps the ring in layers: every still-unknown ring pixel with at least
/// one known 8-neighbor takes the mean color of those neighbors, using only
/// values known before the sweep. Returns the padded canvas with the
/// fragment unchanged, the ring opaque, and everything else transparent.
pub fn native_extrapolate(fragment: &Fragment, n_px: u32) -> Result<RgbaImage> {
    let geo = BandGeometry::new(&fragment.mask, n_px)?;
    Ok(diffuse(fragment, &geo))
}

fn diffuse(fragment: &Fragment, geo: &BandGeometry) -> RgbaImage {
    let (w, h) = geo.canvas_dimensions();
    let r = geo.radius;
    let idx = |x: i64, y: i64| (y * w as i64 + x) as usize;
    let mut known = vec![false; (w * h) as usize];
    let mut color = vec![[0.0f64; 3]; (w * h) as usize];
    for (x, y) in fragment.mask.iter_set() {
        let i = idx((x + r) as i64, (y + r) as i64);
        known[i] = true;
        let p = fragment.image.get_pixel(x, y).0;
        color[i] = [p[0] as f64, p[1] as f64, p[2] as f64];
    }
    let mut pending: Vec<(i64, i64)> = geo.band_mask().iter_set().map(|(x, y)| (x as i64, y as i64)).collect();
    let inside = |x: i64, y: i64| x >= 0 && y >= 0 && x < w as i64 && y < h as i64;
    while !pending.is_empty() {
        let mut updates = Vec::new();
        let mut rest = Vec::new();
        for &(x, y) in &pending {
            let mut sum = [0.0; 3];
            let mut n = 0;
            for (dx, dy) in NEIGHBORS {
                let (nx, ny) = (x + dx, y + dy);
                if inside(nx, ny) && known[idx(nx, ny)] {
                    let c = color[idx(nx, ny)];
                    for k in 0..3 {
                        sum[k] += c[k];
                    }
                    n += 1;
                }
            }
            if n > 0 {
                updates.push((idx(x, y), sum.map(|s| s / n as f64)));
            } else {
                rest.push((x, y));
            }
        }
        if updates.is_empty() {
            break;
        }
        for (i, c) in updates {
            known[i] = true;
            color[i] = c;
        }
        pending = rest;
    }
    RgbaImage::from_fn(w, h, |x, y| {
        let i = idx(x as i64, y as i64);
        if geo.fragment.get(x as i64, y as i64) {
            *fragment.image.get_pixel(x - r, y - r)
        } else if known[i] && geo.dilated.get(x as i64, y as i64) {
            let c = color[i];
            Rgba([c[0].round() as u8, c[1].round() as u8, c[2].round() as u8, 255])
        } else {
            Rgba([0, 0, 0, 0])
        }
    })
}

/// Band produced by [`native_extrapolate`].
pub fn native_band(fragment: &Fragment, n_px: u32) -> Result<ExtrapolatedBand> {
    let geo = BandGeometry::new(&fragment.mask, n_px)?;
    let extended = diffuse(fragment, &geo);
    band_from_extrapolation(fragment.id, &extended, &geo, Provenance::Native)
}
