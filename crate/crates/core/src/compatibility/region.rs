use crate::color::{Lab, LabConverter};
use crate::extrapolation::ExtrapolatedBand;
use crate::geometry::{transformed_box, Point, RigidTransform2D};
use crate::raster::{BinaryMask, PixelBox};

/// Target-canvas pixels that are band pixels of the target and, after moving
/// the source by `t` (source-local to target-local), land on a source band
/// pixel under nearest-neighbor lookup.
pub fn shared_band_region(band_t: &ExtrapolatedBand, band_s: &ExtrapolatedBand, t: &RigidTransform2D) -> BinaryMask {
    let (w, h) = band_t.mask.dimensions();
    let mut region = BinaryMask::new(w, h).expect("positive extent");
    let Some(window) = overlap_window(band_t, band_s, t) else {
        return region;
    };
    let inv = t.inverse();
    let (rt, rs) = (band_t.radius as f64, band_s.radius as i64);
    for y in window.y0..=window.y1 {
        for x in window.x0..=window.x1 {
            if !band_t.mask.get(x, y) {
                continue;
            }
            let q = inv.apply(Point::new(x as f64 - rt, y as f64 - rt));
            if band_s.mask.get(q.x.round() as i64 + rs, q.y.round() as i64 + rs) {
                region.set(x as u32, y as u32, true);
            }
        }
    }
    region
}

/// Target-canvas box that can contain shared pixels.
fn overlap_window(band_t: &ExtrapolatedBand, band_s: &ExtrapolatedBand, t: &RigidTransform2D) -> Option<PixelBox> {
    let bt = band_t.mask.bbox()?;
    let bs = band_s.mask.bbox()?;
    let rs = band_s.radius as i64;
    let moved = transformed_box(bs.width() as u32, bs.height() as u32, (bs.x0 - rs, bs.y0 - rs), t);
    let rt = band_t.radius as i64;
    let moved = PixelBox {
        x0: moved.x0 + rt,
        y0: moved.y0 + rt,
        x1: moved.x1 + rt,
        y1: moved.y1 + rt,
    }
    .expand(1);
    bt.intersect(&moved)
}

/// Colors of both bands over their shared region, in LAB, indexed by
/// target-canvas pixel.
#[derive(Debug, Clone)]
pub struct AlignedBands {
    pub region: BinaryMask,
    pub target: Vec<Lab>,
    pub source: Vec<Lab>,
}

impl AlignedBands {
    #[inline]
    pub fn index(&self, x: u32, y: u32) -> usize {
        (y * self.region.width() + x) as usize
    }

    pub fn area(&self) -> usize {
        self.region.count()
    }
}

/// Samples the source band at source-canvas point `p`: bilinear over the
/// four surrounding pixels, weights renormalized over band pixels.
pub fn sample_band_rgb(band: &ExtrapolatedBand, p: Point) -> Option<[u8; 3]> {
    let (x0, y0) = (p.x.floor(), p.y.floor());
    let (fx, fy) = (p.x - x0, p.y - y0);
    let (x0, y0) = (x0 as i64, y0 as i64);
    let mut acc = [0.0f64; 3];
    let mut wsum = 0.0;
    for (dx, dy, wgt) in [
        (0, 0, (1.0 - fx) * (1.0 - fy)),
        (1, 0, fx * (1.0 - fy)),
        (0, 1, (1.0 - fx) * fy),
        (1, 1, fx * fy),
    ] {
        let (x, y) = (x0 + dx, y0 + dy);
        if wgt > 0.0 && band.mask.get(x, y) {
            let c = band.image.get_pixel(x as u32, y as u32).0;
            for k in 0..3 {
                acc[k] += wgt * c[k] as f64;
            }
            wsum += wgt;
        }
    }
    if wsum > 0.0 {
        Some(acc.map(|v| (v / wsum).round().clamp(0.0, 255.0) as u8))
    } else {
        let (nx, ny) = (p.x.round() as i64, p.y.round() as i64);
        band.mask.get(nx, ny).then(|| {
            let c = band.image.get_pixel(nx as u32, ny as u32).0;
            [c[0], c[1], c[2]]
        })
    }
}

pub fn align_bands(
    band_t: &ExtrapolatedBand,
    band_s: &ExtrapolatedBand,
    t: &RigidTransform2D,
    conv: &LabConverter,
) -> AlignedBands {
    let region = shared_band_region(band_t, band_s, t);
    let n = (region.width() * region.height()) as usize;
    let mut target = vec![Lab::default(); n];
    let mut source = vec![Lab::default(); n];
    let inv = t.inverse();
    let (rt, rs) = (band_t.radius as f64, band_s.radius as f64);
    let w = region.width();
    for (x, y) in region.iter_set() {
        let i = (y * w + x) as usize;
        let c = band_t.image.get_pixel(x, y).0;
        target[i] = conv.convert([c[0], c[1], c[2]]);
        let q = inv.apply(Point::new(x as f64 - rt, y as f64 - rt));
        let rgb = sample_band_rgb(band_s, Point::new(q.x + rs, q.y + rs)).expect("region pixels hit the source band");
        source[i] = conv.convert(rgb);
    }
    AlignedBands { region, target, source }
}
