use image::{Rgba, RgbaImage};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fragmentation::Fragment;
use crate::geometry::Point;
use crate::raster::BinaryMask;

/// Default dilation size in pixels.
pub const DEFAULT_N_PX: u32 = 21;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    Native,
    Diffusion,
    Oracle,
}

/// Square structuring element side actually used for `n_px`: even sizes are
/// rounded up so the element has a center pixel.
pub fn effective_n_px(n_px: u32) -> Result<u32> {
    if n_px == 0 {
        return Err(Error::invalid("n_px must be at least 1"));
    }
    Ok(n_px | 1)
}

/// Band reach in pixels, `⌊n_px / 2⌋` after rounding to odd.
pub fn band_radius(n_px: u32) -> Result<u32> {
    Ok(effective_n_px(n_px)? / 2)
}

/// Dilation of `mask` by an `n_px × n_px` square. The result lives on the
/// mask canvas padded by the band radius on every side, so fragment pixel
/// `(x, y)` is canvas pixel `(x + r, y + r)`.
pub fn dilate_mask(mask: &BinaryMask, n_px: u32) -> Result<BinaryMask> {
    let r = band_radius(n_px)?;
    let padded = mask.pad(r);
    let (w, h) = padded.dimensions();
    let ri = r as i64;
    // separable: a square is a horizontal run followed by a vertical run
    let rows = running_max(&padded, ri, true);
    let both = running_max(&rows, ri, false);
    debug_assert_eq!(both.dimensions(), (w, h));
    Ok(both)
}

fn running_max(m: &BinaryMask, r: i64, horizontal: bool) -> BinaryMask {
    let (w, h) = m.dimensions();
    let (outer, inner) = if horizontal { (h, w) } else { (w, h) };
    let mut out = BinaryMask::new(w, h).expect("positive extent");
    for o in 0..outer {
        let at = |i: i64| {
            if horizontal {
                m.get(i, o as i64)
            } else {
                m.get(o as i64, i)
            }
        };
        // count of set pixels inside the sliding window [i - r, i + r]
        let mut count: i64 = (0..=r.min(inner as i64 - 1)).filter(|&i| at(i)).count() as i64;
        for i in 0..inner as i64 {
            if count > 0 {
                if horizontal {
                    out.set(i as u32, o, true);
                } else {
                    out.set(o, i as u32, true);
                }
            }
            if at(i - r) {
                count -= 1;
            }
            if at(i + r + 1) {
                count += 1;
            }
        }
    }
    out
}

/// Ring of pictorial content around a fragment on its padded canvas.
/// Canvas pixel `(x, y)` is fragment-local pixel `(x - r, y - r)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExtrapolatedBand {
    pub fragment: u32,
    /// RGBA, transparent outside `mask`.
    pub image: RgbaImage,
    /// `M′ \ M` on the canvas.
    pub mask: BinaryMask,
    pub radius: u32,
    pub provenance: Provenance,
}

impl ExtrapolatedBand {
    pub fn area(&self) -> usize {
        self.mask.count()
    }

    /// Band membership at fragment-local pixel coordinates.
    #[inline]
    pub fn contains_local(&self, x: i64, y: i64) -> bool {
        let r = self.radius as i64;
        self.mask.get(x + r, y + r)
    }

    /// Fragment-local coordinates of canvas pixel `(x, y)`.
    #[inline]
    pub fn canvas_to_local(&self, x: u32, y: u32) -> Point {
        let r = self.radius as f64;
        Point::new(x as f64 - r, y as f64 - r)
    }

    /// Canvas offset of the fragment-local origin.
    pub fn origin(&self) -> (i64, i64) {
        (-(self.radius as i64), -(self.radius as i64))
    }
}

/// Fragment mask, its dilation and the band radius for a given `n_px`, all
/// on the padded canvas.
pub struct BandGeometry {
    pub radius: u32,
    pub fragment: BinaryMask,
    pub dilated: BinaryMask,
}

impl BandGeometry {
    pub fn new(mask: &BinaryMask, n_px: u32) -> Result<Self> {
        let radius = band_radius(n_px)?;
        Ok(Self {
            radius,
            fragment: mask.pad(radius),
            dilated: dilate_mask(mask, n_px)?,
        })
    }

    pub fn band_mask(&self) -> BinaryMask {
        self.dilated.difference(&self.fragment).expect("same canvas")
    }

    pub fn canvas_dimensions(&self) -> (u32, u32) {
        self.dilated.dimensions()
    }
}

/// Keeps `extended` on `M′ \ M` and clears everything else. `extended` is in
/// canvas coordinates and must cover the canvas of `geo`.
pub fn band_from_extrapolation(
    fragment_id: u32,
    extended: &RgbaImage,
    geo: &BandGeometry,
    provenance: Provenance,
) -> Result<ExtrapolatedBand> {
    let (w, h) = geo.canvas_dimensions();
    if geo.fragment.dimensions() != (w, h) {
        return Err(Error::DimensionMismatch {
            expected: (w, h),
            actual: geo.fragment.dimensions(),
        });
    }
    if extended.width() < w || extended.height() < h {
        return Err(Error::DimensionMismatch {
            expected: (w, h),
            actual: extended.dimensions(),
        });
    }
    let mask = geo.band_mask();
    let image = RgbaImage::from_fn(w, h, |x, y| {
        if mask.get(x as i64, y as i64) {
            *extended.get_pixel(x, y)
        } else {
            Rgba([0, 0, 0, 0])
        }
    });
    Ok(ExtrapolatedBand {
        fragment: fragment_id,
        image,
        mask,
        radius: geo.radius,
        provenance,
    })
}

/// Fragment pixels placed on the padded canvas, transparent elsewhere.
pub fn padded_fragment_image(fragment: &Fragment, radius: u32) -> RgbaImage {
    let (w, h) = fragment.mask.dimensions();
    let r = radius;
    RgbaImage::from_fn(w + 2 * r, h + 2 * r, |x, y| {
        if x >= r && y >= r && x - r < w && y - r < h && fragment.mask.get((x - r) as i64, (y - r) as i64) {
            *fragment.image.get_pixel(x - r, y - r)
        } else {
            Rgba([0, 0, 0, 0])
        }
    })
}

/// Fills the band with the true source pixels under the fragment's
/// ground-truth pose. Samples falling outside the source image take the
/// nearest edge pixel.
pub fn oracle_extrapolate(fragment: &Fragment, source: &RgbaImage, n_px: u32) -> Result<ExtrapolatedBand> {
    if !fragment.pose.is_finite() {
        return Err(Error::MissingPose(fragment.id));
    }
    let geo = BandGeometry::new(&fragment.mask, n_px)?;
    let r = geo.radius as f64;
    let (sw, sh) = source.dimensions();
    let (w, h) = geo.canvas_dimensions();
    let extended = RgbaImage::from_fn(w, h, |x, y| {
        let p = fragment.pose.apply(Point::new(x as f64 - r, y as f64 - r));
        let sx = (p.x.round() as i64).clamp(0, sw as i64 - 1) as u32;
        let sy = (p.y.round() as i64).clamp(0, sh as i64 - 1) as u32;
        *source.get_pixel(sx, sy)
    });
    band_from_extrapolation(fragment.id, &extended, &geo, Provenance::Oracle)
}
