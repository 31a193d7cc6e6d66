use image::{Rgba, RgbaImage};

use super::point::Point;
use super::polygon::PolygonApprox;
use super::transform::RigidTransform2D;
use crate::raster::{BinaryMask, ImageLayer, Layer, MaskLayer, PixelBox};

/// Applies a rigid transform to a geometric or raster value.
///
/// Rasters come back as [`Layer`]s on a canvas expanded to fit the moved
/// content; masks are resampled nearest-neighbor, images bilinearly.
pub trait ApplyTransform {
    type Output;
    fn apply_transform(&self, t: &RigidTransform2D) -> Self::Output;
}

impl ApplyTransform for PolygonApprox {
    type Output = PolygonApprox;

    fn apply_transform(&self, t: &RigidTransform2D) -> PolygonApprox {
        let vertices = self.vertices.iter().map(|&p| t.apply(p)).collect();
        // rigid motions preserve orientation and perimeter
        PolygonApprox {
            vertices,
            perimeter: self.perimeter,
        }
    }
}

impl ApplyTransform for BinaryMask {
    type Output = MaskLayer;

    fn apply_transform(&self, t: &RigidTransform2D) -> MaskLayer {
        warp_mask(
            &Layer {
                raster: self.clone(),
                origin: (0, 0),
            },
            t,
        )
    }
}

impl ApplyTransform for RgbaImage {
    type Output = ImageLayer;

    fn apply_transform(&self, t: &RigidTransform2D) -> ImageLayer {
        warp_image(
            &Layer {
                raster: self.clone(),
                origin: (0, 0),
            },
            t,
        )
    }
}

/// Frame box covering the moved pixel centers of a `w`×`h` raster at `origin`.
pub fn transformed_box(w: u32, h: u32, origin: (i64, i64), t: &RigidTransform2D) -> PixelBox {
    let (ox, oy) = (origin.0 as f64, origin.1 as f64);
    let corners = [
        Point::new(ox, oy),
        Point::new(ox + w as f64 - 1.0, oy),
        Point::new(ox, oy + h as f64 - 1.0),
        Point::new(ox + w as f64 - 1.0, oy + h as f64 - 1.0),
    ];
    let moved: Vec<Point> = corners.iter().map(|&c| t.apply(c)).collect();
    let min_x = moved.iter().map(|p| p.x).fold(f64::INFINITY, f64::min);
    let min_y = moved.iter().map(|p| p.y).fold(f64::INFINITY, f64::min);
    let max_x = moved.iter().map(|p| p.x).fold(f64::NEG_INFINITY, f64::max);
    let max_y = moved.iter().map(|p| p.y).fold(f64::NEG_INFINITY, f64::max);
    // off-axis rotations need a pixel of slack for nearest-neighbor reach
    let slack = if t.is_axis_aligned() { 0.0 } else { 1.0 };
    const EPS: f64 = 1e-7;
    PixelBox {
        x0: (min_x + EPS - slack).floor() as i64,
        y0: (min_y + EPS - slack).floor() as i64,
        x1: (max_x - EPS + slack).ceil() as i64,
        y1: (max_y - EPS + slack).ceil() as i64,
    }
}

/// Nearest-neighbor resampling of a positioned mask under `t`.
pub fn warp_mask(src: &MaskLayer, t: &RigidTransform2D) -> MaskLayer {
    let (w, h) = src.raster.dimensions();
    let b = transformed_box(w, h, src.origin, t);
    let inv = t.inverse();
    let mask = BinaryMask::from_fn(b.width() as u32, b.height() as u32, |x, y| {
        let p = inv.apply(Point::new((b.x0 + x as i64) as f64, (b.y0 + y as i64) as f64));
        src.get(p.x.round() as i64, p.y.round() as i64)
    })
    .expect("non-empty canvas");
    Layer {
        raster: mask,
        origin: (b.x0, b.y0),
    }
}

/// Bilinear sample with transparent surroundings, interpolating premultiplied
/// color so transparent pixels never bleed their RGB.
pub fn sample_bilinear(img: &RgbaImage, origin: (i64, i64), p: Point) -> Rgba<u8> {
    let fx = p.x - origin.0 as f64;
    let fy = p.y - origin.1 as f64;
    let (x0, y0) = (fx.floor(), fy.floor());
    let (ax, ay) = (fx - x0, fy - y0);
    let (x0, y0) = (x0 as i64, y0 as i64);
    let (w, h) = (img.width() as i64, img.height() as i64);
    let mut acc = [0.0f64; 4];
    for (dx, dy, wgt) in [
        (0, 0, (1.0 - ax) * (1.0 - ay)),
        (1, 0, ax * (1.0 - ay)),
        (0, 1, (1.0 - ax) * ay),
        (1, 1, ax * ay),
    ] {
        if wgt == 0.0 {
            continue;
        }
        let (x, y) = (x0 + dx, y0 + dy);
        if x < 0 || y < 0 || x >= w || y >= h {
            continue;
        }
        let px = img.get_pixel(x as u32, y as u32).0;
        let a = px[3] as f64 / 255.0;
        for c in 0..3 {
            acc[c] += wgt * a * px[c] as f64;
        }
        acc[3] += wgt * a;
    }
    if acc[3] <= 1e-12 {
        return Rgba([0, 0, 0, 0]);
    }
    let q = |v: f64| v.round().clamp(0.0, 255.0) as u8;
    Rgba([
        q(acc[0] / acc[3]),
        q(acc[1] / acc[3]),
        q(acc[2] / acc[3]),
        q(acc[3] * 255.0),
    ])
}

/// Bilinear resampling of a positioned RGBA image under `t`.
pub fn warp_image(src: &ImageLayer, t: &RigidTransform2D) -> ImageLayer {
    let (w, h) = src.raster.dimensions();
    let b = transformed_box(w, h, src.origin, t);
    let inv = t.inverse();
    let img = RgbaImage::from_fn(b.width() as u32, b.height() as u32, |x, y| {
        let p = inv.apply(Point::new((b.x0 + x as i64) as f64, (b.y0 + y as i64) as f64));
        sample_bilinear(&src.raster, src.origin, p)
    });
    Layer {
        raster: img,
        origin: (b.x0, b.y0),
    }
}
