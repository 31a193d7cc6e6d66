use serde::{Deserialize, Serialize};

use super::point::Point;
use crate::error::{Error, Result};
use crate::raster::BinaryMask;

/// Closed boundary as an ordered list of pixel centers. The closing point is
/// not repeated.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Contour {
    pub points: Vec<Point>,
}

impl Contour {
    pub fn new(points: Vec<Point>) -> Result<Self> {
        if points.len() < 3 {
            return Err(Error::DegenerateContour(points.len()));
        }
        Ok(Self { points })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn perimeter(&self) -> f64 {
        closed_length(&self.points)
    }

    pub fn signed_area(&self) -> f64 {
        signed_area(&self.points)
    }
}

/// Length of the closed polyline through `pts`.
pub fn closed_length(pts: &[Point]) -> f64 {
    if pts.len() < 2 {
        return 0.0;
    }
    pts.iter()
        .zip(pts.iter().cycle().skip(1))
        .map(|(a, b)| a.distance(*b))
        .sum()
}

/// Shoelace area on raw coordinates. Positive means the interior lies to
/// the left of travel in a y-up frame (clockwise as drawn on a y-down screen).
pub fn signed_area(pts: &[Point]) -> f64 {
    let n = pts.len();
    if n < 3 {
        return 0.0;
    }
    let mut acc = 0.0;
    for i in 0..n {
        acc += pts[i].cross(pts[(i + 1) % n]);
    }
    0.5 * acc
}

/// Separable Gaussian blur of a 0/1 mask, `sigma` in pixels, truncated at 3σ.
/// The canvas is padded so blur never clips at the crop border.
fn gaussian_smooth(mask: &BinaryMask, sigma: f64, pad: u32) -> (Vec<f32>, u32, u32) {
    let padded = mask.pad(pad);
    let (w, h) = padded.dimensions();
    let (wu, hu) = (w as usize, h as usize);
    let mut img: Vec<f32> = padded.bits().iter().map(|&b| if b { 1.0 } else { 0.0 }).collect();
    if sigma <= 0.0 {
        return (img, w, h);
    }
    let radius = (3.0 * sigma).ceil() as i64;
    let mut kernel: Vec<f64> = (-radius..=radius)
        .map(|i| (-(i * i) as f64 / (2.0 * sigma * sigma)).exp())
        .collect();
    let total: f64 = kernel.iter().sum();
    kernel.iter_mut().for_each(|k| *k /= total);

    let mut tmp = vec![0.0f32; img.len()];
    for y in 0..hu {
        for x in 0..wu {
            let mut acc = 0.0f64;
            for (k, kv) in kernel.iter().enumerate() {
                let sx = x as i64 + k as i64 - radius;
                if sx >= 0 && (sx as usize) < wu {
                    acc += kv * img[y * wu + sx as usize] as f64;
                }
            }
            tmp[y * wu + x] = acc as f32;
        }
    }
    for y in 0..hu {
        for x in 0..wu {
            let mut acc = 0.0f64;
            for (k, kv) in kernel.iter().enumerate() {
                let sy = y as i64 + k as i64 - radius;
                if sy >= 0 && (sy as usize) < hu {
                    acc += kv * tmp[sy as usize * wu + x] as f64;
                }
            }
            img[y * wu + x] = acc as f32;
        }
    }
    (img, w, h)
}

// Clockwise on a y-down screen, starting east.
const MOORE: [(i64, i64); 8] = [(1, 0), (1, 1), (0, 1), (-1, 1), (-1, 0), (-1, -1), (0, -1), (1, -1)];

fn dir_index(dx: i64, dy: i64) -> usize {
    MOORE.iter().position(|&d| d == (dx, dy)).expect("neighbor offset")
}

/// Moore-neighbor tracing of the outer boundary of the component containing
/// the first set pixel in scan order. Stops when the first move repeats.
pub fn trace_boundary(mask: &BinaryMask) -> Vec<(i64, i64)> {
    let Some(start) = mask.iter_set().next() else {
        return Vec::new();
    };
    let start = (start.0 as i64, start.1 as i64);
    // west neighbor of the scan-first pixel is background
    let mut back = (start.0 - 1, start.1);
    let mut cur = start;
    let mut out = vec![start];
    let mut first_move: Option<(i64, i64)> = None;
    let limit = 4 * mask.width() as usize * mask.height() as usize + 8;
    for _ in 0..limit {
        let b = dir_index(back.0 - cur.0, back.1 - cur.1);
        let mut next = None;
        for step in 1..=8 {
            let k = (b + step) % 8;
            let cand = (cur.0 + MOORE[k].0, cur.1 + MOORE[k].1);
            if mask.get(cand.0, cand.1) {
                let pk = (k + 7) % 8;
                next = Some((cand, (cur.0 + MOORE[pk].0, cur.1 + MOORE[pk].1)));
                break;
            }
        }
        let Some((n, nb)) = next else {
            // isolated pixel
            return out;
        };
        if cur == start {
            match first_move {
                None => first_move = Some(n),
                Some(m) if m == n => break,
                _ => {}
            }
        }
        back = nb;
        cur = n;
        out.push(cur);
    }
    // the trace re-enters start before repeating the first move
    if out.len() > 1 && out.last() == Some(&start) {
        out.pop();
    }
    out
}

/// Smooths the mask with a Gaussian (σ = `k_smooth`), re-binarizes at 0.5,
/// keeps the largest component and traces its outer boundary.
///
/// Points are in the input mask's pixel frame and the contour is oriented
/// with positive signed area.
pub fn extract_contour(mask: &BinaryMask, k_smooth: f64) -> Result<Contour> {
    if mask.is_empty() {
        return Err(Error::EmptyMask);
    }
    if !(k_smooth >= 0.0) {
        return Err(Error::invalid("k_smooth must be non-negative"));
    }
    let pad = (3.0 * k_smooth).ceil() as u32 + 1;
    let (blurred, w, h) = gaussian_smooth(mask, k_smooth, pad);
    let bits = blurred.iter().map(|&v| v >= 0.5).collect();
    let bin = BinaryMask::from_bits(w, h, bits)?.largest_component();
    if bin.is_empty() {
        return Err(Error::EmptyMask);
    }
    let traced = trace_boundary(&bin);
    let mut points: Vec<Point> = traced
        .into_iter()
        .map(|(x, y)| Point::new((x - pad as i64) as f64, (y - pad as i64) as f64))
        .collect();
    if signed_area(&points) < 0.0 {
        points.reverse();
    }
    Contour::new(points)
}
