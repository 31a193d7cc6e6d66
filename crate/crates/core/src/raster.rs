//! Binary masks, label maps and rasters positioned in a shared frame.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::Point;

/// Per-pixel fragment membership. Pixel `(x, y)` has its center at `(x, y)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryMask {
    width: u32,
    height: u32,
    bits: Vec<bool>,
}

/// Inclusive pixel bounding box.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PixelBox {
    pub x0: i64,
    pub y0: i64,
    pub x1: i64,
    pub y1: i64,
}

impl PixelBox {
    pub fn width(&self) -> i64 {
        self.x1 - self.x0 + 1
    }

    pub fn height(&self) -> i64 {
        self.y1 - self.y0 + 1
    }

    pub fn intersect(&self, o: &PixelBox) -> Option<PixelBox> {
        let b = PixelBox {
            x0: self.x0.max(o.x0),
            y0: self.y0.max(o.y0),
            x1: self.x1.min(o.x1),
            y1: self.y1.min(o.y1),
        };
        (b.x0 <= b.x1 && b.y0 <= b.y1).then_some(b)
    }

    pub fn expand(&self, r: i64) -> PixelBox {
        PixelBox {
            x0: self.x0 - r,
            y0: self.y0 - r,
            x1: self.x1 + r,
            y1: self.y1 + r,
        }
    }

    pub fn contains(&self, x: i64, y: i64) -> bool {
        x >= self.x0 && x <= self.x1 && y >= self.y0 && y <= self.y1
    }
}

impl BinaryMask {
    pub fn new(width: u32, height: u32) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::invalid("mask dimensions must be positive"));
        }
        Ok(Self {
            width,
            height,
            bits: vec![false; width as usize * height as usize],
        })
    }

    pub fn from_fn(width: u32, height: u32, mut f: impl FnMut(u32, u32) -> bool) -> Result<Self> {
        let mut m = Self::new(width, height)?;
        for y in 0..height {
            for x in 0..width {
                if f(x, y) {
                    m.set(x, y, true);
                }
            }
        }
        Ok(m)
    }

    pub fn from_bits(width: u32, height: u32, bits: Vec<bool>) -> Result<Self> {
        if width == 0 || height == 0 || bits.len() != width as usize * height as usize {
            return Err(Error::invalid("mask bits do not match dimensions"));
        }
        Ok(Self { width, height, bits })
    }

    #[inline]
    pub fn width(&self) -> u32 {
        self.width
    }

    #[inline]
    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn dimensions(&self) -> (u32, u32) {
        (self.width, self.height)
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    #[inline]
    fn index(&self, x: u32, y: u32) -> usize {
        y as usize * self.width as usize + x as usize
    }

    /// Out-of-range coordinates read as background.
    #[inline]
    pub fn get(&self, x: i64, y: i64) -> bool {
        if x < 0 || y < 0 || x >= self.width as i64 || y >= self.height as i64 {
            return false;
        }
        self.bits[self.index(x as u32, y as u32)]
    }

    #[inline]
    pub fn set(&mut self, x: u32, y: u32, v: bool) {
        let i = self.index(x, y);
        self.bits[i] = v;
    }

    pub fn count(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    pub fn is_empty(&self) -> bool {
        !self.bits.iter().any(|&b| b)
    }

    pub fn iter_set(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        let w = self.width as usize;
        self.bits
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(move |(i, _)| ((i % w) as u32, (i / w) as u32))
    }

    pub fn bbox(&self) -> Option<PixelBox> {
        let mut b: Option<PixelBox> = None;
        for (x, y) in self.iter_set() {
            let (x, y) = (x as i64, y as i64);
            b = Some(match b {
                None => PixelBox {
                    x0: x,
                    y0: y,
                    x1: x,
                    y1: y,
                },
                Some(b) => PixelBox {
                    x0: b.x0.min(x),
                    y0: b.y0.min(y),
                    x1: b.x1.max(x),
                    y1: b.y1.max(y),
                },
            });
        }
        b
    }

    /// Mean of set pixel centers.
    pub fn centroid(&self) -> Option<Point> {
        let (mut sx, mut sy, mut n) = (0.0, 0.0, 0usize);
        for (x, y) in self.iter_set() {
            sx += x as f64;
            sy += y as f64;
            n += 1;
        }
        (n > 0).then(|| Point::new(sx / n as f64, sy / n as f64))
    }

    /// Grows the canvas by `r` pixels on every side; content moves by `(r, r)`.
    pub fn pad(&self, r: u32) -> BinaryMask {
        let (w, h) = (self.width + 2 * r, self.height + 2 * r);
        let mut out = BinaryMask {
            width: w,
            height: h,
            bits: vec![false; w as usize * h as usize],
        };
        for (x, y) in self.iter_set() {
            out.set(x + r, y + r, true);
        }
        out
    }

    /// Copies the inclusive box (clipped reads are background).
    pub fn crop(&self, b: PixelBox) -> Result<BinaryMask> {
        BinaryMask::from_fn(b.width() as u32, b.height() as u32, |x, y| {
            self.get(b.x0 + x as i64, b.y0 + y as i64)
        })
    }

    /// Pixels set in `self` and not in `other` (same dimensions).
    pub fn difference(&self, other: &BinaryMask) -> Result<BinaryMask> {
        self.check_same(other)?;
        let bits = self.bits.iter().zip(&other.bits).map(|(&a, &b)| a && !b).collect();
        BinaryMask::from_bits(self.width, self.height, bits)
    }

    pub fn intersection_count(&self, other: &BinaryMask) -> Result<usize> {
        self.check_same(other)?;
        Ok(self.bits.iter().zip(&other.bits).filter(|(&a, &b)| a && b).count())
    }

    fn check_same(&self, other: &BinaryMask) -> Result<()> {
        if self.dimensions() != other.dimensions() {
            return Err(Error::DimensionMismatch {
                expected: self.dimensions(),
                actual: other.dimensions(),
            });
        }
        Ok(())
    }

    /// 8-connected components, largest first (ties by first pixel in scan order).
    pub fn components(&self) -> Vec<Vec<(u32, u32)>> {
        let (w, h) = (self.width as i64, self.height as i64);
        let mut seen = vec![false; self.bits.len()];
        let mut comps = Vec::new();
        for start in 0..self.bits.len() {
            if !self.bits[start] || seen[start] {
                continue;
            }
            seen[start] = true;
            let mut stack = vec![start];
            let mut comp = Vec::new();
            while let Some(i) = stack.pop() {
                let (x, y) = ((i as i64) % w, (i as i64) / w);
                comp.push((x as u32, y as u32));
                for dy in -1..=1 {
                    for dx in -1..=1 {
                        let (nx, ny) = (x + dx, y + dy);
                        if nx < 0 || ny < 0 || nx >= w || ny >= h {
                            continue;
                        }
                        let j = (ny * w + nx) as usize;
                        if self.bits[j] && !seen[j] {
                            seen[j] = true;
                            stack.push(j);
                        }
                    }
                }
            }
            comps.push(comp);
        }
        // stable: equal sizes keep scan order
        comps.sort_by(|a, b| b.len().cmp(&a.len()));
        comps
    }

    /// Keeps only the largest 8-connected component.
    pub fn largest_component(&self) -> BinaryMask {
        let mut out = BinaryMask {
            width: self.width,
            height: self.height,
            bits: vec![false; self.bits.len()],
        };
        if let Some(c) = self.components().first() {
            for &(x, y) in c {
                out.set(x, y, true);
            }
        }
        out
    }

    /// Removes 8-connected components smaller than `min_px`.
    pub fn cull_small_components(&self, min_px: usize) -> BinaryMask {
        let mut out = self.clone();
        for comp in self.components() {
            if comp.len() < min_px {
                for (x, y) in comp {
                    out.set(x, y, false);
                }
            }
        }
        out
    }
}

/// A raster whose pixel `(0, 0)` sits at `origin` in some shared frame.
#[derive(Debug, Clone, PartialEq)]
pub struct Layer<T> {
    pub raster: T,
    pub origin: (i64, i64),
}

pub type MaskLayer = Layer<BinaryMask>;
pub type ImageLayer = Layer<image::RgbaImage>;

impl MaskLayer {
    /// Reads the mask at frame coordinates.
    #[inline]
    pub fn get(&self, x: i64, y: i64) -> bool {
        self.raster.get(x - self.origin.0, y - self.origin.1)
    }

    pub fn frame_box(&self) -> PixelBox {
        PixelBox {
            x0: self.origin.0,
            y0: self.origin.1,
            x1: self.origin.0 + self.raster.width() as i64 - 1,
            y1: self.origin.1 + self.raster.height() as i64 - 1,
        }
    }

    pub fn iter_set(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        let (ox, oy) = self.origin;
        self.raster.iter_set().map(move |(x, y)| (x as i64 + ox, y as i64 + oy))
    }
}

/// Per-pixel region ids. `BACKGROUND` marks eroded or unlabeled pixels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelMap {
    width: u32,
    height: u32,
    labels: Vec<u32>,
}

impl LabelMap {
    pub const BACKGROUND: u32 = u32::MAX;

    pub fn new(width: u32, height: u32, fill: u32) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::invalid("label map dimensions must be positive"));
        }
        Ok(Self {
            width,
            height,
            labels: vec![fill; width as usize * height as usize],
        })
    }

    pub fn from_vec(width: u32, height: u32, labels: Vec<u32>) -> Result<Self> {
        if width == 0 || height == 0 || labels.len() != width as usize * height as usize {
            return Err(Error::invalid("labels do not match dimensions"));
        }
        Ok(Self { width, height, labels })
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn dimensions(&self) -> (u32, u32) {
        (self.width, self.height)
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.labels
    }

    #[inline]
    pub fn get(&self, x: u32, y: u32) -> u32 {
        self.labels[y as usize * self.width as usize + x as usize]
    }

    #[inline]
    pub fn set(&mut self, x: u32, y: u32, v: u32) {
        let w = self.width as usize;
        self.labels[y as usize * w + x as usize] = v;
    }

    /// Distinct non-background labels in ascending order.
    pub fn distinct(&self) -> Vec<u32> {
        let mut v: Vec<u32> = self.labels.iter().copied().filter(|&l| l != Self::BACKGROUND).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    pub fn count_labeled(&self) -> usize {
        self.labels.iter().filter(|&&l| l != Self::BACKGROUND).count()
    }

    pub fn mask_of(&self, label: u32) -> BinaryMask {
        BinaryMask {
            width: self.width,
            height: self.height,
            bits: self.labels.iter().map(|&l| l == label).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn components_sorted_by_size() {
        let m = BinaryMask::from_fn(10, 10, |x, y| (x < 2 && y < 2) || (x > 5 && y > 5)).unwrap();
        let comps = m.components();
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[0].len(), 16);
        assert_eq!(m.largest_component().count(), 16);
        assert_eq!(m.cull_small_components(5).count(), 16);
    }

    #[test]
    fn pad_and_crop_round_trip() {
        let m = BinaryMask::from_fn(5, 4, |x, y| (x + y) % 3 == 0).unwrap();
        let p = m.pad(3);
        assert_eq!(p.dimensions(), (11, 10));
        let back = p
            .crop(PixelBox {
                x0: 3,
                y0: 3,
                x1: 7,
                y1: 6,
            })
            .unwrap();
        assert_eq!(back, m);
    }

    #[test]
    fn zero_dimensions_rejected() {
        assert!(BinaryMask::new(0, 3).is_err());
        assert!(LabelMap::new(3, 0, 0).is_err());
    }
}
