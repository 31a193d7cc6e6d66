use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::Point;

/// Fractal gradient-noise settings.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NoiseParams {
    /// Lattice cells across each image side at the base octave.
    pub frequency: f64,
    pub octaves: u32,
    /// Amplitude ratio between successive octaves.
    pub persistence: f64,
}

impl Default for NoiseParams {
    fn default() -> Self {
        Self {
            frequency: 4.0,
            octaves: 4,
            persistence: 0.5,
        }
    }
}

impl NoiseParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.frequency > 0.0) || self.octaves < 1 || !(self.persistence > 0.0) {
            return Err(Error::invalid(
                "noise needs frequency > 0, octaves >= 1 and persistence > 0",
            ));
        }
        Ok(())
    }

    fn cells(&self, octave: u32) -> f64 {
        self.frequency * 2f64.powi(octave as i32)
    }
}

/// Gradient vectors on a `(cells_x + 1) × (cells_y + 1)` lattice.
#[derive(Debug, Clone, PartialEq)]
pub struct GradientGrid {
    pub cells_x: usize,
    pub cells_y: usize,
    pub gradients: Vec<Point>,
}

impl GradientGrid {
    pub fn random<R: Rng + ?Sized>(cells_x: usize, cells_y: usize, rng: &mut R) -> Self {
        let gradients = (0..(cells_x + 1) * (cells_y + 1))
            .map(|_| Point::new(1.0, 0.0).rotated(rng.gen::<f64>() * std::f64::consts::TAU))
            .collect();
        Self {
            cells_x,
            cells_y,
            gradients,
        }
    }

    pub fn zeros(cells_x: usize, cells_y: usize) -> Self {
        Self {
            cells_x,
            cells_y,
            gradients: vec![Point::ORIGIN; (cells_x + 1) * (cells_y + 1)],
        }
    }

    #[inline]
    fn at(&self, ix: usize, iy: usize) -> Point {
        self.gradients[iy.min(self.cells_y) * (self.cells_x + 1) + ix.min(self.cells_x)]
    }

    /// Classic Perlin gradient noise at lattice coordinates `(u, v)`.
    fn sample(&self, u: f64, v: f64) -> f64 {
        let (ix, iy) = (u.floor().max(0.0) as usize, v.floor().max(0.0) as usize);
        let (fx, fy) = (u - ix as f64, v - iy as f64);
        let dot = |gx: usize, gy: usize, dx: f64, dy: f64| self.at(gx, gy).dot(Point::new(dx, dy));
        let n00 = dot(ix, iy, fx, fy);
        let n10 = dot(ix + 1, iy, fx - 1.0, fy);
        let n01 = dot(ix, iy + 1, fx, fy - 1.0);
        let n11 = dot(ix + 1, iy + 1, fx - 1.0, fy - 1.0);
        let (sx, sy) = (fade(fx), fade(fy));
        let a = n00 + sx * (n10 - n00);
        let b = n01 + sx * (n11 - n01);
        a + sy * (b - a)
    }
}

#[inline]
fn fade(t: f64) -> f64 {
    t * t * t * (t * (t * 6.0 - 15.0) + 10.0)
}

/// Scalar field in `[0, 1]`, one value per pixel.
#[derive(Debug, Clone, PartialEq)]
pub struct NoiseField {
    width: u32,
    height: u32,
    values: Vec<f64>,
}

impl NoiseField {
    pub fn constant(width: u32, height: u32, value: f64) -> Self {
        Self {
            width,
            height,
            values: vec![value.clamp(0.0, 1.0); width as usize * height as usize],
        }
    }

    pub fn from_values(width: u32, height: u32, values: Vec<f64>) -> Result<Self> {
        if values.len() != width as usize * height as usize {
            return Err(Error::invalid("noise values do not match dimensions"));
        }
        if values.iter().any(|v| !(0.0..=1.0).contains(v)) {
            return Err(Error::invalid("noise values must lie in [0, 1]"));
        }
        Ok(Self { width, height, values })
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    #[inline]
    pub fn get(&self, x: u32, y: u32) -> f64 {
        self.values[y as usize * self.width as usize + x as usize]
    }
}

/// Sums octaves of gradient noise over the given lattices and min-max
/// normalizes to `[0, 1]`. A flat sum (e.g. all-zero gradients) maps to 0.5.
pub fn field_from_gradients(extent: (u32, u32), params: &NoiseParams, grids: &[GradientGrid]) -> NoiseField {
    let (w, h) = extent;
    let mut values = vec![0.0f64; w as usize * h as usize];
    let mut amp = 1.0;
    for (octave, grid) in grids.iter().enumerate() {
        let cells = params.cells(octave as u32);
        for y in 0..h {
            let v = (y as f64 + 0.5) / h as f64 * cells;
            for x in 0..w {
                let u = (x as f64 + 0.5) / w as f64 * cells;
                values[y as usize * w as usize + x as usize] += amp * grid.sample(u, v);
            }
        }
        amp *= params.persistence;
    }
    let lo = values.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if hi - lo < 1e-12 {
        values.iter_mut().for_each(|v| *v = 0.5);
    } else {
        values.iter_mut().for_each(|v| *v = (*v - lo) / (hi - lo));
    }
    NoiseField {
        width: w,
        height: h,
        values,
    }
}

/// Multi-octave Perlin noise matched to the image extent.
pub fn perlin_field<R: Rng + ?Sized>(extent: (u32, u32), params: &NoiseParams, rng: &mut R) -> Result<NoiseField> {
    params.validate()?;
    let grids: Vec<GradientGrid> = (0..params.octaves)
        .map(|o| {
            let cells = params.cells(o).ceil() as usize;
            GradientGrid::random(cells, cells, rng)
        })
        .collect();
    Ok(field_from_gradients(extent, params, &grids))
}
