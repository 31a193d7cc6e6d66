//! sRGB (D65) to CIELAB conversion and Euclidean ΔE.

/// CIELAB triple: `l` in `[0, 100]`, `a`/`b` roughly in `[-128, 127]`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Lab {
    pub l: f64,
    pub a: f64,
    pub b: f64,
}

impl Lab {
    pub const fn new(l: f64, a: f64, b: f64) -> Self {
        Self { l, a, b }
    }

    /// CIE76 color difference.
    #[inline]
    pub fn delta_e(self, other: Lab) -> f64 {
        let (dl, da, db) = (self.l - other.l, self.a - other.a, self.b - other.b);
        (dl * dl + da * da + db * db).sqrt()
    }
}

/// Largest LAB distance on the nominal gamut `L∈[0,100]`, `a,b∈[-128,127]`.
pub fn max_lab_distance() -> f64 {
    (100.0f64 * 100.0 + 255.0 * 255.0 + 255.0 * 255.0).sqrt()
}

#[inline]
fn srgb_to_linear(c: u8) -> f64 {
    let v = c as f64 / 255.0;
    if v <= 0.04045 {
        v / 12.92
    } else {
        ((v + 0.055) / 1.055).powf(2.4)
    }
}

#[inline]
fn lab_f(t: f64) -> f64 {
    const DELTA: f64 = 6.0 / 29.0;
    if t > DELTA * DELTA * DELTA {
        t.cbrt()
    } else {
        t / (3.0 * DELTA * DELTA) + 4.0 / 29.0
    }
}

// D65 white taken as the matrix row sums so that sRGB white maps to a = b = 0.
const WHITE_X: f64 = 0.4124564 + 0.3575761 + 0.1804375;
const WHITE_Z: f64 = 0.0193339 + 0.1191920 + 0.9503041;

pub fn srgb_to_lab(rgb: [u8; 3]) -> Lab {
    let (r, g, b) = (srgb_to_linear(rgb[0]), srgb_to_linear(rgb[1]), srgb_to_linear(rgb[2]));
    let x = 0.4124564 * r + 0.3575761 * g + 0.1804375 * b;
    let y = 0.2126729 * r + 0.7151522 * g + 0.0721750 * b;
    let z = 0.0193339 * r + 0.1191920 * g + 0.9503041 * b;
    let (fx, fy, fz) = (lab_f(x / WHITE_X), lab_f(y), lab_f(z / WHITE_Z));
    Lab {
        l: 116.0 * fy - 16.0,
        a: 500.0 * (fx - fy),
        b: 200.0 * (fy - fz),
    }
}

/// Lookup-table converter; the 256³ table is avoided by caching per-channel
/// linearization only.
#[derive(Debug, Clone)]
pub struct LabConverter {
    linear: [f64; 256],
}

impl Default for LabConverter {
    fn default() -> Self {
        let mut linear = [0.0; 256];
        for (i, v) in linear.iter_mut().enumerate() {
            *v = srgb_to_linear(i as u8);
        }
        Self { linear }
    }
}

impl LabConverter {
    pub fn convert(&self, rgb: [u8; 3]) -> Lab {
        let (r, g, b) = (
            self.linear[rgb[0] as usize],
            self.linear[rgb[1] as usize],
            self.linear[rgb[2] as usize],
        );
        let x = 0.4124564 * r + 0.3575761 * g + 0.1804375 * b;
        let y = 0.2126729 * r + 0.7151522 * g + 0.0721750 * b;
        let z = 0.0193339 * r + 0.1191920 * g + 0.9503041 * b;
        let (fx, fy, fz) = (lab_f(x / WHITE_X), lab_f(y), lab_f(z / WHITE_Z));
        Lab {
            l: 116.0 * fy - 16.0,
            a: 500.0 * (fx - fy),
            b: 200.0 * (fy - fz),
        }
    }
}
