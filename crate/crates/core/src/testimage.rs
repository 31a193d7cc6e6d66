//! Procedural base images: layered color waves plus soft blobs, enough
//! structure for pictorial matching without external assets.

use image::{Rgba, RgbaImage};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Wave {
    kx: f64,
    ky: f64,
    phase: f64,
    amp: [f64; 3],
}

struct Blob {
    cx: f64,
    cy: f64,
    radius: f64,
    color: [f64; 3],
}

pub fn procedural_image(width: u32, height: u32, seed: u64) -> RgbaImage {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let base: [f64; 3] = [
        rng.gen_range(60.0..190.0),
        rng.gen_range(60.0..190.0),
        rng.gen_range(60.0..190.0),
    ];
    let waves: Vec<Wave> = (0..10)
        .map(|i| {
            let cycles = rng.gen_range(1.0..4.0) * (1.0 + i as f64 * 1.5);
            let dir = rng.gen::<f64>() * std::f64::consts::TAU;
            let falloff = 1.0 / (1.0 + 0.25 * i as f64);
            Wave {
                kx: dir.cos() * cycles * std::f64::consts::TAU / width as f64,
                ky: dir.sin() * cycles * std::f64::consts::TAU / height as f64,
                phase: rng.gen::<f64>() * std::f64::consts::TAU,
                amp: [
                    rng.gen_range(-45.0..45.0) * falloff,
                    rng.gen_range(-45.0..45.0) * falloff,
                    rng.gen_range(-45.0..45.0) * falloff,
                ],
            }
        })
        .collect();
    let side = width.min(height) as f64;
    let blobs: Vec<Blob> = (0..24)
        .map(|_| Blob {
            cx: rng.gen::<f64>() * width as f64,
            cy: rng.gen::<f64>() * height as f64,
            radius: rng.gen_range(0.02..0.12) * side,
            color: [
                rng.gen_range(0.0..255.0),
                rng.gen_range(0.0..255.0),
                rng.gen_range(0.0..255.0),
            ],
        })
        .collect();
    RgbaImage::from_fn(width, height, |x, y| {
        let (fx, fy) = (x as f64, y as f64);
        let mut c = base;
        for w in &waves {
            let s = (w.kx * fx + w.ky * fy + w.phase).sin();
            for k in 0..3 {
                c[k] += w.amp[k] * s;
            }
        }
        for b in &blobs {
            let d = ((fx - b.cx).powi(2) + (fy - b.cy).powi(2)).sqrt() / b.radius;
            // smooth step edge, two pixels wide in relative terms
            let t = (1.0 - d).clamp(0.0, 0.08) / 0.08;
            if t > 0.0 {
                for k in 0..3 {
                    c[k] = c[k] * (1.0 - 0.85 * t) + b.color[k] * 0.85 * t;
                }
            }
        }
        let q = |v: f64| v.round().clamp(0.0, 255.0) as u8;
        Rgba([q(c[0]), q(c[1]), q(c[2]), 255])
    })
}
