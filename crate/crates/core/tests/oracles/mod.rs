//! Independent brute-force reference implementations shared by the
//! integration and acceptance tests.
#![allow(dead_code)]

use polex_core::geometry::Point;

fn seg_dist(p: Point, a: Point, b: Point) -> f64 {
    let (abx, aby) = (b.x - a.x, b.y - a.y);
    let len2 = abx * abx + aby * aby;
    if len2 == 0.0 {
        return (p.x - a.x).hypot(p.y - a.y);
    }
    let t = (((p.x - a.x) * abx + (p.y - a.y) * aby) / len2).clamp(0.0, 1.0);
    let (cx, cy) = (a.x + abx * t, a.y + aby * t);
    (p.x - cx).hypot(p.y - cy)
}

/// Textbook recursive RDP over the index range `[lo, hi]`.
fn rdp_rec(pts: &[Point], lo: usize, hi: usize, eps: f64, out: &mut Vec<usize>) {
    let mut idx = lo;
    let mut dmax = -1.0;
    for i in lo + 1..hi {
        let d = seg_dist(pts[i], pts[lo], pts[hi]);
        if d > dmax {
            dmax = d;
            idx = i;
        }
    }
    if hi > lo + 1 && dmax > eps {
        rdp_rec(pts, lo, idx, eps, out);
        rdp_rec(pts, idx, hi, eps, out);
    } else {
        out.push(lo);
    }
}

pub fn naive_rdp_open(pts: &[Point], eps: f64) -> Vec<usize> {
    if pts.len() <= 2 {
        return (0..pts.len()).collect();
    }
    let mut out = Vec::new();
    rdp_rec(pts, 0, pts.len() - 1, eps, &mut out);
    out.push(pts.len() - 1);
    out
}

/// Closed-curve RDP: split at the point farthest from point 0.
pub fn naive_rdp_closed(pts: &[Point], eps: f64) -> Vec<usize> {
    let n = pts.len();
    if n <= 3 {
        return (0..n).collect();
    }
    let mut f = 1;
    for i in 1..n {
        let d = |j: usize| (pts[j].x - pts[0].x).hypot(pts[j].y - pts[0].y);
        if d(i) > d(f) {
            f = i;
        }
    }
    let mut ring: Vec<Point> = pts.to_vec();
    ring.push(pts[0]);
    let mut out = Vec::new();
    rdp_rec(&ring, 0, f, eps, &mut out);
    rdp_rec(&ring, f, n, eps, &mut out);
    out
}

/// Nearest site to each pixel center, ties to the lowest index.
pub fn brute_voronoi(sites: &[Point], w: u32, h: u32) -> Vec<u32> {
    let mut out = Vec::with_capacity((w * h) as usize);
    for y in 0..h {
        for x in 0..w {
            let (cx, cy) = (x as f64 + 0.5, y as f64 + 0.5);
            let mut best = (0u32, f64::INFINITY);
            for (i, s) in sites.iter().enumerate() {
                let d = (cx - s.x) * (cx - s.x) + (cy - s.y) * (cy - s.y);
                if d < best.1 {
                    best = (i as u32, d);
                }
            }
            out.push(best.0);
        }
    }
    out
}

/// Per-pixel erosion: a pixel survives unless some pixel on a label
/// boundary lies strictly inside its noise-scaled radius.
pub fn brute_erosion(labels: &[u32], noise: &[f64], w: u32, h: u32, rate: f64) -> Vec<u32> {
    let idx = |x: i64, y: i64| (y * w as i64 + x) as usize;
    let on_boundary = |x: i64, y: i64| {
        let l = labels[idx(x, y)];
        [(-1, 0), (1, 0), (0, -1), (0, 1)].iter().any(|&(dx, dy)| {
            let (nx, ny) = (x + dx, y + dy);
            nx >= 0 && ny >= 0 && nx < w as i64 && ny < h as i64 && labels[idx(nx, ny)] != l
        })
    };
    let boundary: Vec<(i64, i64)> = (0..h as i64)
        .flat_map(|y| (0..w as i64).map(move |x| (x, y)))
        .filter(|&(x, y)| on_boundary(x, y))
        .collect();
    let mut out = labels.to_vec();
    for y in 0..h as i64 {
        for x in 0..w as i64 {
            let hit = boundary.iter().any(|&(bx, by)| {
                let r = noise[idx(bx, by)] * rate;
                let d = (((x - bx) * (x - bx) + (y - by) * (y - by)) as f64).sqrt();
                d < r
            });
            if hit {
                out[idx(x, y)] = u32::MAX;
            }
        }
    }
    out
}

/// Label pairs that touch through a 4-neighbor step.
pub fn raster_adjacency(labels: &[u32], w: u32, h: u32) -> std::collections::BTreeSet<(u32, u32)> {
    let mut s = std::collections::BTreeSet::new();
    for y in 0..h {
        for x in 0..w {
            let l = labels[(y * w + x) as usize];
            for (nx, ny) in [(x + 1, y), (x, y + 1)] {
                if nx < w && ny < h {
                    let m = labels[(ny * w + nx) as usize];
                    if m != l {
                        s.insert((l.min(m), l.max(m)));
                    }
                }
            }
        }
    }
    s
}

/// Exhaustive ratio test over every edge pair.
pub fn brute_candidate_edges(lt: &[f64], ls: &[f64], gamma: f64) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 0..lt.len() {
        for j in 0..ls.len() {
            let (short, long) = if lt[i] < ls[j] { (lt[i], ls[j]) } else { (ls[j], lt[i]) };
            if short / long >= gamma {
                out.push((i, j));
            }
        }
    }
    out
}

/// Shared region by testing every target-canvas pixel without windowing.
pub fn brute_shared_region(
    band_t: &polex_core::extrapolation::ExtrapolatedBand,
    band_s: &polex_core::extrapolation::ExtrapolatedBand,
    t: &polex_core::geometry::RigidTransform2D,
) -> Vec<(u32, u32)> {
    let inv = t.inverse();
    let (w, h) = band_t.mask.dimensions();
    let mut out = Vec::new();
    for y in 0..h {
        for x in 0..w {
            if !band_t.mask.get(x as i64, y as i64) {
                continue;
            }
            let local = Point::new(x as f64 - band_t.radius as f64, y as f64 - band_t.radius as f64);
            let q = inv.apply(local);
            let (sx, sy) = (
                q.x.round() as i64 + band_s.radius as i64,
                q.y.round() as i64 + band_s.radius as i64,
            );
            if band_s.mask.get(sx, sy) {
                out.push((x, y));
            }
        }
    }
    out
}

/// Mean ΔE over target-canvas `pixels`, recomputing every color from the
/// band images.
pub fn naive_patch_delta_e(
    band_t: &polex_core::extrapolation::ExtrapolatedBand,
    band_s: &polex_core::extrapolation::ExtrapolatedBand,
    t: &polex_core::geometry::RigidTransform2D,
    pixels: &[(u32, u32)],
) -> f64 {
    use polex_core::color::srgb_to_lab;
    let inv = t.inverse();
    let mut total = 0.0;
    for &(x, y) in pixels {
        let c = band_t.image.get_pixel(x, y).0;
        let lt = srgb_to_lab([c[0], c[1], c[2]]);
        let local = Point::new(x as f64 - band_t.radius as f64, y as f64 - band_t.radius as f64);
        let q = inv.apply(local);
        let (px, py) = (q.x + band_s.radius as f64, q.y + band_s.radius as f64);
        let (fx0, fy0) = (px.floor(), py.floor());
        let (fx, fy) = (px - fx0, py - fy0);
        let mut acc = [0.0f64; 3];
        let mut wsum = 0.0;
        let corners = [
            (0i64, 0i64, (1.0 - fx) * (1.0 - fy)),
            (1, 0, fx * (1.0 - fy)),
            (0, 1, (1.0 - fx) * fy),
            (1, 1, fx * fy),
        ];
        for (dx, dy, wgt) in corners {
            let (sx, sy) = (fx0 as i64 + dx, fy0 as i64 + dy);
            if wgt > 0.0 && band_s.mask.get(sx, sy) {
                let s = band_s.image.get_pixel(sx as u32, sy as u32).0;
                for k in 0..3 {
                    acc[k] += wgt * s[k] as f64;
                }
                wsum += wgt;
            }
        }
        let rgb = if wsum > 0.0 {
            acc.map(|v| (v / wsum).round().clamp(0.0, 255.0) as u8)
        } else {
            let (nx, ny) = (px.round() as u32, py.round() as u32);
            let s = band_s.image.get_pixel(nx, ny).0;
            [s[0], s[1], s[2]]
        };
        let ls = srgb_to_lab(rgb);
        total += ((lt.l - ls.l).powi(2) + (lt.a - ls.a).powi(2) + (lt.b - ls.b).powi(2)).sqrt();
    }
    total / pixels.len() as f64
}
