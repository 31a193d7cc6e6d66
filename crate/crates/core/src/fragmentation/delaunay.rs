use std::collections::BTreeSet;

use delaunator::{triangulate, EMPTY};

use crate::error::{Error, Result};
use crate::geometry::Point;

/// Unordered site pair stored as `(low, high)`.
pub type SitePair = (u32, u32);

fn pair(a: usize, b: usize) -> SitePair {
    (a.min(b) as u32, a.max(b) as u32)
}

fn dl(p: &Point) -> delaunator::Point {
    delaunator::Point { x: p.x, y: p.y }
}

fn circumcenter(a: Point, b: Point, c: Point) -> Point {
    let d = 2.0 * (a.x * (b.y - c.y) + b.x * (c.y - a.y) + c.x * (a.y - b.y));
    let (a2, b2, c2) = (a.norm_sq(), b.norm_sq(), c.norm_sq());
    Point::new(
        (a2 * (b.y - c.y) + b2 * (c.y - a.y) + c2 * (a.y - b.y)) / d,
        (a2 * (c.x - b.x) + b2 * (a.x - c.x) + c2 * (b.x - a.x)) / d,
    )
}

/// Neighbor pairs of the Delaunay triangulation of `sites`.
///
/// Two sites are always adjacent. Three or more all-collinear sites are an
/// error.
pub fn delaunay_adjacency(sites: &[Point]) -> Result<Vec<SitePair>> {
    Ok(delaunay_edges(sites)?
        .into_iter()
        .map(|e| e.pair)
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect())
}

/// A Delaunay edge with the dual Voronoi edge as a segment `from`→`to`.
/// Hull edges have an unbounded Voronoi ray, truncated at `to`.
#[derive(Debug, Clone, Copy)]
struct DualEdge {
    pair: SitePair,
    from: Point,
    to: Point,
}

fn delaunay_edges(sites: &[Point]) -> Result<Vec<DualEdge>> {
    if sites.len() < 2 {
        return Err(Error::invalid("adjacency needs at least two sites"));
    }
    if sites.len() == 2 {
        let (a, b) = (sites[0], sites[1]);
        let mid = a.midpoint(b);
        let dir = Point::new(-(b - a).y, (b - a).x) * (1.0 / (b - a).norm());
        let far = 1e7;
        return Ok(vec![DualEdge {
            pair: (0, 1),
            from: mid - dir * far,
            to: mid + dir * far,
        }]);
    }
    let pts: Vec<delaunator::Point> = sites.iter().map(dl).collect();
    let tri = triangulate(&pts);
    if tri.triangles.is_empty() {
        return Err(Error::CollinearSites);
    }
    let t = &tri.triangles;
    let centers: Vec<Point> = t
        .chunks_exact(3)
        .map(|c| circumcenter(sites[c[0]], sites[c[1]], sites[c[2]]))
        .collect();
    let span = sites
        .iter()
        .chain(centers.iter())
        .map(|p| p.x.abs().max(p.y.abs()))
        .fold(0.0, f64::max);
    let far = 4.0 * span + 1e6;
    let mut out = Vec::new();
    for e in 0..t.len() {
        let next = if e % 3 == 2 { e - 2 } else { e + 1 };
        let (i, j) = (t[e], t[next]);
        let opp = tri.halfedges[e];
        if opp != EMPTY && opp < e {
            continue;
        }
        let c = centers[e / 3];
        let to = if opp == EMPTY {
            let k = t[if e % 3 == 0 { e + 2 } else { e - 1 }];
            let d = sites[j] - sites[i];
            let mut n = Point::new(d.y, -d.x) * (1.0 / d.norm());
            if n.dot(sites[k] - sites[i]) > 0.0 {
                n = -n;
            }
            c + n * far
        } else {
            centers[opp / 3]
        };
        out.push(DualEdge {
            pair: pair(i, j),
            from: c,
            to,
        });
    }
    Ok(out)
}

/// Liang–Barsky: length of the part of segment `a`-`b` inside the box.
fn clipped_length(a: Point, b: Point, w: f64, h: f64) -> f64 {
    let d = b - a;
    let (mut t0, mut t1) = (0.0f64, 1.0f64);
    for (p, q) in [(-d.x, a.x), (d.x, w - a.x), (-d.y, a.y), (d.y, h - a.y)] {
        if p == 0.0 {
            if q < 0.0 {
                return 0.0;
            }
        } else {
            let r = q / p;
            if p < 0.0 {
                t0 = t0.max(r);
            } else {
                t1 = t1.min(r);
            }
        }
    }
    if t1 <= t0 {
        0.0
    } else {
        (t1 - t0) * d.norm()
    }
}

/// Delaunay pairs whose shared Voronoi boundary crosses the image
/// rectangle `[0, w] × [0, h]` with positive length. Hull pairs whose
/// regions only meet outside the image are dropped.
pub fn image_adjacency(sites: &[Point], extent: (u32, u32)) -> Result<Vec<SitePair>> {
    let (w, h) = (extent.0 as f64, extent.1 as f64);
    Ok(delaunay_edges(sites)?
        .into_iter()
        .filter(|e| clipped_length(e.from, e.to, w, h) > 1e-9)
        .map(|e| e.pair)
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect())
}
