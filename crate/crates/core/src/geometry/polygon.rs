use serde::{Deserialize, Serialize};

use super::contour::{closed_length, signed_area, Contour};
use super::point::{angle_between, point_segment_distance, wrap_angle, Point};
use crate::error::{Error, Result};

/// Polygonal approximation of a contour, oriented with positive signed area.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolygonApprox {
    pub vertices: Vec<Point>,
    pub perimeter: f64,
}

impl PolygonApprox {
    /// Builds a polygon from vertices, reorienting to positive signed area.
    pub fn new(mut vertices: Vec<Point>) -> Result<Self> {
        if vertices.len() < 3 {
            return Err(Error::DegeneratePolygon(vertices.len()));
        }
        if signed_area(&vertices) < 0.0 {
            vertices.reverse();
        }
        let perimeter = closed_length(&vertices);
        Ok(Self { vertices, perimeter })
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn signed_area(&self) -> f64 {
        signed_area(&self.vertices)
    }

    /// Area centroid of the polygon.
    pub fn centroid(&self) -> Point {
        let n = self.vertices.len();
        let (mut cx, mut cy, mut a) = (0.0, 0.0, 0.0);
        for i in 0..n {
            let (p, q) = (self.vertices[i], self.vertices[(i + 1) % n]);
            let c = p.cross(q);
            a += c;
            cx += (p.x + q.x) * c;
            cy += (p.y + q.y) * c;
        }
        if a.abs() < 1e-12 {
            let k = 1.0 / n as f64;
            return self.vertices.iter().fold(Point::ORIGIN, |acc, &p| acc + p * k);
        }
        Point::new(cx / (3.0 * a), cy / (3.0 * a))
    }

    pub fn base_edges(&self) -> Vec<Edge> {
        let n = self.vertices.len();
        (0..n)
            .map(|i| {
                Edge::new(
                    self.vertices[i],
                    self.vertices[(i + 1) % n],
                    EdgeKind::Base { index: i },
                )
            })
            .collect()
    }

    /// Distance from `p` to the polygon boundary.
    pub fn boundary_distance(&self, p: Point) -> f64 {
        let n = self.vertices.len();
        (0..n)
            .map(|i| point_segment_distance(p, self.vertices[i], self.vertices[(i + 1) % n]))
            .fold(f64::INFINITY, f64::min)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum EdgeKind {
    /// Edge `index` joins base vertices `index` and `index + 1`.
    Base { index: usize },
    /// Spans base edges `first`, `first + 1`, `first + 2` (cyclic).
    Augmented { first: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Edge {
    pub start: Point,
    pub end: Point,
    pub length: f64,
    /// Direction of travel in `[0, 2π)`.
    pub orientation: f64,
    pub kind: EdgeKind,
}

impl Edge {
    pub fn new(start: Point, end: Point, kind: EdgeKind) -> Self {
        let d = end - start;
        Self {
            start,
            end,
            length: d.norm(),
            orientation: wrap_angle(d.y.atan2(d.x)),
            kind,
        }
    }

    pub fn midpoint(&self) -> Point {
        self.start.midpoint(self.end)
    }

    pub fn is_augmented(&self) -> bool {
        matches!(self.kind, EdgeKind::Augmented { .. })
    }
}

/// Base polygon plus synthesized larger-scale edges. Base edges come first,
/// in vertex order, followed by augmented edges.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AugmentedPolygon {
    pub base: PolygonApprox,
    pub edges: Vec<Edge>,
}

impl AugmentedPolygon {
    pub fn base_edge_count(&self) -> usize {
        self.base.len()
    }

    pub fn augmented_count(&self) -> usize {
        self.edges.len() - self.base.len()
    }

    pub fn centroid(&self) -> Point {
        self.base.centroid()
    }
}

/// Indices kept by Ramer-Douglas-Peucker on the open chain `pts`
/// (endpoints always kept). Splits at the first point of maximal distance
/// when that distance exceeds `epsilon`.
pub fn rdp_open(pts: &[Point], epsilon: f64) -> Vec<usize> {
    let n = pts.len();
    if n <= 2 {
        return (0..n).collect();
    }
    let mut keep = vec![false; n];
    keep[0] = true;
    keep[n - 1] = true;
    let mut stack = vec![(0usize, n - 1)];
    while let Some((lo, hi)) = stack.pop() {
        if hi <= lo + 1 {
            continue;
        }
        let (a, b) = (pts[lo], pts[hi]);
        let mut best = (lo, -1.0f64);
        for (i, &p) in pts.iter().enumerate().take(hi).skip(lo + 1) {
            let d = point_segment_distance(p, a, b);
            if d > best.1 {
                best = (i, d);
            }
        }
        if best.1 > epsilon {
            keep[best.0] = true;
            stack.push((lo, best.0));
            stack.push((best.0, hi));
        }
    }
    (0..n).filter(|&i| keep[i]).collect()
}

/// RDP on a closed curve: anchors at point 0, splits at the point farthest
/// from it, and simplifies both halves as open chains. Returns kept indices.
pub fn rdp_closed(pts: &[Point], epsilon: f64) -> Vec<usize> {
    let n = pts.len();
    if n <= 3 {
        return (0..n).collect();
    }
    let mut far = (0usize, -1.0f64);
    for (i, p) in pts.iter().enumerate().skip(1) {
        let d = p.distance(pts[0]);
        if d > far.1 {
            far = (i, d);
        }
    }
    let f = far.0;
    let first = rdp_open(&pts[..=f], epsilon);
    let mut second_chain: Vec<Point> = pts[f..].to_vec();
    second_chain.push(pts[0]);
    let second = rdp_open(&second_chain, epsilon);

    let mut out = first;
    // skip the shared split point and the wrapped-around anchor
    out.extend(second.into_iter().filter(|&i| i != 0 && i != n - f).map(|i| i + f));
    out
}

/// Approximates a contour with RDP at tolerance `ε = α·p`, where `p` is the
/// perimeter of the resulting polygon.
///
/// A first pass at `α·perimeter(contour)` gives a polygon of perimeter `p1`;
/// the second pass runs at `α·p1`. The second vertex set contains the first,
/// so its perimeter is at least `p1` and every contour point lies within
/// `α·p` of the output.
pub fn polygonize(contour: &Contour, alpha: f64) -> Result<PolygonApprox> {
    if contour.len() < 3 {
        return Err(Error::DegenerateContour(contour.len()));
    }
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::invalid("alpha must lie in (0, 1)"));
    }
    let mut pts = contour.points.clone();
    if signed_area(&pts) < 0.0 {
        pts.reverse();
    }
    let first = rdp_closed(&pts, alpha * closed_length(&pts));
    let p1 = closed_length(&first.iter().map(|&i| pts[i]).collect::<Vec<_>>());
    let mut keep = rdp_closed(&pts, alpha * p1);
    if keep.len() < 3 {
        // thin sliver: add the point farthest from the current chord
        let (a, b) = (pts[keep[0]], pts[*keep.last().unwrap()]);
        let extra = (0..pts.len()).filter(|i| !keep.contains(i)).max_by(|&i, &j| {
            point_segment_distance(pts[i], a, b)
                .total_cmp(&point_segment_distance(pts[j], a, b))
                .then(j.cmp(&i))
        });
        if let Some(e) = extra {
            keep.push(e);
            keep.sort_unstable();
        }
    }
    let vertices: Vec<Point> = keep.iter().map(|&i| pts[i]).collect();
    if vertices.len() < 3 || signed_area(&vertices).abs() < 1e-9 {
        return Err(Error::DegeneratePolygon(vertices.len()));
    }
    PolygonApprox::new(vertices)
}

/// Turning angle at vertex `i`: the angle between the incoming and outgoing
/// edge directions. Zero for collinear vertices.
pub fn turning_angle(vertices: &[Point], i: usize) -> f64 {
    let n = vertices.len();
    let prev = vertices[(i + n - 1) % n];
    let cur = vertices[i];
    let next = vertices[(i + 1) % n];
    let (u, v) = (cur - prev, next - cur);
    let denom = u.norm() * v.norm();
    if denom == 0.0 {
        return 0.0;
    }
    (u.dot(v) / denom).clamp(-1.0, 1.0).acos()
}

/// Repeatedly drops the vertex with the smallest turning angle while that
/// angle is below `delta_alpha`. Never goes below three vertices.
pub fn simplify_collinear(poly: &PolygonApprox, delta_alpha: f64) -> Result<PolygonApprox> {
    if !(delta_alpha > 0.0) {
        return Err(Error::invalid("delta_alpha must be positive"));
    }
    let mut v = poly.vertices.clone();
    // coincident neighbours carry no direction
    v.dedup();
    while v.len() > 3 && v.first() == v.last() {
        v.pop();
    }
    while v.len() > 3 {
        let (idx, ang) = (0..v.len())
            .map(|i| (i, turning_angle(&v, i)))
            .fold((0, f64::INFINITY), |best, cur| if cur.1 < best.1 { cur } else { best });
        if ang >= delta_alpha {
            break;
        }
        v.remove(idx);
    }
    PolygonApprox::new(v)
}

/// Adds an edge from `e1.start` to `e3.end` for every cyclic triple of
/// consecutive base edges whose middle edge is shorter than `min_length`
/// and whose outer edges differ in direction by less than `delta_alpha`.
/// Base edges are kept unchanged.
pub fn augment_edges(poly: &PolygonApprox, min_length: f64, delta_alpha: f64) -> AugmentedPolygon {
    let base = poly.base_edges();
    let n = base.len();
    let mut edges = base.clone();
    for i in 0..n {
        let (e1, e2, e3) = (&base[i], &base[(i + 1) % n], &base[(i + 2) % n]);
        if e2.length < min_length && angle_between(e1.orientation, e3.orientation) < delta_alpha {
            let span = Edge::new(e1.start, e3.end, EdgeKind::Augmented { first: i });
            // a triangle's triple wraps onto itself
            if span.length > 0.0 {
                edges.push(span);
            }
        }
    }
    AugmentedPolygon {
        base: poly.clone(),
        edges,
    }
}

/// Unit normal of `edge` pointing away from the interior of `poly`.
pub fn outward_normal(edge: &Edge, poly: &PolygonApprox) -> Point {
    let d = (edge.end - edge.start) * (1.0 / edge.length);
    let n = Point::new(d.y, -d.x);
    if poly.signed_area() < 0.0 {
        -n
    } else {
        n
    }
}
