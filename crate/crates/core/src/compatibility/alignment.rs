use crate::error::{Error, Result};
use crate::geometry::{outward_normal, wrap_angle, AugmentedPolygon, Edge, Point, RigidTransform2D};

/// Index pairs `(target edge, source edge)` whose length ratio
/// `min / max` is at least `gamma`. Base and augmented edges both take part.
pub fn candidate_edges(target: &AugmentedPolygon, source: &AugmentedPolygon, gamma: f64) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for (i, et) in target.edges.iter().enumerate() {
        for (j, es) in source.edges.iter().enumerate() {
            if et.length.min(es.length) / et.length.max(es.length) >= gamma {
                out.push((i, j));
            }
        }
    }
    out
}

/// Rigid motion placing the source so that `edge_s` faces `edge_t`
/// anti-parallel, with its midpoint at the target midpoint pushed `gap`
/// pixels along the target's outward normal. Rotates about `source_center`.
pub fn alignment_from_edges(
    edge_t: &Edge,
    target: &AugmentedPolygon,
    edge_s: &Edge,
    source_center: Point,
    gap: f64,
) -> Result<RigidTransform2D> {
    if !(edge_t.length > 0.0) || !(edge_s.length > 0.0) {
        return Err(Error::ZeroLengthEdge);
    }
    let theta = wrap_angle(edge_t.orientation + std::f64::consts::PI - edge_s.orientation);
    let m_off = edge_t.midpoint() + outward_normal(edge_t, &target.base) * gap;
    let m_rot = (edge_s.midpoint() - source_center).rotated(theta) + source_center;
    let t = m_off - m_rot;
    Ok(RigidTransform2D::new(theta, t.x, t.y, source_center))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{augment_edges, EdgeKind, PolygonApprox};
    use std::f64::consts::PI;

    fn square(x0: f64, y0: f64, s: f64) -> AugmentedPolygon {
        let poly = PolygonApprox::new(vec![
            Point::new(x0, y0),
            Point::new(x0 + s, y0),
            Point::new(x0 + s, y0 + s),
            Point::new(x0, y0 + s),
        ])
        .unwrap();
        augment_edges(&poly, 0.0, 0.1)
    }

    fn edge_with_angle(theta: f64) -> Edge {
        Edge::new(
            Point::ORIGIN,
            Point::new(theta.cos(), theta.sin()) * 10.0,
            EdgeKind::Base { index: 0 },
        )
    }

    #[test]
    fn ratio_test_is_inclusive() {
        let long = square(0.0, 0.0, 100.0);
        let half = square(0.0, 0.0, 50.0);
        let short = square(0.0, 0.0, 49.0);
        assert_eq!(candidate_edges(&long, &half, 0.5).len(), 16);
        assert!(candidate_edges(&long, &short, 0.5).is_empty());
    }

    #[test]
    fn rotation_formula() {
        let t = square(0.0, 0.0, 10.0);
        let a = alignment_from_edges(&edge_with_angle(0.0), &t, &edge_with_angle(PI), Point::ORIGIN, 0.0).unwrap();
        assert!(a.theta.abs() < 1e-12);
        let b = alignment_from_edges(
            &edge_with_angle(PI / 2.0),
            &t,
            &edge_with_angle(0.0),
            Point::ORIGIN,
            0.0,
        )
        .unwrap();
        assert!((b.theta - 3.0 * PI / 2.0).abs() < 1e-12);
    }

    #[test]
    fn midpoints_meet_and_edges_oppose() {
        let t = square(0.0, 0.0, 40.0);
        let s = square(5.0, -3.0, 30.0);
        let c = s.centroid();
        for et in &t.edges {
            for es in &s.edges {
                let a = alignment_from_edges(et, &t, es, c, 10.0).unwrap();
                let m_off = et.midpoint() + outward_normal(et, &t.base) * 10.0;
                assert!(a.apply(es.midpoint()).distance(m_off) < 1e-6);
                let d = a.apply(es.end) - a.apply(es.start);
                let angle = wrap_angle(d.y.atan2(d.x));
                let diff = wrap_angle(angle - et.orientation - PI);
                assert!(diff.min(2.0 * PI - diff) < 1e-9);
            }
        }
    }

    #[test]
    fn zero_length_edge_rejected() {
        let t = square(0.0, 0.0, 10.0);
        let mut e = edge_with_angle(0.0);
        e.length = 0.0;
        assert!(alignment_from_edges(&t.edges[0], &t, &e, Point::ORIGIN, 1.0).is_err());
    }
}
