//! Pairwise pose errors, relative position score, and neighbor
//! precision/recall for assemblies.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{Point, RigidTransform2D};
use crate::raster::BinaryMask;

/// Distance between the source centroid placed by `pred` and by `gt`.
pub fn rmse_translation(pred: &RigidTransform2D, gt: &RigidTransform2D, source_centroid: Point) -> f64 {
    pred.apply(source_centroid).distance(gt.apply(source_centroid))
}

/// Periodic angle difference in `[0, π]`.
pub fn rmse_rotation(theta_p: f64, theta_g: f64) -> f64 {
    let tau = std::f64::consts::TAU;
    let d = (theta_p - theta_g).rem_euclid(tau);
    d.min(tau - d)
}

/// Fraction of the source mask covered by its predicted placement, measured
/// in the source's ground-truth frame: each source pixel is moved by
/// `gt⁻¹ ∘ pred`, rounded, and tested against the mask.
pub fn relative_position_score(
    pred: &RigidTransform2D,
    gt: &RigidTransform2D,
    source_mask: &BinaryMask,
) -> Result<f64> {
    let area = source_mask.count();
    if area == 0 {
        return Err(Error::EmptyMask);
    }
    let rel = gt.inverse().compose(pred);
    let hits = source_mask
        .iter_set()
        .filter(|&(x, y)| {
            let q = rel.apply(Point::new(x as f64, y as f64));
            source_mask.get(q.x.round() as i64, q.y.round() as i64)
        })
        .count();
    Ok(hits as f64 / area as f64)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PairEvaluation {
    pub rmse_t: f64,
    pub rmse_r: f64,
    pub s_rel: f64,
}

/// All three pairwise measures; poses map source-local coordinates into the
/// anchored target frame.
pub fn evaluate_pair(
    pred: &RigidTransform2D,
    gt: &RigidTransform2D,
    source_mask: &BinaryMask,
    source_centroid: Point,
) -> Result<PairEvaluation> {
    Ok(PairEvaluation {
        rmse_t: rmse_translation(pred, gt, source_centroid),
        rmse_r: rmse_rotation(pred.theta, gt.theta),
        s_rel: relative_position_score(pred, gt, source_mask)?,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NeighborScores {
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
    /// Set when a ratio was undefined (empty set) and reported as 1.0.
    pub vacuous: bool,
}

/// Boundary pixel centers of `mask` moved by `pose`.
pub fn placed_outline(mask: &BinaryMask, pose: &RigidTransform2D) -> Vec<Point> {
    mask.iter_set()
        .filter(|&(x, y)| {
            let (x, y) = (x as i64, y as i64);
            !(mask.get(x - 1, y) && mask.get(x + 1, y) && mask.get(x, y - 1) && mask.get(x, y + 1))
        })
        .map(|(x, y)| pose.apply(Point::new(x as f64, y as f64)))
        .collect()
}

fn bounds(pts: &[Point]) -> (Point, Point) {
    pts.iter().fold(
        (
            Point::new(f64::INFINITY, f64::INFINITY),
            Point::new(f64::NEG_INFINITY, f64::NEG_INFINITY),
        ),
        |(lo, hi), p| {
            (
                Point::new(lo.x.min(p.x), lo.y.min(p.y)),
                Point::new(hi.x.max(p.x), hi.y.max(p.y)),
            )
        },
    )
}

/// True when some pixel center of `a` lies within `tau` of one of `b`.
pub fn outlines_within(a: &[Point], b: &[Point], tau: f64) -> bool {
    if a.is_empty() || b.is_empty() {
        return false;
    }
    let ((alo, ahi), (blo, bhi)) = (bounds(a), bounds(b));
    if alo.x - tau > bhi.x || blo.x - tau > ahi.x || alo.y - tau > bhi.y || blo.y - tau > ahi.y {
        return false;
    }
    let t2 = tau * tau;
    a.iter().any(|p| {
        p.x >= blo.x - tau
            && p.x <= bhi.x + tau
            && p.y >= blo.y - tau
            && p.y <= bhi.y + tau
            && b.iter().any(|q| (*p - *q).norm_sq() <= t2)
    })
}

/// Predicted adjacency of placed fragments: pairs `(lo id, hi id)` whose
/// masks come within `tau` pixels.
pub fn predicted_adjacency(placed: &[(u32, &BinaryMask, RigidTransform2D)], tau: f64) -> BTreeSet<(u32, u32)> {
    let outlines: Vec<(u32, Vec<Point>)> = placed
        .iter()
        .map(|(id, m, pose)| (*id, placed_outline(m, pose)))
        .collect();
    let mut out = BTreeSet::new();
    for i in 0..outlines.len() {
        for j in i + 1..outlines.len() {
            if outlines_within(&outlines[i].1, &outlines[j].1, tau) {
                let (a, b) = (outlines[i].0, outlines[j].0);
                out.insert((a.min(b), a.max(b)));
            }
        }
    }
    out
}

/// Precision, recall and F1 of the adjacency implied by `placed` against
/// ground-truth pairs. Empty denominators count as 1.0 and set `vacuous`.
pub fn neighbor_prf(
    placed: &[(u32, &BinaryMask, RigidTransform2D)],
    gt_pairs: &[(u32, u32)],
    tau: f64,
) -> NeighborScores {
    let predicted = predicted_adjacency(placed, tau);
    let truth: BTreeSet<(u32, u32)> = gt_pairs.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
    prf(&predicted, &truth)
}

pub fn prf(predicted: &BTreeSet<(u32, u32)>, truth: &BTreeSet<(u32, u32)>) -> NeighborScores {
    let hits = predicted.intersection(truth).count() as f64;
    let mut vacuous = false;
    let precision = if predicted.is_empty() {
        vacuous = true;
        1.0
    } else {
        hits / predicted.len() as f64
    };
    let recall = if truth.is_empty() {
        vacuous = true;
        1.0
    } else {
        hits / truth.len() as f64
    };
    let f1 = if precision + recall > 0.0 {
        2.0 * precision * recall / (precision + recall)
    } else {
        0.0
    };
    NeighborScores {
        precision,
        recall,
        f1,
        vacuous,
    }
}

/// Default contact threshold for a gap `g`.
pub fn default_contact_threshold(gap: f64) -> f64 {
    2.0 * gap + 2.0
}
