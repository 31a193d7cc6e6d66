//! Boundary extraction, polygonal approximation, multiscale edge
//! augmentation and rigid 2D transforms.

mod contour;
mod point;
mod polygon;
mod transform;
mod warp;

pub use contour::{closed_length, extract_contour, signed_area, trace_boundary, Contour};
pub use point::{angle_between, point_segment_distance, wrap_angle, Point};
pub use polygon::{
    augment_edges, outward_normal, polygonize, rdp_closed, rdp_open, simplify_collinear, turning_angle,
    AugmentedPolygon, Edge, EdgeKind, PolygonApprox,
};
pub use transform::RigidTransform2D;
pub use warp::{sample_bilinear, transformed_box, warp_image, warp_mask, ApplyTransform};

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::raster::BinaryMask;

/// Parameters of the mask → augmented polygon pipeline.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct GeometryParams {
    /// Gaussian σ (pixels) applied before re-binarization.
    pub k_smooth: f64,
    /// RDP tolerance factor: ε = α · perimeter.
    pub alpha: f64,
    /// Turning-angle threshold (radians) for collinear simplification and
    /// the outer-edge test of augmentation.
    pub delta_alpha: f64,
    /// Middle edges shorter than this (pixels) are candidates for augmentation.
    pub min_edge_length: f64,
}

impl Default for GeometryParams {
    fn default() -> Self {
        Self {
            k_smooth: 3.0,
            alpha: 0.005,
            delta_alpha: 10f64.to_radians(),
            min_edge_length: 15.0,
        }
    }
}

impl GeometryParams {
    pub fn validate(&self) -> Result<()> {
        let ok = |v: f64| v.is_finite() && v >= 0.0;
        if !(ok(self.k_smooth) && ok(self.alpha) && ok(self.delta_alpha) && ok(self.min_edge_length)) {
            return Err(crate::Error::invalid(
                "geometry parameters must be finite and non-negative",
            ));
        }
        Ok(())
    }
}

/// Full shape pipeline: contour, RDP, collinear simplification, augmentation.
pub fn fragment_polygon(mask: &BinaryMask, params: &GeometryParams) -> Result<AugmentedPolygon> {
    let contour = extract_contour(mask, params.k_smooth)?;
    let poly = polygonize(&contour, params.alpha)?;
    let poly = simplify_collinear(&poly, params.delta_alpha)?;
    Ok(augment_edges(&poly, params.min_edge_length, params.delta_alpha))
}
