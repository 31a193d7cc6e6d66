use serde::{Deserialize, Serialize};

use super::point::{wrap_angle, Point};

/// Rigid motion: rotate by `theta` about `center`, then translate by `(tx, ty)`.
///
/// `p' = R(theta) (p - center) + center + t`
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RigidTransform2D {
    pub theta: f64,
    pub tx: f64,
    pub ty: f64,
    pub center: Point,
}

impl Default for RigidTransform2D {
    fn default() -> Self {
        Self::identity()
    }
}

impl RigidTransform2D {
    pub const fn identity() -> Self {
        Self {
            theta: 0.0,
            tx: 0.0,
            ty: 0.0,
            center: Point::ORIGIN,
        }
    }

    pub const fn new(theta: f64, tx: f64, ty: f64, center: Point) -> Self {
        Self { theta, tx, ty, center }
    }

    pub const fn translation(tx: f64, ty: f64) -> Self {
        Self::new(0.0, tx, ty, Point::ORIGIN)
    }

    pub fn translation_vector(&self) -> Point {
        Point::new(self.tx, self.ty)
    }

    /// Offset `b` of the equivalent linear form `p' = R p + b`.
    fn offset(&self) -> Point {
        self.center + self.translation_vector() - self.center.rotated(self.theta)
    }

    /// Builds the transform `p -> R(theta) p + offset` expressed about `center`.
    fn from_linear(theta: f64, offset: Point, center: Point) -> Self {
        let t = offset - center + center.rotated(theta);
        Self::new(theta, t.x, t.y, center)
    }

    #[inline]
    pub fn apply(&self, p: Point) -> Point {
        (p - self.center).rotated(self.theta) + self.center + self.translation_vector()
    }

    pub fn inverse(&self) -> Self {
        Self::new(-self.theta, -self.tx, -self.ty, self.center + self.translation_vector())
    }

    /// `self ∘ inner`: applies `inner` first. The result rotates about `inner.center`.
    pub fn compose(&self, inner: &RigidTransform2D) -> Self {
        let theta = self.theta + inner.theta;
        let offset = inner.offset().rotated(self.theta) + self.offset();
        Self::from_linear(theta, offset, inner.center)
    }

    /// Same motion re-expressed with a different rotation center.
    pub fn with_center(&self, center: Point) -> Self {
        Self::from_linear(self.theta, self.offset(), center)
    }

    /// Rotation angle folded into `[0, 2π)`.
    pub fn rotation(&self) -> f64 {
        wrap_angle(self.theta)
    }

    pub fn is_finite(&self) -> bool {
        self.theta.is_finite() && self.tx.is_finite() && self.ty.is_finite() && self.center.is_finite()
    }

    /// True when the rotation is a multiple of a quarter turn (up to `1e-9` rad).
    pub fn is_axis_aligned(&self) -> bool {
        let q = self.theta / std::f64::consts::FRAC_PI_2;
        (q - q.round()).abs() < 1e-9
    }
}
