use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Matching and scoring parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct CompatParams {
    /// Minimum edge length ratio `min(L_t, L_s) / max(L_t, L_s)`.
    pub gamma: f64,
    /// Gap (pixels) along the target edge's outward normal.
    pub gap: f64,
    pub patch_min: u32,
    pub patch_max: u32,
    pub stride: u32,
    pub p_norm: f64,
    pub lambda: f64,
    /// Per-patch normalized ΔE above which a patch counts as an exception.
    pub lambda_threshold: f64,
    /// Exception fraction above which `lambda` is applied.
    pub lambda_fraction: f64,
    /// Shared regions smaller than this (pixels) score 1.0.
    pub min_overlap: usize,
    pub seed: u64,
}

impl Default for CompatParams {
    fn default() -> Self {
        Self {
            gamma: 0.5,
            gap: 10.0,
            patch_min: 8,
            patch_max: 32,
            stride: 8,
            p_norm: 2.0,
            lambda: 2.0,
            lambda_threshold: 0.25,
            lambda_fraction: 0.05,
            min_overlap: 64,
            seed: 0,
        }
    }
}

impl CompatParams {
    pub fn validate(&self) -> Result<()> {
        let check = |ok: bool, msg: &str| if ok { Ok(()) } else { Err(Error::invalid(msg)) };
        check(self.gamma > 0.0 && self.gamma <= 1.0, "gamma must lie in (0, 1]")?;
        check(self.gap.is_finite() && self.gap >= 0.0, "gap must be non-negative")?;
        check(
            self.patch_min >= 1 && self.patch_min <= self.patch_max,
            "need 1 <= patch_min <= patch_max",
        )?;
        check(self.stride >= 1, "stride must be at least 1")?;
        check(
            self.p_norm >= 1.0 && self.p_norm.is_finite(),
            "p_norm must be finite and >= 1",
        )?;
        check(
            self.lambda >= 1.0 && self.lambda.is_finite(),
            "lambda must be finite and >= 1",
        )?;
        check(
            (0.0..=1.0).contains(&self.lambda_threshold),
            "lambda_threshold must lie in [0, 1]",
        )?;
        check(
            (0.0..=1.0).contains(&self.lambda_fraction),
            "lambda_fraction must lie in [0, 1]",
        )
    }
}
