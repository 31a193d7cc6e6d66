use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::alignment::{alignment_from_edges, candidate_edges};
use super::params::CompatParams;
use super::region::align_bands;
use super::scoring::{aggregate_score, patch_dissimilarity, sample_patch_pairs};
use crate::color::LabConverter;
use crate::error::Result;
use crate::extrapolation::ExtrapolatedBand;
use crate::fragmentation::Fragment;
use crate::geometry::{fragment_polygon, AugmentedPolygon, GeometryParams, Point, RigidTransform2D};
use crate::raster::BinaryMask;

/// Fragment with its boundary polygon and band, ready for matching.
#[derive(Debug, Clone)]
pub struct PreparedFragment {
    pub id: u32,
    pub mask: BinaryMask,
    /// Local-frame mask centroid; alignment rotations are about this point.
    pub centroid: Point,
    pub polygon: AugmentedPolygon,
    pub band: Option<ExtrapolatedBand>,
}

impl PreparedFragment {
    pub fn new(fragment: &Fragment, band: Option<ExtrapolatedBand>, geometry: &GeometryParams) -> Result<Self> {
        Ok(Self {
            id: fragment.id,
            mask: fragment.mask.clone(),
            centroid: fragment.centroid(),
            polygon: fragment_polygon(&fragment.mask, geometry)?,
            band,
        })
    }

    pub fn area(&self) -> usize {
        self.mask.count()
    }
}

/// Placement of a source relative to a target, mapping source-local
/// coordinates into the target's local frame.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AlignmentCandidate {
    pub transform: RigidTransform2D,
    pub target_edge: usize,
    pub source_edge: usize,
    /// Compatibility score; `None` before scoring.
    pub score: Option<f64>,
    pub patches: usize,
    /// Shared band region size in pixels.
    pub overlap: usize,
}

/// All admissible configurations, unscored, in edge-pair order.
pub fn enumerate_alignments(
    target: &PreparedFragment,
    source: &PreparedFragment,
    params: &CompatParams,
) -> Result<Vec<AlignmentCandidate>> {
    candidate_edges(&target.polygon, &source.polygon, params.gamma)
        .into_iter()
        .map(|(i, j)| {
            let transform = alignment_from_edges(
                &target.polygon.edges[i],
                &target.polygon,
                &source.polygon.edges[j],
                source.centroid,
                params.gap,
            )?;
            Ok(AlignmentCandidate {
                transform,
                target_edge: i,
                source_edge: j,
                score: None,
                patches: 0,
                overlap: 0,
            })
        })
        .collect()
}

/// Seed for one candidate's patch sampling, independent of evaluation order.
pub fn candidate_seed(seed: u64, target: u32, source: u32, target_edge: usize, source_edge: usize) -> u64 {
    // SplitMix64 finalizer over a running combination
    let mix = |mut z: u64| {
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    };
    [target as u64, source as u64, target_edge as u64, source_edge as u64]
        .into_iter()
        .fold(mix(seed), |h, v| mix(h ^ v.wrapping_add(0x9e37_79b9_7f4a_7c15)))
}

/// Scores one configuration on the two bands.
pub fn score_alignment(
    band_t: &ExtrapolatedBand,
    band_s: &ExtrapolatedBand,
    transform: &RigidTransform2D,
    params: &CompatParams,
    seed: u64,
    conv: &LabConverter,
) -> (f64, usize, usize) {
    let aligned = align_bands(band_t, band_s, transform, conv);
    let overlap = aligned.area();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match sample_patch_pairs(&aligned, params, &mut rng) {
        Some(patches) if !patches.is_empty() => {
            let de: Vec<f64> = patches.iter().map(patch_dissimilarity).collect();
            (aggregate_score(&de, params), patches.len(), overlap)
        }
        _ => (1.0, 0, overlap),
    }
}

/// Orders scored candidates: ascending score, then larger overlap, then
/// edge indices.
pub fn sort_candidates(cands: &mut [AlignmentCandidate]) {
    cands.sort_by(|a, b| {
        let (sa, sb) = (a.score.unwrap_or(f64::INFINITY), b.score.unwrap_or(f64::INFINITY));
        sa.total_cmp(&sb)
            .then(b.overlap.cmp(&a.overlap))
            .then(a.target_edge.cmp(&b.target_edge))
            .then(a.source_edge.cmp(&b.source_edge))
    });
}

/// Enumerates, scores and sorts every admissible configuration. Requires
/// bands on both fragments; without them every candidate scores 1.0.
pub fn rank_candidates(
    target: &PreparedFragment,
    source: &PreparedFragment,
    params: &CompatParams,
) -> Result<Vec<AlignmentCandidate>> {
    params.validate()?;
    let mut cands = enumerate_alignments(target, source, params)?;
    let conv = LabConverter::default();
    cands.par_iter_mut().for_each(|c| {
        let (score, patches, overlap) = match (&target.band, &source.band) {
            (Some(bt), Some(bs)) => score_alignment(
                bt,
                bs,
                &c.transform,
                params,
                candidate_seed(params.seed, target.id, source.id, c.target_edge, c.source_edge),
                &conv,
            ),
            _ => (1.0, 0, 0),
        };
        c.score = Some(score);
        c.patches = patches;
        c.overlap = overlap;
    });
    sort_candidates(&mut cands);
    Ok(cands)
}

/// One row of `ranking.json`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RankingEntry {
    pub theta: f64,
    pub tx: f64,
    pub ty: f64,
    pub center: Point,
    pub score: f64,
    pub target_edge: usize,
    pub source_edge: usize,
    pub patches: usize,
    pub overlap: usize,
}

impl From<&AlignmentCandidate> for RankingEntry {
    fn from(c: &AlignmentCandidate) -> Self {
        Self {
            theta: c.transform.theta,
            tx: c.transform.tx,
            ty: c.transform.ty,
            center: c.transform.center,
            score: c.score.unwrap_or(1.0),
            target_edge: c.target_edge,
            source_edge: c.source_edge,
            patches: c.patches,
            overlap: c.overlap,
        }
    }
}

impl RankingEntry {
    pub fn transform(&self) -> RigidTransform2D {
        RigidTransform2D::new(self.theta, self.tx, self.ty, self.center)
    }
}
