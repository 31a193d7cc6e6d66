//! Candidate edge matching, alignment synthesis and band-based pictorial
//! scoring between a target and a source fragment.

mod alignment;
mod params;
mod rank;
mod region;
mod scoring;

pub use alignment::{alignment_from_edges, candidate_edges};
pub use params::CompatParams;
pub use rank::{
    candidate_seed, enumerate_alignments, rank_candidates, score_alignment, sort_candidates, AlignmentCandidate,
    PreparedFragment, RankingEntry,
};
pub use region::{align_bands, sample_band_rgb, shared_band_region, AlignedBands};
pub use scoring::{aggregate_score, patch_dissimilarity, sample_patch_pairs, PatchPair};
