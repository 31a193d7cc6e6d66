//! Beam-search assembly over pairwise compatibility rankings.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::compatibility::{rank_candidates, AlignmentCandidate, CompatParams, PreparedFragment};
use crate::error::{Error, Result};
use crate::geometry::{warp_mask, Point, RigidTransform2D};
use crate::raster::{Layer, MaskLayer, PixelBox};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SolverParams {
    pub beam_width: usize,
    /// Weight of the overlap fraction in the composite score.
    pub overlap_weight: f64,
    /// Largest admissible overlap, as a fraction of the placed fragment's area.
    pub overlap_tolerance: f64,
    /// Ranked candidates kept per (placed, pool) fragment pair.
    pub candidates_per_pair: usize,
}

impl Default for SolverParams {
    fn default() -> Self {
        Self {
            beam_width: 4,
            overlap_weight: 1.0,
            overlap_tolerance: 0.05,
            candidates_per_pair: 10,
        }
    }
}

impl SolverParams {
    pub fn validate(&self) -> Result<()> {
        if self.beam_width < 1 {
            return Err(Error::invalid("beam_width must be at least 1"));
        }
        if !(self.overlap_weight >= 0.0) || !(0.0..=1.0).contains(&self.overlap_tolerance) {
            return Err(Error::invalid(
                "overlap_weight must be >= 0 and overlap_tolerance in [0, 1]",
            ));
        }
        if self.candidates_per_pair < 1 {
            return Err(Error::invalid("candidates_per_pair must be at least 1"));
        }
        Ok(())
    }
}

/// Largest area, ties to the lowest id.
pub fn select_seed(fragments: &[PreparedFragment]) -> Option<u32> {
    fragments
        .iter()
        .max_by(|a, b| a.area().cmp(&b.area()).then(b.id.cmp(&a.id)))
        .map(|f| f.id)
}

/// Top candidates of every ordered (target, source) pair.
#[derive(Debug, Clone, Default)]
pub struct RankingTable {
    rankings: BTreeMap<(u32, u32), Vec<AlignmentCandidate>>,
}

impl RankingTable {
    pub fn compute(fragments: &[PreparedFragment], compat: &CompatParams, keep: usize) -> Result<Self> {
        let pairs: Vec<(usize, usize)> = (0..fragments.len())
            .flat_map(|i| (0..fragments.len()).filter(move |&j| j != i).map(move |j| (i, j)))
            .collect();
        let ranked: Vec<Result<((u32, u32), Vec<AlignmentCandidate>)>> = pairs
            .par_iter()
            .map(|&(i, j)| {
                let mut r = rank_candidates(&fragments[i], &fragments[j], compat)?;
                r.truncate(keep);
                Ok(((fragments[i].id, fragments[j].id), r))
            })
            .collect();
        let mut rankings = BTreeMap::new();
        for item in ranked {
            let (k, v) = item?;
            rankings.insert(k, v);
        }
        Ok(Self { rankings })
    }

    pub fn from_map(rankings: BTreeMap<(u32, u32), Vec<AlignmentCandidate>>) -> Self {
        Self { rankings }
    }

    pub fn get(&self, target: u32, source: u32) -> &[AlignmentCandidate] {
        self.rankings.get(&(target, source)).map(Vec::as_slice).unwrap_or(&[])
    }
}

/// Partial assembly. Poses map fragment-local coordinates into the
/// assembly frame, where the seed sits at identity.
#[derive(Debug, Clone)]
pub struct Hypothesis {
    pub placed: BTreeMap<u32, RigidTransform2D>,
    pub order: Vec<u32>,
    pub score: f64,
    pub frontier: BTreeSet<u32>,
    /// Fragments placed without an admissible candidate.
    pub fallbacks: Vec<u32>,
    layers: Vec<(u32, MaskLayer)>,
}

impl Hypothesis {
    pub fn seeded(seed: u32, fragments: &[PreparedFragment]) -> Self {
        let seed_frag = fragments
            .iter()
            .find(|f| f.id == seed)
            .expect("seed is one of the fragments");
        let mut placed = BTreeMap::new();
        placed.insert(seed, RigidTransform2D::identity());
        Self {
            placed,
            order: vec![seed],
            score: 0.0,
            frontier: fragments.iter().map(|f| f.id).filter(|&id| id != seed).collect(),
            fallbacks: Vec::new(),
            layers: vec![(
                seed,
                Layer {
                    raster: seed_frag.mask.clone(),
                    origin: (0, 0),
                },
            )],
        }
    }

    /// Pixels of `layer` already covered by placed fragments.
    pub fn overlap_pixels(&self, layer: &MaskLayer) -> usize {
        let fb = layer.frame_box();
        let mut total = 0;
        for (_, other) in &self.layers {
            let Some(b) = fb.intersect(&other.frame_box()) else {
                continue;
            };
            for y in b.y0..=b.y1 {
                for x in b.x0..=b.x1 {
                    if layer.get(x, y) && other.get(x, y) {
                        total += 1;
                    }
                }
            }
        }
        total
    }

    pub fn bounds(&self) -> PixelBox {
        let mut it = self.layers.iter().map(|(_, l)| l.frame_box());
        let first = it.next().expect("a hypothesis always holds its seed");
        it.fold(first, |a, b| PixelBox {
            x0: a.x0.min(b.x0),
            y0: a.y0.min(b.y0),
            x1: a.x1.max(b.x1),
            y1: a.y1.max(b.y1),
        })
    }

    fn with(&self, ext: &Extension, layer: MaskLayer) -> Self {
        let mut h = self.clone();
        h.placed.insert(ext.fragment, ext.pose);
        h.order.push(ext.fragment);
        h.score += ext.composite;
        h.frontier.remove(&ext.fragment);
        if ext.anchor.is_none() {
            h.fallbacks.push(ext.fragment);
        }
        h.layers.push((ext.fragment, layer));
        h
    }
}

/// `S + w_ov · overlap / area`.
pub fn composite_score(compat_score: f64, overlap_pixels: usize, area: usize, overlap_weight: f64) -> f64 {
    compat_score + overlap_weight * overlap_pixels as f64 / area.max(1) as f64
}

/// One way to grow a hypothesis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Extension {
    pub fragment: u32,
    pub pose: RigidTransform2D,
    pub composite: f64,
    /// Placed fragment and candidate rank the pose came from; `None` for a
    /// fallback placement.
    pub anchor: Option<(u32, usize)>,
}

fn extension_order(a: &Extension, b: &Extension) -> std::cmp::Ordering {
    a.composite
        .total_cmp(&b.composite)
        .then(a.fragment.cmp(&b.fragment))
        .then(a.anchor.cmp(&b.anchor))
}

fn fragment_by_id(fragments: &[PreparedFragment], id: u32) -> &PreparedFragment {
    fragments.iter().find(|f| f.id == id).expect("known fragment")
}

/// Every admissible (pool fragment, placed anchor, ranked candidate)
/// placement with its composite score, sorted best first.
pub fn admissible_extensions(
    h: &Hypothesis,
    fragments: &[PreparedFragment],
    table: &RankingTable,
    params: &SolverParams,
) -> Vec<(Extension, MaskLayer)> {
    let mut out = Vec::new();
    for &q in &h.frontier {
        let frag = fragment_by_id(fragments, q);
        let area = frag.area();
        let src = Layer {
            raster: frag.mask.clone(),
            origin: (0, 0),
        };
        for (&p, pose_p) in &h.placed {
            for (rank, cand) in table.get(p, q).iter().enumerate() {
                let pose = pose_p.compose(&cand.transform);
                let layer = warp_mask(&src, &pose);
                let overlap = h.overlap_pixels(&layer);
                if overlap as f64 > params.overlap_tolerance * area as f64 {
                    continue;
                }
                let ext = Extension {
                    fragment: q,
                    pose,
                    composite: composite_score(cand.score.unwrap_or(1.0), overlap, area, params.overlap_weight),
                    anchor: Some((p, rank)),
                };
                out.push((ext, layer));
            }
        }
    }
    out.sort_by(|a, b| extension_order(&a.0, &b.0));
    out
}

/// Places the lowest-id pool fragment clear of the assembly, to the right
/// of its bounding box, with the worst compatibility score.
pub fn fallback_extension(h: &Hypothesis, fragments: &[PreparedFragment]) -> Option<(Extension, MaskLayer)> {
    let &q = h.frontier.iter().next()?;
    let frag = fragment_by_id(fragments, q);
    let b = h.bounds();
    let pose = RigidTransform2D::new(0.0, (b.x1 + 2) as f64, b.y0 as f64, Point::ORIGIN);
    let layer = Layer {
        raster: frag.mask.clone(),
        origin: (b.x1 + 2, b.y0),
    };
    log::warn!("fragment {q}: no admissible candidate, placed beside the assembly");
    Some((
        Extension {
            fragment: q,
            pose: pose.with_center(frag.centroid),
            composite: 1.0,
            anchor: None,
        },
        layer,
    ))
}

/// Up to `k` best extensions of `h`; a single fallback when none is
/// admissible.
pub fn extend_hypothesis(
    h: &Hypothesis,
    fragments: &[PreparedFragment],
    table: &RankingTable,
    params: &SolverParams,
    k: usize,
) -> Vec<Hypothesis> {
    let mut exts = admissible_extensions(h, fragments, table, params);
    if exts.is_empty() {
        exts.extend(fallback_extension(h, fragments));
    }
    exts.truncate(k);
    exts.into_iter().map(|(e, layer)| h.with(&e, layer)).collect()
}

/// Final reconstruction.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Assembly {
    pub seed_fragment: u32,
    pub poses: BTreeMap<u32, RigidTransform2D>,
    pub score: f64,
    pub iterations: usize,
    pub order: Vec<u32>,
    #[serde(default)]
    pub fallbacks: Vec<u32>,
}

impl From<&Hypothesis> for Assembly {
    fn from(h: &Hypothesis) -> Self {
        Self {
            seed_fragment: h.order[0],
            poses: h.placed.clone(),
            score: h.score,
            iterations: h.order.len() - 1,
            order: h.order.clone(),
            fallbacks: h.fallbacks.clone(),
        }
    }
}

fn hypothesis_order(a: &Hypothesis, b: &Hypothesis) -> std::cmp::Ordering {
    a.score.total_cmp(&b.score).then_with(|| a.order.cmp(&b.order))
}

/// Same placements with bit-identical poses.
fn same_assembly(a: &Hypothesis, b: &Hypothesis) -> bool {
    a.placed.len() == b.placed.len()
        && a.placed.iter().zip(&b.placed).all(|((ia, pa), (ib, pb))| {
            ia == ib
                && pa.theta.to_bits() == pb.theta.to_bits()
                && pa.tx.to_bits() == pb.tx.to_bits()
                && pa.ty.to_bits() == pb.ty.to_bits()
                && pa.center == pb.center
        })
}

/// Beam search from the seed until every fragment is placed.
pub fn beam_search_with_table(
    fragments: &[PreparedFragment],
    table: &RankingTable,
    params: &SolverParams,
) -> Result<Assembly> {
    params.validate()?;
    let seed = select_seed(fragments).ok_or(Error::EmptyLabelMap)?;
    let mut beam = vec![Hypothesis::seeded(seed, fragments)];
    while !beam[0].frontier.is_empty() {
        let grown: Vec<Vec<Hypothesis>> = beam
            .par_iter()
            .map(|h| extend_hypothesis(h, fragments, table, params, params.beam_width))
            .collect();
        let mut next: Vec<Hypothesis> = grown.into_iter().flatten().collect();
        next.sort_by(hypothesis_order);
        let mut kept: Vec<Hypothesis> = Vec::with_capacity(params.beam_width);
        for h in next {
            if kept.len() == params.beam_width {
                break;
            }
            if !kept.iter().any(|k| same_assembly(k, &h)) {
                kept.push(h);
            }
        }
        beam = kept;
    }
    Ok(Assembly::from(&beam[0]))
}

/// Computes the ranking table and runs beam search.
pub fn beam_search(fragments: &[PreparedFragment], compat: &CompatParams, params: &SolverParams) -> Result<Assembly> {
    params.validate()?;
    let table = RankingTable::compute(fragments, compat, params.candidates_per_pair)?;
    beam_search_with_table(fragments, &table, params)
}

/// Plain greedy assembly: repeatedly adds the single best admissible
/// placement over all pool fragments, anchors and candidates.
pub fn greedy_assembly(
    fragments: &[PreparedFragment],
    table: &RankingTable,
    params: &SolverParams,
) -> Result<Assembly> {
    params.validate()?;
    let seed = select_seed(fragments).ok_or(Error::EmptyLabelMap)?;
    let mut h = Hypothesis::seeded(seed, fragments);
    while !h.frontier.is_empty() {
        let mut best: Option<(Extension, MaskLayer)> = None;
        for &q in &h.frontier {
            let frag = fragment_by_id(fragments, q);
            let src = Layer {
                raster: frag.mask.clone(),
                origin: (0, 0),
            };
            for (&p, pose_p) in &h.placed {
                for (rank, cand) in table.get(p, q).iter().enumerate() {
                    let pose = pose_p.compose(&cand.transform);
                    let layer = warp_mask(&src, &pose);
                    let overlap = h.overlap_pixels(&layer);
                    if overlap as f64 > params.overlap_tolerance * frag.area() as f64 {
                        continue;
                    }
                    let ext = Extension {
                        fragment: q,
                        pose,
                        composite: composite_score(
                            cand.score.unwrap_or(1.0),
                            overlap,
                            frag.area(),
                            params.overlap_weight,
                        ),
                        anchor: Some((p, rank)),
                    };
                    let better = match &best {
                        None => true,
                        Some((b, _)) => extension_order(&ext, b).is_lt(),
                    };
                    if better {
                        best = Some((ext, layer));
                    }
                }
            }
        }
        let (ext, layer) = match best {
            Some(b) => b,
            None => fallback_extension(&h, fragments).expect("non-empty frontier"),
        };
        h = h.with(&ext, layer);
    }
    Ok(Assembly::from(&h))
}
