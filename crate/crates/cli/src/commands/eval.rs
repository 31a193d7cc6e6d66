use anyhow::{anyhow, bail, Result};
use polex_core::compatibility::RankingEntry;
use polex_core::dataset::{read_fragments, read_puzzle_record};
use polex_core::fragmentation::Fragment;
use polex_core::geometry::RigidTransform2D;
use polex_core::io;
use polex_core::metrics::{default_contact_threshold, evaluate_pair, neighbor_prf, NeighborScores, PairEvaluation};
use polex_core::raster::BinaryMask;
use polex_core::solver::Assembly;

use crate::args::EvalArgs;
use crate::config::{parent_dir, ParamFile, RunConfig};
use crate::store::{fragment_pose, puzzle_dir, write_csv, PairDir};

pub const METRICS_HEADER: [&str; 6] = ["pair_id", "rank", "rmse_t_px", "rmse_r_rad", "s_rel", "q_pos"];
pub const NEIGHBORS_FILE: &str = "neighbors.csv";
/// The positional quality measure needs external reference data.
const Q_POS_UNAVAILABLE: &str = "NA";

#[derive(Debug, Clone, PartialEq)]
pub struct EvalSummary {
    /// `(pair_id, rank, evaluation)` in output order.
    pub rows: Vec<(String, usize, PairEvaluation)>,
    /// Present for assemblies.
    pub neighbors: Option<NeighborScores>,
}

fn find<'a>(fragments: &'a [Fragment], id: u32) -> Result<&'a Fragment> {
    fragments
        .iter()
        .find(|f| f.id == id)
        .ok_or_else(|| anyhow!("puzzle has no fragment {id}"))
}

/// Scores a ranking (one pair, every rank) or an assembly (every
/// ground-truth neighbor pair) and writes `metrics.csv`.
pub fn eval(args: &EvalArgs) -> Result<EvalSummary> {
    let params = ParamFile::load(args.params.as_deref())?;
    let dir = puzzle_dir(&args.gt);
    let record = read_puzzle_record(&dir)?;
    let fragments = read_fragments(&dir, &record)?;
    let pred: serde_json::Value = io::read_json(&args.pred)?;
    let summary = if pred.is_array() {
        let entries: Vec<RankingEntry> = serde_json::from_value(pred)?;
        let (t, s) = match (args.target, args.source, &args.pair) {
            (Some(t), Some(s), _) => (t, s),
            (_, _, Some(p)) => {
                let pair = PairDir::read(p)?.pair;
                (pair.target, pair.source)
            }
            _ => bail!("ranking evaluation needs --pair or --target/--source"),
        };
        let gt = fragment_pose(&record, t)?
            .inverse()
            .compose(&fragment_pose(&record, s)?);
        let source = find(&fragments, s)?;
        let rows = entries
            .iter()
            .enumerate()
            .map(|(i, e)| {
                let ev = evaluate_pair(&e.transform(), &gt, &source.mask, source.centroid())?;
                Ok((format!("{t}-{s}"), i + 1, ev))
            })
            .collect::<Result<Vec<_>>>()?;
        EvalSummary { rows, neighbors: None }
    } else {
        let assembly: Assembly = serde_json::from_value(pred)?;
        let pose = |id: u32| {
            assembly
                .poses
                .get(&id)
                .copied()
                .ok_or_else(|| anyhow!("assembly has no pose for fragment {id}"))
        };
        let mut pairs = record.adjacency.clone();
        pairs.sort();
        let mut rows = Vec::with_capacity(pairs.len());
        for &(t, s) in &pairs {
            let pred = pose(t)?.inverse().compose(&pose(s)?);
            let gt = fragment_pose(&record, t)?
                .inverse()
                .compose(&fragment_pose(&record, s)?);
            let source = find(&fragments, s)?;
            rows.push((
                format!("{t}-{s}"),
                1,
                evaluate_pair(&pred, &gt, &source.mask, source.centroid())?,
            ));
        }
        let placed: Vec<(u32, &BinaryMask, RigidTransform2D)> = fragments
            .iter()
            .map(|f| Ok((f.id, &f.mask, pose(f.id)?)))
            .collect::<Result<_>>()?;
        let tau = args
            .contact
            .unwrap_or_else(|| default_contact_threshold(params.compat.gap));
        let scores = neighbor_prf(&placed, &record.adjacency, tau);
        write_csv(
            &parent_dir(&args.out).join(NEIGHBORS_FILE),
            &["contact_px", "precision", "recall", "f1", "vacuous"],
            &[vec![
                tau.to_string(),
                scores.precision.to_string(),
                scores.recall.to_string(),
                scores.f1.to_string(),
                scores.vacuous.to_string(),
            ]],
        )?;
        EvalSummary {
            rows,
            neighbors: Some(scores),
        }
    };
    let rows: Vec<Vec<String>> = summary
        .rows
        .iter()
        .map(|(id, rank, ev)| {
            vec![
                id.clone(),
                rank.to_string(),
                ev.rmse_t.to_string(),
                ev.rmse_r.to_string(),
                ev.s_rel.to_string(),
                Q_POS_UNAVAILABLE.to_string(),
            ]
        })
        .collect();
    write_csv(&args.out, &METRICS_HEADER, &rows)?;
    RunConfig::new("eval", args)?.params(&params).write_beside(&args.out)?;
    Ok(summary)
}
