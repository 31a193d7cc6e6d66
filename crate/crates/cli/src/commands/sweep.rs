use anyhow::{bail, Context, Result};
use polex_core::compatibility::{rank_candidates, CompatParams};
use polex_core::dataset::{read_fragments, read_puzzle_record};
use polex_core::metrics::{evaluate_pair, PairEvaluation};
use rayon::prelude::*;

use crate::args::SweepArgs;
use crate::config::{resolve_seed, ParamFile, RunConfig};
use crate::plot::{render, Chart, Series};
use crate::store::{fmt_opt, ground_truth_pairs, pair_dir_name, prepare, write_csv, BandSet};

pub const CURVES_FILE: &str = "curves.csv";
pub const CANDIDATES_FILE: &str = "candidates.csv";
pub const CURVES_PLOT: &str = "curves.svg";

/// Candidates of one pair at one γ.
#[derive(Debug, Clone, PartialEq)]
pub struct PairSweep {
    pub puzzle: String,
    pub pair: String,
    pub gamma: f64,
    pub candidates: usize,
    /// Evaluations of the best-ranked candidates, in rank order.
    pub top: Vec<PairEvaluation>,
}

/// Best-of-n means at one (γ, n). RMSE means cover pairs with at least one
/// candidate; a pair without candidates contributes S_rel = 0.
#[derive(Debug, Clone, PartialEq)]
pub struct CurveRow {
    pub gamma: f64,
    pub n: usize,
    pub pairs: usize,
    pub pairs_with_candidates: usize,
    pub mean_candidates: f64,
    pub mean_rmse_t: Option<f64>,
    pub mean_rmse_r: Option<f64>,
    pub mean_s_rel: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub curves: Vec<CurveRow>,
    pub pairs: Vec<PairSweep>,
}

fn mean(v: &[f64]) -> Option<f64> {
    (!v.is_empty()).then(|| v.iter().sum::<f64>() / v.len() as f64)
}

fn curve_row(gamma: f64, n: usize, pairs: &[&PairSweep]) -> CurveRow {
    fn prefix(p: &PairSweep, n: usize) -> &[PairEvaluation] {
        &p.top[..n.min(p.top.len())]
    }
    let with: Vec<&&PairSweep> = pairs.iter().filter(|p| !p.top.is_empty()).collect();
    let min_of = |f: fn(&PairEvaluation) -> f64| -> Vec<f64> {
        with.iter()
            .map(|p| prefix(p, n).iter().map(f).fold(f64::INFINITY, f64::min))
            .collect()
    };
    let s_rel: Vec<f64> = pairs
        .iter()
        .map(|p| prefix(p, n).iter().map(|e| e.s_rel).fold(0.0, f64::max))
        .collect();
    let counts: Vec<f64> = pairs.iter().map(|p| p.candidates as f64).collect();
    CurveRow {
        gamma,
        n,
        pairs: pairs.len(),
        pairs_with_candidates: with.len(),
        mean_candidates: mean(&counts).unwrap_or(0.0),
        mean_rmse_t: mean(&min_of(|e| e.rmse_t)),
        mean_rmse_r: mean(&min_of(|e| e.rmse_r)),
        mean_s_rel: mean(&s_rel).unwrap_or(0.0),
    }
}

fn chart(curves: &[CurveRow], gammas: &[f64]) -> String {
    let series = |f: fn(&CurveRow) -> Option<f64>| -> Vec<Series> {
        gammas
            .iter()
            .map(|&g| {
                let pts = curves
                    .iter()
                    .filter(|r| r.gamma == g)
                    .filter_map(|r| f(r).map(|y| (r.n as f64, y)))
                    .collect();
                Series::new(format!("γ = {g}"), pts)
            })
            .collect()
    };
    render(&[
        Chart {
            title: "Best-of-n translation error".into(),
            x_label: "n".into(),
            y_label: "RMSE_T (px)".into(),
            series: series(|r| r.mean_rmse_t),
        },
        Chart {
            title: "Best-of-n rotation error".into(),
            x_label: "n".into(),
            y_label: "RMSE_R (rad)".into(),
            series: series(|r| r.mean_rmse_r),
        },
        Chart {
            title: "Best-of-n relative position".into(),
            x_label: "n".into(),
            y_label: "S_rel".into(),
            series: series(|r| Some(r.mean_s_rel)),
        },
    ])
}

/// Ranks every ground-truth pair of every puzzle at each γ and writes
/// `curves.csv`, `candidates.csv` and `curves.svg`.
pub fn sweep(args: &SweepArgs) -> Result<SweepResult> {
    let mut params = ParamFile::load(args.params.as_deref())?;
    params.compat.seed = resolve_seed(args.seed, params.compat.seed)?;
    if args.gammas.is_empty() || args.top.is_empty() {
        bail!("--gammas and --top must be non-empty");
    }
    let compats: Vec<CompatParams> = args
        .gammas
        .iter()
        .map(|&gamma| {
            let c = CompatParams { gamma, ..params.compat };
            c.validate().map(|_| c)
        })
        .collect::<polex_core::Result<_>>()?;
    let mut top = args.top.clone();
    top.sort_unstable();
    top.dedup();
    if top[0] == 0 {
        bail!("--top values must be at least 1");
    }
    let keep = *top.last().expect("non-empty");
    let dirs = crate::store::discover_puzzles(&args.dataset)?;

    let mut pairs = Vec::new();
    for dir in &dirs {
        let name = dir
            .file_name()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default();
        let record = read_puzzle_record(dir)?;
        let fragments = read_fragments(dir, &record)?;
        let band_dir = dir.join(&args.bands);
        let bands = BandSet::read(&band_dir)
            .and_then(|s| s.load(&band_dir, &fragments))
            .with_context(|| format!("{}: bands", dir.display()))?;
        let prepared = prepare(&fragments, bands, &params.geometry)?;
        let index = |id: u32| prepared.iter().position(|f| f.id == id).expect("recorded fragment");
        let gt_pairs = ground_truth_pairs(&record)?;
        for compat in &compats {
            let rows = gt_pairs
                .par_iter()
                .map(|p| -> Result<PairSweep> {
                    let (t, s) = (&prepared[index(p.target)], &prepared[index(p.source)]);
                    let ranked = rank_candidates(t, s, compat)?;
                    let evals = ranked
                        .iter()
                        .take(keep)
                        .map(|c| evaluate_pair(&c.transform, &p.relative, &s.mask, s.centroid))
                        .collect::<polex_core::Result<Vec<_>>>()?;
                    Ok(PairSweep {
                        puzzle: name.clone(),
                        pair: pair_dir_name(p),
                        gamma: compat.gamma,
                        candidates: ranked.len(),
                        top: evals,
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            pairs.extend(rows);
        }
    }

    let mut curves = Vec::new();
    for &g in &args.gammas {
        let at: Vec<&PairSweep> = pairs.iter().filter(|p| p.gamma == g).collect();
        curves.extend(top.iter().map(|&n| curve_row(g, n, &at)));
    }

    RunConfig::new("sweep", args)?
        .seed(params.compat.seed)
        .params(&params)
        .write(&args.out)?;
    let curve_rows: Vec<Vec<String>> = curves
        .iter()
        .map(|r| {
            vec![
                r.gamma.to_string(),
                r.n.to_string(),
                r.pairs.to_string(),
                r.pairs_with_candidates.to_string(),
                r.mean_candidates.to_string(),
                fmt_opt(r.mean_rmse_t),
                fmt_opt(r.mean_rmse_r),
                r.mean_s_rel.to_string(),
            ]
        })
        .collect();
    write_csv(
        &args.out.join(CURVES_FILE),
        &[
            "gamma",
            "n",
            "pairs",
            "pairs_with_candidates",
            "mean_candidates",
            "mean_rmse_t_px",
            "mean_rmse_r_rad",
            "mean_s_rel",
        ],
        &curve_rows,
    )?;
    let cand_rows: Vec<Vec<String>> = pairs
        .iter()
        .map(|p| {
            vec![
                p.puzzle.clone(),
                p.pair.clone(),
                p.gamma.to_string(),
                p.candidates.to_string(),
            ]
        })
        .collect();
    write_csv(
        &args.out.join(CANDIDATES_FILE),
        &["puzzle", "pair", "gamma", "candidates"],
        &cand_rows,
    )?;
    polex_core::io::write_text(&args.out.join(CURVES_PLOT), &chart(&curves, &args.gammas))?;
    Ok(SweepResult { curves, pairs })
}
