use std::collections::BTreeMap;

use anyhow::{bail, Result};
use polex_core::dataset::read_puzzle;
use polex_core::fragmentation::{puzzle_stats, PuzzleSpec, PuzzleStats};
use rayon::prelude::*;

use crate::args::StatsArgs;
use crate::config::RunConfig;
use crate::plot::{render, Chart, Series};
use crate::store::{discover_puzzles, fmt_opt, write_csv};

pub const STATS_FILE: &str = "stats.csv";
pub const PUZZLES_FILE: &str = "puzzles.csv";
pub const STATS_PLOT: &str = "stats.svg";

/// Pooled fragment statistics for one site count.
#[derive(Debug, Clone, PartialEq)]
pub struct StatsRow {
    pub n: usize,
    pub puzzles: usize,
    pub fragments: usize,
    pub mean_area: f64,
    /// Image area over N, averaged over puzzles.
    pub expected_area: f64,
    pub mean_perimeter: f64,
    /// `4·√(image area)/√N`, averaged over puzzles.
    pub expected_perimeter: f64,
    pub mean_neighbors: f64,
    pub interior_fragments: usize,
    pub mean_interior_neighbors: Option<f64>,
}

fn aggregate(n: usize, group: &[(PuzzleSpec, PuzzleStats)]) -> StatsRow {
    let frags = || group.iter().flat_map(|(_, s)| s.per_fragment.iter());
    let count = frags().count();
    let interior: Vec<f64> = frags().filter(|f| f.interior).map(|f| f.neighbors as f64).collect();
    let per_puzzle =
        |f: &dyn Fn(&PuzzleSpec) -> f64| group.iter().map(|(sp, _)| f(sp)).sum::<f64>() / group.len() as f64;
    let image_area = |sp: &PuzzleSpec| sp.width as f64 * sp.height as f64;
    StatsRow {
        n,
        puzzles: group.len(),
        fragments: count,
        mean_area: frags().map(|f| f.area as f64).sum::<f64>() / count as f64,
        expected_area: per_puzzle(&|sp| image_area(sp) / n as f64),
        mean_perimeter: frags().map(|f| f.perimeter).sum::<f64>() / count as f64,
        expected_perimeter: per_puzzle(&|sp| 4.0 * image_area(sp).sqrt() / (n as f64).sqrt()),
        mean_neighbors: frags().map(|f| f.neighbors as f64).sum::<f64>() / count as f64,
        interior_fragments: interior.len(),
        mean_interior_neighbors: (!interior.is_empty()).then(|| interior.iter().sum::<f64>() / interior.len() as f64),
    }
}

fn chart(rows: &[StatsRow]) -> String {
    let xs = |f: &dyn Fn(&StatsRow) -> Option<f64>| -> Vec<(f64, f64)> {
        rows.iter().filter_map(|r| f(r).map(|y| (r.n as f64, y))).collect()
    };
    render(&[
        Chart {
            title: "Mean fragment area".into(),
            x_label: "N".into(),
            y_label: "area (px²)".into(),
            series: vec![
                Series::new("measured", xs(&|r| Some(r.mean_area))),
                Series::new("A/N", xs(&|r| Some(r.expected_area))).dashed(),
            ],
        },
        Chart {
            title: "Interior neighbor count".into(),
            x_label: "N".into(),
            y_label: "neighbors".into(),
            series: vec![
                Series::new("measured", xs(&|r| r.mean_interior_neighbors)),
                Series::new("6", xs(&|_| Some(6.0))).dashed(),
            ],
        },
        Chart {
            title: "Mean perimeter".into(),
            x_label: "N".into(),
            y_label: "perimeter (px)".into(),
            series: vec![
                Series::new("measured", xs(&|r| Some(r.mean_perimeter))),
                Series::new("4√A/√N", xs(&|r| Some(r.expected_perimeter))).dashed(),
            ],
        },
    ])
}

/// Writes `stats.csv`, `puzzles.csv` and `stats.svg`. Puzzles that fail to
/// load are left out of the report and make the command fail afterwards.
pub fn stats(args: &StatsArgs) -> Result<Vec<StatsRow>> {
    let dirs = discover_puzzles(&args.dataset)?;
    let results: Vec<_> = dirs
        .par_iter()
        .map(|d| -> Result<(PuzzleSpec, PuzzleStats)> {
            let p = read_puzzle(d)?;
            Ok((p.spec.clone(), puzzle_stats(&p)?))
        })
        .collect();
    let mut failures = Vec::new();
    let mut groups: BTreeMap<usize, Vec<(PuzzleSpec, PuzzleStats)>> = BTreeMap::new();
    let mut puzzle_rows = Vec::new();
    for (dir, r) in dirs.iter().zip(results) {
        match r {
            Ok((spec, st)) => {
                let name = dir
                    .file_name()
                    .map(|s| s.to_string_lossy().into_owned())
                    .unwrap_or_default();
                puzzle_rows.push(vec![
                    name,
                    spec.fragments.to_string(),
                    spec.erosion_rate.to_string(),
                    st.fragments.to_string(),
                    st.mean_area.to_string(),
                    st.mean_perimeter.to_string(),
                    st.mean_neighbors.to_string(),
                    fmt_opt(st.mean_interior_neighbors),
                ]);
                groups.entry(spec.fragments).or_default().push((spec, st));
            }
            Err(e) => {
                log::error!("{}: {e:#}", dir.display());
                failures.push(dir.display().to_string());
            }
        }
    }
    let rows: Vec<StatsRow> = groups.iter().map(|(&n, g)| aggregate(n, g)).collect();
    RunConfig::new("stats", args)?.write(&args.out)?;
    write_csv(
        &args.out.join(PUZZLES_FILE),
        &[
            "puzzle",
            "n",
            "erosion_rate",
            "fragments",
            "mean_area",
            "mean_perimeter",
            "mean_neighbors",
            "mean_interior_neighbors",
        ],
        &puzzle_rows,
    )?;
    let csv_rows: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            vec![
                r.n.to_string(),
                r.puzzles.to_string(),
                r.fragments.to_string(),
                r.mean_area.to_string(),
                r.expected_area.to_string(),
                r.mean_perimeter.to_string(),
                r.expected_perimeter.to_string(),
                r.mean_neighbors.to_string(),
                r.interior_fragments.to_string(),
                fmt_opt(r.mean_interior_neighbors),
            ]
        })
        .collect();
    write_csv(
        &args.out.join(STATS_FILE),
        &[
            "n",
            "puzzles",
            "fragments",
            "mean_area",
            "expected_area",
            "mean_perimeter",
            "expected_perimeter",
            "mean_neighbors",
            "interior_fragments",
            "mean_interior_neighbors",
        ],
        &csv_rows,
    )?;
    polex_core::io::write_text(&args.out.join(STATS_PLOT), &chart(&rows))?;
    if !failures.is_empty() {
        bail!(
            "{} puzzle(s) could not be read: {}",
            failures.len(),
            failures.join(", ")
        );
    }
    Ok(rows)
}
