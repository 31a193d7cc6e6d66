//! File contract with an external extrapolation tool.
//!
//! For each fragment the job directory receives the fragment on its padded
//! canvas, the fragment mask `M` and the dilated mask `M′` (same canvas),
//! listed in `jobs.json`. The tool writes `band_<id>.png` into its output
//! directory. Paths in `jobs.json` are relative to the job directory.

use std::path::{Path, PathBuf};
use std::process::Command;

use image::RgbaImage;
use serde::{Deserialize, Serialize};

use super::band::{band_from_extrapolation, padded_fragment_image, BandGeometry, ExtrapolatedBand, Provenance};
use super::native::native_band;
use crate::error::Result;
use crate::fragmentation::Fragment;
use crate::io;

pub const JOBS_FILE: &str = "jobs.json";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdapterJob {
    pub id: u32,
    pub image_path: PathBuf,
    pub mask_path: PathBuf,
    pub dilated_mask_path: PathBuf,
    pub n_px: u32,
}

pub fn band_file_name(id: u32) -> String {
    format!("band_{id}.png")
}

/// Writes inputs and `jobs.json` for every fragment.
pub fn write_adapter_jobs(fragments: &[Fragment], n_px: u32, job_dir: &Path) -> Result<Vec<AdapterJob>> {
    io::ensure_dir(&job_dir.join("inputs"))?;
    let mut jobs = Vec::with_capacity(fragments.len());
    for f in fragments {
        let geo = BandGeometry::new(&f.mask, n_px)?;
        let job = AdapterJob {
            id: f.id,
            image_path: PathBuf::from(format!("inputs/fragment_{}.png", f.id)),
            mask_path: PathBuf::from(format!("inputs/mask_{}.png", f.id)),
            dilated_mask_path: PathBuf::from(format!("inputs/dilated_{}.png", f.id)),
            n_px,
        };
        io::write_rgba(&job_dir.join(&job.image_path), &padded_fragment_image(f, geo.radius))?;
        io::write_mask(&job_dir.join(&job.mask_path), &geo.fragment)?;
        io::write_mask(&job_dir.join(&job.dilated_mask_path), &geo.dilated)?;
        jobs.push(job);
    }
    io::write_json(&job_dir.join(JOBS_FILE), &jobs)?;
    Ok(jobs)
}

/// Checks a returned band image against the job geometry: matching canvas,
/// transparent on `M` and outside `M′`, opaque on `M′ \ M`.
pub fn validate_band_image(img: &RgbaImage, geo: &BandGeometry) -> std::result::Result<(), String> {
    if img.dimensions() != geo.canvas_dimensions() {
        return Err(format!(
            "dimensions {:?} differ from job canvas {:?}",
            img.dimensions(),
            geo.canvas_dimensions()
        ));
    }
    let (mut on_fragment, mut outside, mut holes) = (0usize, 0usize, 0usize);
    for (x, y, p) in img.enumerate_pixels() {
        let (xi, yi) = (x as i64, y as i64);
        let opaque = p.0[3] > 0;
        if geo.fragment.get(xi, yi) {
            on_fragment += opaque as usize;
        } else if !geo.dilated.get(xi, yi) {
            outside += opaque as usize;
        } else {
            holes += !opaque as usize;
        }
    }
    if on_fragment > 0 {
        return Err(format!("{on_fragment} visible pixels on the fragment mask"));
    }
    if outside > 0 {
        return Err(format!("{outside} visible pixels outside the dilated mask"));
    }
    if holes > 0 {
        return Err(format!("{holes} transparent pixels inside the band"));
    }
    Ok(())
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct AdapterReport {
    pub jobs: usize,
    pub accepted: Vec<u32>,
    pub missing: Vec<u32>,
    pub rejected: Vec<(u32, String)>,
}

impl AdapterReport {
    pub fn fallbacks(&self) -> usize {
        self.missing.len() + self.rejected.len()
    }
}

/// Reads `band_<id>.png` for every fragment from `results_dir`; missing or
/// invalid results fall back to native extrapolation with a warning.
pub fn ingest_adapter_results(
    fragments: &[Fragment],
    n_px: u32,
    results_dir: &Path,
) -> Result<(Vec<ExtrapolatedBand>, AdapterReport)> {
    let mut report = AdapterReport {
        jobs: fragments.len(),
        ..Default::default()
    };
    let mut bands = Vec::with_capacity(fragments.len());
    for f in fragments {
        let geo = BandGeometry::new(&f.mask, n_px)?;
        let path = results_dir.join(band_file_name(f.id));
        let outcome = if path.exists() {
            io::read_rgba(&path)
                .map_err(|e| e.to_string())
                .and_then(|img| validate_band_image(&img, &geo).map(|_| img))
        } else {
            Err(String::new())
        };
        match outcome {
            Ok(img) => {
                bands.push(band_from_extrapolation(f.id, &img, &geo, Provenance::Diffusion)?);
                report.accepted.push(f.id);
            }
            Err(reason) => {
                if reason.is_empty() {
                    log::warn!("fragment {}: no adapter output, using native extrapolation", f.id);
                    report.missing.push(f.id);
                } else {
                    log::warn!(
                        "fragment {}: adapter output rejected ({reason}), using native extrapolation",
                        f.id
                    );
                    report.rejected.push((f.id, reason));
                }
                bands.push(native_band(f, n_px)?);
            }
        }
    }
    Ok((bands, report))
}

/// External tool invoked as `<program> <args..> --jobs <jobs.json> --out <dir> --seed <seed>`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdapterCommand {
    pub program: String,
    #[serde(default)]
    pub args: Vec<String>,
}

/// Writes the jobs, runs the tool if given, and ingests its results. A tool
/// that cannot be started or exits nonzero is reported in the log; whatever
/// valid bands it produced are still used.
pub fn run_adapter_jobs(
    fragments: &[Fragment],
    n_px: u32,
    job_dir: &Path,
    command: Option<&AdapterCommand>,
    seed: u64,
) -> Result<(Vec<ExtrapolatedBand>, AdapterReport)> {
    if fragments.is_empty() {
        return Ok((Vec::new(), AdapterReport::default()));
    }
    write_adapter_jobs(fragments, n_px, job_dir)?;
    let out_dir = job_dir.join("results");
    io::ensure_dir(&out_dir)?;
    if let Some(cmd) = command {
        let status = Command::new(&cmd.program)
            .args(&cmd.args)
            .arg("--jobs")
            .arg(job_dir.join(JOBS_FILE))
            .arg("--out")
            .arg(&out_dir)
            .arg("--seed")
            .arg(seed.to_string())
            .status();
        match status {
            Ok(s) if s.success() => {}
            Ok(s) => log::warn!("adapter exited with {s}"),
            Err(e) => log::warn!("adapter could not be started: {e}"),
        }
    }
    ingest_adapter_results(fragments, n_px, &out_dir)
}
