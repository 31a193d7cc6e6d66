use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use polex_core::dataset::write_puzzle;
use polex_core::fragmentation::{generate_puzzle, NoiseParams, PuzzleSpec};
use polex_core::io;
use polex_core::testimage::procedural_image;
use rayon::prelude::*;

use crate::args::GenerateArgs;
use crate::config::{resolve_seed, RunConfig};

pub fn puzzle_dir_name(spec: &PuzzleSpec) -> String {
    format!("n{}_e{}_s{}", spec.fragments, spec.erosion_rate, spec.seed)
}

fn list_images(dir: &Path) -> Result<Vec<PathBuf>> {
    let mut found = Vec::new();
    for e in std::fs::read_dir(dir).with_context(|| format!("reading {}", dir.display()))? {
        let p = e?.path();
        if p.extension().is_some_and(|x| x.eq_ignore_ascii_case("png")) {
            found.push(p);
        }
    }
    if found.is_empty() {
        bail!("{}: no PNG images", dir.display());
    }
    found.sort();
    Ok(found)
}

/// Writes `count` puzzles under `args.out`; returns their directories.
pub fn generate(args: &GenerateArgs) -> Result<Vec<PathBuf>> {
    if args.count == 0 {
        bail!("--count must be at least 1");
    }
    let seed = resolve_seed(Some(args.seed), 0)?;
    let images = args.images.as_deref().map(list_images).transpose()?;
    let noise = NoiseParams {
        frequency: args.noise_frequency,
        octaves: args.noise_octaves,
        persistence: args.noise_persistence,
    };
    let mut jobs = Vec::with_capacity(args.count);
    for k in 0..args.count {
        let source = images.as_ref().map(|list| list[k % list.len()].clone());
        let (w, h) = match &source {
            Some(p) => {
                let img = io::read_rgba(p)?;
                img.dimensions()
            }
            None => (args.width, args.height),
        };
        let mut spec = PuzzleSpec::new(w, h, args.n, args.erosion, seed.wrapping_add(k as u64));
        spec.noise = noise;
        spec.min_fragment_px = args.min_fragment_px;
        spec.validate()?;
        jobs.push((spec, source));
    }
    let root = RunConfig::new("generate", args)?.seed(seed);
    root.write(&args.out)?;
    jobs.par_iter()
        .map(|(spec, source)| {
            let image = match source {
                Some(p) => {
                    let mut img = io::read_rgba(p)?;
                    img.pixels_mut().for_each(|px| px.0[3] = 255);
                    img
                }
                None => procedural_image(spec.width, spec.height, spec.seed),
            };
            let puzzle = generate_puzzle(spec, &image).with_context(|| format!("puzzle seed {}", spec.seed))?;
            let dir = args.out.join(puzzle_dir_name(spec));
            write_puzzle(&dir, &puzzle)?;
            root.clone().spec(spec).write(&dir)?;
            log::info!("{}: {} fragments", dir.display(), puzzle.fragments.len());
            Ok(dir)
        })
        .collect()
}
