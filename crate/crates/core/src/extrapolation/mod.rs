//! Extrapolated bands: the ring `M′ \ M` around a fragment filled with
//! synthesized content, from native diffusion, ground truth, or an
//! external tool.

mod adapter;
mod band;
mod native;

use std::path::Path;

pub use adapter::{
    band_file_name, ingest_adapter_results, run_adapter_jobs, validate_band_image, write_adapter_jobs, AdapterCommand,
    AdapterJob, AdapterReport, JOBS_FILE,
};
pub use band::{
    band_from_extrapolation, band_radius, dilate_mask, effective_n_px, oracle_extrapolate, padded_fragment_image,
    BandGeometry, ExtrapolatedBand, Provenance, DEFAULT_N_PX,
};
pub use native::{native_band, native_extrapolate};

use crate::error::Result;
use crate::fragmentation::Fragment;
use crate::io;

/// Saves a band as `band_<id>.png`.
pub fn write_band(dir: &Path, band: &ExtrapolatedBand) -> Result<()> {
    io::write_rgba(&dir.join(band_file_name(band.fragment)), &band.image)
}

/// Loads a saved band for `fragment`, re-deriving its mask from `n_px`.
pub fn read_band(dir: &Path, fragment: &Fragment, n_px: u32, provenance: Provenance) -> Result<ExtrapolatedBand> {
    let geo = BandGeometry::new(&fragment.mask, n_px)?;
    let img = io::read_rgba(&dir.join(band_file_name(fragment.id)))?;
    if img.dimensions() != geo.canvas_dimensions() {
        return Err(crate::Error::DimensionMismatch {
            expected: geo.canvas_dimensions(),
            actual: img.dimensions(),
        });
    }
    band_from_extrapolation(fragment.id, &img, &geo, provenance)
}
