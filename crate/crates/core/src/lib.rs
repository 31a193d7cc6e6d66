//! Puzzle generation, pairwise alignment and extrapolated-band compatibility
//! for irregular, eroded image fragments.

pub mod color;
pub mod compatibility;
pub mod dataset;
pub mod error;
pub mod extrapolation;
pub mod fragmentation;
pub mod geometry;
pub mod io;
pub mod metrics;
pub mod raster;
pub mod solver;
pub mod testimage;

pub use error::{Error, Result};
