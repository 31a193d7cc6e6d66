//! Puzzle generation: Voronoi partition, noise-driven boundary erosion,
//! fragment extraction with ground-truth poses, and neighbor pairs.

mod delaunay;
mod erosion;
mod noise;
mod puzzle;
mod sites;
mod stats;
mod voronoi;

pub use delaunay::{delaunay_adjacency, image_adjacency, SitePair};
pub use erosion::{boundary_map, erode_partition};
pub use noise::{field_from_gradients, perlin_field, GradientGrid, NoiseField, NoiseParams};
pub use puzzle::{
    extract_fragments, extract_pairs, generate_puzzle, paste_fragments, Fragment, FragmentPair, Puzzle, PuzzleSpec,
    DEFAULT_MIN_FRAGMENT_PX,
};
pub use sites::{sample_sites, MIN_SITE_SEPARATION};
pub use stats::{puzzle_stats, FragmentStats, PuzzleStats};
pub use voronoi::voronoi_partition;
