use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("no fragment pixels")]
    EmptyMask,
    #[error("contour needs at least 3 points, got {0}")]
    DegenerateContour(usize),
    #[error("polygon needs at least 3 vertices, got {0}")]
    DegeneratePolygon(usize),
    #[error("zero-length edge")]
    ZeroLengthEdge,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("cannot place {requested} sites in an extent of {available} pixels")]
    TooManySites { requested: usize, available: usize },
    #[error("all sites are collinear")]
    CollinearSites,
    #[error("label map is empty after erosion")]
    EmptyLabelMap,
    #[error("dimension mismatch: expected {expected:?}, got {actual:?}")]
    DimensionMismatch { expected: (u32, u32), actual: (u32, u32) },
    #[error("fragment {0} has no ground-truth pose")]
    MissingPose(u32),
    #[error("unknown fragment id {0}")]
    UnknownFragment(u32),
    #[error("{}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{}", path.display())]
    Image {
        path: PathBuf,
        #[source]
        source: image::ImageError,
    },
    #[error("{}", path.display())]
    Json {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },
}

impl Error {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }
}
