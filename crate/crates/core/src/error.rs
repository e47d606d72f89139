//! Error type shared by all descriptor and statistics operations.

use alloc::string::String;
use thiserror::Error;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error(
        "dimension mismatch: expected {expected_width}x{expected_height}, got {width}x{height}"
    )]
    DimensionMismatch {
        expected_width: usize,
        expected_height: usize,
        width: usize,
        height: usize,
    },
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("{0} must not be empty")]
    Empty(&'static str),
    #[error("value at index {0} is not finite")]
    NotFinite(usize),
    #[error("coordinate ({row}, {col}) is outside a {width}x{height} grid")]
    OutOfBounds {
        row: usize,
        col: usize,
        width: usize,
        height: usize,
    },
    #[error("rectangle exceeds image bounds")]
    RectOutOfBounds,
    #[error("ROI mean is zero; relative normalization is undefined")]
    ZeroMean,
    #[error("cannot sample {requested} values from {available}")]
    SampleTooLarge { requested: usize, available: usize },
    #[error("sample length must be at least {min}, got {got}")]
    SampleTooSmall { min: usize, got: usize },
    #[error("all values are equal; threshold range is degenerate")]
    DegenerateRange,
    #[error("ground truth has no {0} subjects")]
    MissingCluster(&'static str),
    #[error("matrix is not square: {rows} rows, row {row} has {cols} columns")]
    NotSquare {
        rows: usize,
        row: usize,
        cols: usize,
    },
    #[error("matrix is not symmetric at ({row}, {col}): |a_ij - a_ji| = {delta}")]
    NotSymmetric { row: usize, col: usize, delta: f64 },
    #[error("eigenvalue iteration did not converge")]
    NoConvergence,
    #[error("need at least {needed} subjects, got {got}")]
    TooFewSubjects { needed: usize, got: usize },
    #[error("spectrum is all zeros; no variance to retain")]
    ZeroSpectrum,
    #[error("variance fraction must be in (0, 1], got {0}")]
    InvalidFraction(f64),
    #[error("model is degenerate: no nonzero eigenvalues")]
    DegenerateModel,
    #[error("rankings do not cover the same subjects")]
    IdSetMismatch,
    #[error("duplicate subject id {0}")]
    DuplicateId(String),
    #[error("cluster sizes sum to {got}, ranking has {expected} subjects")]
    ClusterSizeMismatch { expected: usize, got: usize },
    #[error("clusterings use different subjects or cluster labels")]
    ClusterMismatch,
    #[error("invalid phantom spec: {0}")]
    InvalidSpec(String),
}
