//! IO companion to `hypoquant-core`: dataset file formats (PGM/PBM images,
//! JSON manifests, CSV reports, PPM heat maps) and the descriptor pipelines
//! wired behind the `hypoquant` command-line tool.

pub mod csvfmt;
pub mod error;
pub mod heatmap;
pub mod manifest;
pub mod pipeline;
pub mod pnm;

pub use error::{Error, Result};
pub use manifest::{Dataset, Subject};
