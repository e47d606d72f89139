//! Quantification of regional darkness ("hypointensity") in grayscale images.
//!
//! The crate measures how dark a delineated region of interest (ROI) is,
//! relative to the rest of a dataset, using two complementary descriptors:
//!
//! * a **binary** descriptor: the fraction of ROI pixels below a darkness
//!   threshold (the hypointensity load), with reference-region and adaptive
//!   threshold selection, plus radial tessellation of the ROI into subregion
//!   features;
//! * a **nonbinary** descriptor: ROIs are sampled to a common length, a PCA
//!   basis is fit from scratch (Jacobi eigensolver), and each subject is
//!   described by its eigenspace distance to the darkest reference subject.
//!
//! Feature sets from either descriptor are compared with Kendall's rank
//! correlation over query-based retrieval rankings, and rankings are scored
//! against a ground-truth clustering by per-cluster agreement.
//!
//! The crate is `no_std` + `alloc`; all IO, file formats and the command-line
//! front end live in the companion `hypoquant` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod binary;
pub mod eigen;
pub mod error;
pub mod image;
pub mod phantom;
pub mod preprocess;
pub mod rng;
pub mod sampling;
pub mod stats;

pub use binary::{HypoLoad, Tessellation, ThresholdCandidate, ThresholdReport};
pub use eigen::{EigenModel, NonbinaryResult, PcaRoute, Projection};
pub use error::{Error, Result};
pub use image::{GrayImage, Hemisphere, Rect, RoiMask};
pub use phantom::{Ellipse, PhantomDataset, PhantomSpec, PhantomSubject};
pub use preprocess::RoiIntensities;
pub use sampling::{RoiVector, SamplingMethod};
pub use stats::{
    AccuracyReport, Cluster, ClusterCount, Clustering, CorrMatrix, Feature, Ranking, TauResult,
};
