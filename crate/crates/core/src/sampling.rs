//! Reduction of variable-size ROIs to a common vector length.
//!
//! Personalized ROIs differ in pixel count, but the eigen analysis needs one
//! row vector of identical length per subject. The common length is the size
//! of the smallest ROI in the dataset, and every larger ROI is reduced to it
//! either by seeded shuffle selection or by spatially balanced interpolation.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::image::RoiMask;
use crate::preprocess::RoiIntensities;
use crate::rng::{shuffled_indices, SplitMix64};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SamplingMethod {
    Shuffle,
    Balanced,
}

impl SamplingMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            SamplingMethod::Shuffle => "shuffle",
            SamplingMethod::Balanced => "balanced",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "shuffle" => Some(SamplingMethod::Shuffle),
            "balanced" => Some(SamplingMethod::Balanced),
            _ => None,
        }
    }
}

/// One subject's ROI reduced to the common length.
#[derive(Debug, Clone, PartialEq)]
pub struct RoiVector {
    pub subject_id: String,
    pub values: Vec<f64>,
    pub method: SamplingMethod,
    /// Stream seed actually used; present for shuffle sampling only.
    pub seed: Option<u64>,
}

/// Common sample length: the size of the smallest ROI.
pub fn min_roi_size<'a, I>(masks: I) -> Result<usize>
where
    I: IntoIterator<Item = &'a RoiMask>,
{
    masks
        .into_iter()
        .map(RoiMask::len)
        .min()
        .ok_or(Error::Empty("mask list"))
}

/// Keeps the first `len` entries of a permuted index order, restored to
/// ascending raster position, and reads the values there.
fn select_prefix_sorted(values: &[f64], order: &[usize], len: usize) -> Vec<f64> {
    let mut picked: Vec<usize> = order[..len].to_vec();
    picked.sort_unstable();
    picked.into_iter().map(|i| values[i]).collect()
}

/// Shuffle sampling: permute raster positions with a seeded Fisher-Yates
/// shuffle, keep the first `len`, then restore their spatial order.
pub fn raster_shuffle_sample(
    subject_id: &str,
    roi: &RoiIntensities,
    len: usize,
    seed: u64,
) -> Result<RoiVector> {
    if len == 0 {
        return Err(Error::SampleTooSmall { min: 1, got: 0 });
    }
    if len > roi.len() {
        return Err(Error::SampleTooLarge {
            requested: len,
            available: roi.len(),
        });
    }
    let mut rng = SplitMix64::new(seed);
    let order = shuffled_indices(roi.len(), &mut rng);
    Ok(RoiVector {
        subject_id: subject_id.to_string(),
        values: select_prefix_sorted(roi.values(), &order, len),
        method: SamplingMethod::Shuffle,
        seed: Some(seed),
    })
}

/// Spatially balanced sampling: the first and last raster pixels are kept and
/// interior samples are placed every `(n - 1) / (len - 1)` raster positions,
/// with fractional positions resolved by linear interpolation between the two
/// flanking pixels (the nearer pixel contributes more).
pub fn balanced_sample(subject_id: &str, roi: &RoiIntensities, len: usize) -> Result<RoiVector> {
    if roi.len() < 2 || len < 2 {
        return Err(Error::SampleTooSmall {
            min: 2,
            got: len.min(roi.len()),
        });
    }
    if len > roi.len() {
        return Err(Error::SampleTooLarge {
            requested: len,
            available: roi.len(),
        });
    }
    let values = roi.values();
    let span = roi.len() - 1;
    let steps = len - 1;
    let mut out = Vec::with_capacity(len);
    for k in 0..len {
        // Exact rational position k * span / steps, split into index + fraction
        // so endpoints and integer positions are hit without rounding error.
        let numer = k * span;
        let index = numer / steps;
        let rem = numer % steps;
        if rem == 0 {
            out.push(values[index]);
        } else {
            let frac = rem as f64 / steps as f64;
            out.push((1.0 - frac) * values[index] + frac * values[index + 1]);
        }
    }
    Ok(RoiVector {
        subject_id: subject_id.to_string(),
        values: out,
        method: SamplingMethod::Balanced,
        seed: None,
    })
}
