//! Binary darkness description: thresholding, hypointensity load, adaptive
//! threshold selection, and radial tessellation features.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::image::RoiMask;
use crate::preprocess::RoiIntensities;
use crate::stats::{Cluster, ClusterCount};

/// Fraction of ROI pixels strictly below a threshold.
#[derive(Debug, Clone, PartialEq)]
pub struct HypoLoad {
    pub threshold: f64,
    pub hypo_count: usize,
    pub total: usize,
    pub load: f64,
}

/// Reference-region threshold: mean minus standard deviation.
pub fn reference_threshold(ref_mean: f64, ref_std: f64) -> f64 {
    debug_assert!(ref_std >= 0.0);
    ref_mean - ref_std
}

/// Counts values strictly below the threshold; pixels exactly at the
/// threshold are not hypointense.
pub fn hypo_load(values: &[f64], threshold: f64) -> Result<HypoLoad> {
    if values.is_empty() {
        return Err(Error::Empty("ROI values"));
    }
    let hypo_count = values.iter().filter(|&&v| v < threshold).count();
    Ok(HypoLoad {
        threshold,
        hypo_count,
        total: values.len(),
        load: hypo_count as f64 / values.len() as f64,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct ThresholdCandidate {
    pub threshold: f64,
    pub tpr: f64,
    pub fpr: f64,
}

/// Outcome of the adaptive threshold sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct ThresholdReport {
    pub candidates: Vec<ThresholdCandidate>,
    pub chosen_index: usize,
}

impl ThresholdReport {
    pub fn chosen(&self) -> f64 {
        self.candidates[self.chosen_index].threshold
    }
}

/// Sweeps evenly spaced candidate thresholds over the global range of the
/// (per-subject normalized) ROI values and keeps the one that best separates
/// the dark cluster from the rest.
///
/// For each candidate the subjects are ranked light to dark by ascending
/// load, the ranking is cut into the ground-truth cluster sizes, and the dark
/// cut is scored as true/false positive rates with dark as the positive
/// class. The winner maximizes TPR - FPR; ties go to the smaller threshold.
pub fn adaptive_threshold_select(
    normalized_values: &[Vec<f64>],
    labels: &[Cluster],
    candidate_count: usize,
) -> Result<ThresholdReport> {
    if normalized_values.is_empty() {
        return Err(Error::Empty("subject list"));
    }
    if labels.len() != normalized_values.len() {
        return Err(Error::LengthMismatch {
            expected: normalized_values.len(),
            got: labels.len(),
        });
    }
    if candidate_count < 2 {
        return Err(Error::SampleTooSmall {
            min: 2,
            got: candidate_count,
        });
    }
    let mut min = f64::INFINITY;
    let mut max = f64::NEG_INFINITY;
    for values in normalized_values {
        if values.is_empty() {
            return Err(Error::Empty("ROI values"));
        }
        for &v in values {
            min = min.min(v);
            max = max.max(v);
        }
    }
    if min == max {
        return Err(Error::DegenerateRange);
    }

    let sizes = ClusterCount::tally(labels);
    let dark_total = sizes.of(Cluster::Dark);
    if dark_total == 0 {
        return Err(Error::MissingCluster("dark"));
    }
    let nondark_total = labels.len() - dark_total;
    if nondark_total == 0 {
        return Err(Error::MissingCluster("non-dark"));
    }

    let mut candidates = Vec::with_capacity(candidate_count);
    let mut best = 0usize;
    let mut best_score = f64::NEG_INFINITY;
    for j in 0..candidate_count {
        // Both endpoints are hit exactly.
        let threshold = if j == candidate_count - 1 {
            max
        } else {
            min + (max - min) * (j as f64 / (candidate_count - 1) as f64)
        };
        let loads: Vec<f64> = normalized_values
            .iter()
            .map(|values| hypo_load(values, threshold).map(|h| h.load))
            .collect::<Result<_>>()?;
        // Light to dark: ascending load, dataset order on ties.
        let mut order: Vec<usize> = (0..loads.len()).collect();
        order.sort_by(|&a, &b| loads[a].total_cmp(&loads[b]));
        let predicted_dark = &order[loads.len() - dark_total..];
        let true_positive = predicted_dark
            .iter()
            .filter(|&&i| labels[i] == Cluster::Dark)
            .count();
        let tpr = true_positive as f64 / dark_total as f64;
        let fpr = (dark_total - true_positive) as f64 / nondark_total as f64;
        let score = tpr - fpr;
        if score > best_score {
            best_score = score;
            best = j;
        }
        candidates.push(ThresholdCandidate {
            threshold,
            tpr,
            fpr,
        });
    }
    Ok(ThresholdReport {
        candidates,
        chosen_index: best,
    })
}

/// Partition of a mask into radially equidistant bands around its
/// outermost posterior pixel.
#[derive(Debug, Clone, PartialEq)]
pub struct Tessellation {
    pub center: (usize, usize),
    pub delta_r: f64,
    pub bands: Vec<Vec<(usize, usize)>>,
}

impl Tessellation {
    pub fn band_count(&self) -> usize {
        self.bands.len()
    }

    pub fn total_pixels(&self) -> usize {
        self.bands.iter().map(Vec::len).sum()
    }
}

fn distance(a: (usize, usize), b: (usize, usize)) -> f64 {
    let dr = a.0 as f64 - b.0 as f64;
    let dc = a.1 as f64 - b.1 as f64;
    libm::sqrt(dr * dr + dc * dc)
}

/// Bins mask pixels into `n` concentric distance bands of equal width.
///
/// The center is the mask pixel with the greatest row index (smallest column
/// on ties). Band `i` holds pixels at distance `[i*dr, (i+1)*dr)` from the
/// center; the last band is closed on the right so the farthest pixel is
/// included.
pub fn tessellate(mask: &RoiMask, n: usize) -> Result<Tessellation> {
    if n == 0 {
        return Err(Error::Empty("band count"));
    }
    let center = *mask
        .members()
        .iter()
        .max_by_key(|&&(r, c)| (r, core::cmp::Reverse(c)))
        .expect("mask is non-empty");
    let r_max = mask
        .members()
        .iter()
        .map(|&p| distance(p, center))
        .fold(0.0, f64::max);
    let delta_r = r_max / n as f64;
    let mut bands = vec![Vec::new(); n];
    for &p in mask.members() {
        let band = if delta_r == 0.0 {
            0
        } else {
            ((libm::floor(distance(p, center) / delta_r)) as usize).min(n - 1)
        };
        bands[band].push(p);
    }
    Ok(Tessellation {
        center,
        delta_r,
        bands,
    })
}

/// Per-band (hypointense, total) pixel counts under the given threshold.
///
/// The band coordinates must all be present in `roi`, i.e. the tessellation
/// and the intensities must come from the same mask.
pub fn subregion_counts(
    tess: &Tessellation,
    roi: &RoiIntensities,
    threshold: f64,
) -> Result<Vec<(usize, usize)>> {
    let coords = roi.coords();
    let values = roi.values();
    let mut counts = Vec::with_capacity(tess.bands.len());
    for band in &tess.bands {
        let mut hypo = 0usize;
        for &p in band {
            let i = coords.binary_search(&p).map_err(|_| Error::OutOfBounds {
                row: p.0,
                col: p.1,
                width: 0,
                height: 0,
            })?;
            if values[i] < threshold {
                hypo += 1;
            }
        }
        counts.push((hypo, band.len()));
    }
    Ok(counts)
}

/// Per-band hypointensity fractions; an empty band yields 0.
pub fn subregion_features(
    tess: &Tessellation,
    roi: &RoiIntensities,
    threshold: f64,
) -> Result<Vec<f64>> {
    Ok(subregion_counts(tess, roi, threshold)?
        .into_iter()
        .map(|(hypo, total)| {
            if total == 0 {
                0.0
            } else {
                hypo as f64 / total as f64
            }
        })
        .collect())
}
