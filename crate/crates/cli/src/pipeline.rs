//! Descriptor pipelines behind the CLI subcommands.
//!
//! Per-subject stages can fan out over a small worker pool; every merge is
//! order-stable by subject index, so outputs are identical for any thread
//! count.

use hypoquant_core::binary::{
    adaptive_threshold_select, hypo_load, reference_threshold, subregion_counts, tessellate,
};
use hypoquant_core::eigen::{fit_pca, nonbinary_rank, project};
use hypoquant_core::preprocess::{
    extract_roi, normalize_intensity, normalize_roi, reference_region_stats, RoiIntensities,
};
use hypoquant_core::sampling::{balanced_sample, min_roi_size, raster_shuffle_sample};
use hypoquant_core::stats::correlation_matrix;
use hypoquant_core::{
    CorrMatrix, EigenModel, Feature, Hemisphere, HypoLoad, NonbinaryResult, Projection, Ranking,
    Rect, RoiVector, SamplingMethod, ThresholdReport,
};

use crate::error::{Error, Result};
use crate::manifest::{Dataset, Subject};

/// Maps `f(index, item)` over items, fanning out to `threads` workers.
/// Results are collected by index, so the output order never depends on
/// scheduling.
pub fn par_map<T, R, F>(items: &[T], threads: usize, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(usize, &T) -> R + Sync,
{
    let threads = threads.max(1).min(items.len().max(1));
    if threads == 1 {
        return items.iter().enumerate().map(|(i, t)| f(i, t)).collect();
    }
    let chunk = items.len().div_ceil(threads);
    let mut chunks: Vec<Vec<R>> = Vec::new();
    std::thread::scope(|scope| {
        let mut handles = Vec::new();
        for (w, slice) in items.chunks(chunk).enumerate() {
            let f = &f;
            handles.push(scope.spawn(move || {
                slice
                    .iter()
                    .enumerate()
                    .map(|(i, t)| f(w * chunk + i, t))
                    .collect::<Vec<R>>()
            }));
        }
        chunks = handles
            .into_iter()
            .map(|h| h.join().expect("worker panicked"))
            .collect();
    });
    chunks.into_iter().flatten().collect()
}

fn par_try_map<T, R, F>(items: &[T], threads: usize, f: F) -> Result<Vec<R>>
where
    T: Sync,
    R: Send,
    F: Fn(usize, &T) -> Result<R> + Sync,
{
    par_map(items, threads, f).into_iter().collect()
}

/// How the darkness threshold is chosen.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ThresholdMode {
    /// Per-subject threshold from a reference rectangle: mean - std of the
    /// rectangle on that subject's normalized image.
    Reference(Rect),
    /// One common threshold swept over per-subject relative-normalized ROI
    /// values; needs ground-truth labels.
    Adaptive { candidates: usize },
}

#[derive(Debug, Clone)]
pub struct AnalysisConfig {
    pub hemisphere: Hemisphere,
    pub sampling: SamplingMethod,
    pub seed: u64,
    pub variance_fraction: f64,
    pub threshold: ThresholdMode,
    pub tessellation: usize,
    pub threads: usize,
    /// Feed relative-normalized ROI rows into the eigen fit instead of raw
    /// normalized-image values.
    pub row_normalize: bool,
}

impl Default for AnalysisConfig {
    fn default() -> Self {
        Self {
            hemisphere: Hemisphere::Whole,
            sampling: SamplingMethod::Balanced,
            seed: 42,
            variance_fraction: 0.70,
            threshold: ThresholdMode::Adaptive { candidates: 101 },
            tessellation: 10,
            threads: 1,
            row_normalize: false,
        }
    }
}

/// Normalized images' ROI values per subject, in dataset order.
pub fn normalized_rois(
    dataset: &Dataset,
    hemisphere: Hemisphere,
    threads: usize,
) -> Result<Vec<RoiIntensities>> {
    par_try_map(&dataset.subjects, threads, |_, subject| {
        let normalized = normalize_intensity(&subject.image);
        extract_roi(&normalized, subject.mask(hemisphere))
            .map_err(Error::Core)
            .map_err(Error::for_subject(&subject.id))
    })
}

/// Binary description of a dataset: per-subject loads, thresholds, the value
/// space the thresholds live in, and the light-to-dark ranking.
#[derive(Debug, Clone)]
pub struct BinaryDescription {
    pub loads: Vec<HypoLoad>,
    /// Value lists the loads and thresholds refer to (raw ROI values for
    /// reference mode, relative-normalized for adaptive mode).
    pub values: Vec<RoiIntensities>,
    pub report: Option<ThresholdReport>,
    pub ranking: Ranking,
}

impl BinaryDescription {
    pub fn load_values(&self) -> Vec<f64> {
        self.loads.iter().map(|h| h.load).collect()
    }
}

/// Ranks subjects light to dark by ascending load, dataset order on ties.
fn load_ranking(dataset: &Dataset, loads: &[HypoLoad]) -> Result<Ranking> {
    let mut order: Vec<usize> = (0..loads.len()).collect();
    order.sort_by(|&a, &b| loads[a].load.total_cmp(&loads[b].load));
    Ranking::new(
        order
            .iter()
            .map(|&i| dataset.subjects[i].id.clone())
            .collect(),
    )
    .map_err(Error::Core)
}

pub fn binary_description(
    dataset: &Dataset,
    rois: &[RoiIntensities],
    config: &AnalysisConfig,
) -> Result<BinaryDescription> {
    match config.threshold {
        ThresholdMode::Reference(rect) => {
            let loads = par_try_map(&dataset.subjects, config.threads, |i, subject| {
                let normalized = normalize_intensity(&subject.image);
                let (mean, std) = reference_region_stats(&normalized, rect)
                    .map_err(Error::Core)
                    .map_err(Error::for_subject(&subject.id))?;
                let threshold = reference_threshold(mean, std);
                hypo_load(rois[i].values(), threshold)
                    .map_err(Error::Core)
                    .map_err(Error::for_subject(&subject.id))
            })?;
            let ranking = load_ranking(dataset, &loads)?;
            Ok(BinaryDescription {
                loads,
                values: rois.to_vec(),
                report: None,
                ranking,
            })
        }
        ThresholdMode::Adaptive { candidates } => {
            let labels = dataset.labels().ok_or_else(|| {
                Error::Data("adaptive threshold selection needs a label for every subject".into())
            })?;
            let normalized: Vec<RoiIntensities> = par_try_map(rois, config.threads, |i, roi| {
                let values = normalize_roi(roi.values())
                    .map_err(Error::Core)
                    .map_err(Error::for_subject(&dataset.subjects[i].id))?;
                roi.with_values(values).map_err(Error::Core)
            })?;
            let value_lists: Vec<Vec<f64>> =
                normalized.iter().map(|roi| roi.values().to_vec()).collect();
            let report = adaptive_threshold_select(&value_lists, &labels, candidates)?;
            let chosen = report.chosen();
            let loads = value_lists
                .iter()
                .map(|values| hypo_load(values, chosen).map_err(Error::Core))
                .collect::<Result<Vec<_>>>()?;
            let ranking = load_ranking(dataset, &loads)?;
            Ok(BinaryDescription {
                loads,
                values: normalized,
                report: Some(report),
                ranking,
            })
        }
    }
}

/// Per-band (hypo, total) counts for one subject. A whole-brain request
/// tessellates each hemisphere around its own center and merges bands by
/// index, so band i covers both hemispheres' i-th ring.
pub fn subject_band_counts(
    subject: &Subject,
    roi: &RoiIntensities,
    hemisphere: Hemisphere,
    bands: usize,
    threshold: f64,
) -> Result<Vec<(usize, usize)>> {
    let merge = |mut acc: Vec<(usize, usize)>, other: Vec<(usize, usize)>| {
        for (a, b) in acc.iter_mut().zip(other) {
            a.0 += b.0;
            a.1 += b.1;
        }
        acc
    };
    match hemisphere {
        Hemisphere::Left | Hemisphere::Right => {
            let tess = tessellate(subject.mask(hemisphere), bands)?;
            subregion_counts(&tess, roi, threshold).map_err(Error::Core)
        }
        Hemisphere::Whole => {
            let left = tessellate(&subject.left, bands)?;
            let right = tessellate(&subject.right, bands)?;
            let counts = subregion_counts(&left, roi, threshold)?;
            let other = subregion_counts(&right, roi, threshold)?;
            Ok(merge(counts, other))
        }
    }
}

/// Per-subject band fraction features, dataset order.
pub fn band_features(
    dataset: &Dataset,
    binary: &BinaryDescription,
    hemisphere: Hemisphere,
    bands: usize,
    threads: usize,
) -> Result<Vec<Vec<f64>>> {
    par_try_map(&dataset.subjects, threads, |i, subject| {
        let counts = subject_band_counts(
            subject,
            &binary.values[i],
            hemisphere,
            bands,
            binary.loads[i].threshold,
        )
        .map_err(|e| match e {
            Error::Subject { .. } => e,
            other => Error::for_subject(&subject.id)(other),
        })?;
        Ok(counts
            .into_iter()
            .map(|(hypo, total)| {
                if total == 0 {
                    0.0
                } else {
                    hypo as f64 / total as f64
                }
            })
            .collect())
    })
}

/// Nonbinary description: sampled rows, eigen model, projections and the
/// distance-to-darkest ranking.
#[derive(Debug, Clone)]
pub struct NonbinaryDescription {
    pub rows: Vec<RoiVector>,
    pub model: EigenModel,
    pub projections: Vec<Projection>,
    pub result: NonbinaryResult,
}

/// Samples every ROI to the dataset's minimum ROI size.
pub fn sampled_rows(
    dataset: &Dataset,
    rois: &[RoiIntensities],
    config: &AnalysisConfig,
) -> Result<Vec<RoiVector>> {
    let length = min_roi_size(dataset.subjects.iter().map(|s| s.mask(config.hemisphere)))?;
    par_try_map(&dataset.subjects, config.threads, |i, subject| {
        let roi = if config.row_normalize {
            let values = normalize_roi(rois[i].values())
                .map_err(Error::Core)
                .map_err(Error::for_subject(&subject.id))?;
            rois[i].with_values(values)?
        } else {
            rois[i].clone()
        };
        let row = match config.sampling {
            SamplingMethod::Balanced => balanced_sample(&subject.id, &roi, length),
            SamplingMethod::Shuffle => {
                // Independent per-subject stream derived from the base seed.
                let seed = subject_seed(config.seed, i);
                raster_shuffle_sample(&subject.id, &roi, length, seed)
            }
        };
        row.map_err(Error::Core)
            .map_err(Error::for_subject(&subject.id))
    })
}

/// Per-subject sampling seed: substream `index` of the base seed.
pub fn subject_seed(base: u64, index: usize) -> u64 {
    hypoquant_core::rng::SplitMix64::fork(base, index as u64).next_u64()
}

pub fn nonbinary_description(
    dataset: &Dataset,
    rois: &[RoiIntensities],
    binary: &BinaryDescription,
    config: &AnalysisConfig,
) -> Result<NonbinaryDescription> {
    let rows = sampled_rows(dataset, rois, config)?;
    let mut model = fit_pca(&rows)?;
    if model.is_degenerate() {
        return Err(Error::Data(
            "all ROI rows are identical; eigen description is undefined".into(),
        ));
    }
    model.retain_fraction(config.variance_fraction)?;
    let projections = par_try_map(&rows, config.threads, |_, row| {
        project(&model, row).map_err(Error::Core)
    })?;
    let result = nonbinary_rank(&projections, &binary.load_values())?;
    Ok(NonbinaryDescription {
        rows,
        model,
        projections,
        result,
    })
}

/// Single-tessellation feature columns: one scalar feature per band and one
/// per retained component.
pub fn scalar_features(
    band_values: &[Vec<f64>],
    projections: &[Projection],
) -> (Vec<Feature>, Vec<Feature>) {
    let bands = band_values.first().map(Vec::len).unwrap_or(0);
    let binary: Vec<Feature> = (0..bands)
        .map(|b| {
            let column: Vec<f64> = band_values.iter().map(|v| v[b]).collect();
            Feature::scalar(format!("b{}", b + 1), &column)
        })
        .collect();
    let components = projections
        .first()
        .map(|p| p.coefficients.len())
        .unwrap_or(0);
    let nonbinary: Vec<Feature> = (0..components)
        .map(|c| {
            let column: Vec<f64> = projections.iter().map(|p| p.coefficients[c]).collect();
            Feature::scalar(format!("g{}", c + 1), &column)
        })
        .collect();
    (binary, nonbinary)
}

/// Block of the three correlation matrices the correlate subcommand emits.
#[derive(Debug, Clone)]
pub struct CorrelationBlock {
    pub binary_binary: Option<CorrMatrix>,
    pub nonbinary_nonbinary: Option<CorrMatrix>,
    pub binary_nonbinary: Option<CorrMatrix>,
}

pub fn correlate_features(
    binary: Option<&[Feature]>,
    nonbinary: Option<&[Feature]>,
) -> Result<CorrelationBlock> {
    let bb = match binary {
        Some(b) => Some(correlation_matrix(b, b)?),
        None => None,
    };
    let nn = match nonbinary {
        Some(n) => Some(correlation_matrix(n, n)?),
        None => None,
    };
    let bn = match (binary, nonbinary) {
        (Some(b), Some(n)) => Some(correlation_matrix(b, n)?),
        _ => None,
    };
    Ok(CorrelationBlock {
        binary_binary: bb,
        nonbinary_nonbinary: nn,
        binary_nonbinary: bn,
    })
}

/// Entrywise mean of correlation matrices from several runs. An entry
/// flagged in any run stays flagged.
pub fn average_matrices(matrices: &[CorrMatrix]) -> Result<CorrMatrix> {
    let first = matrices
        .first()
        .ok_or(Error::Data("no correlation matrices to average".into()))?;
    let mut values: Vec<Vec<Option<f64>>> = first.values.clone();
    for m in &matrices[1..] {
        if m.row_labels != first.row_labels || m.col_labels != first.col_labels {
            return Err(Error::Data(
                "correlation matrices from different runs do not line up".into(),
            ));
        }
        for (acc_row, row) in values.iter_mut().zip(&m.values) {
            for (acc, &v) in acc_row.iter_mut().zip(row) {
                *acc = match (*acc, v) {
                    (Some(a), Some(b)) => Some(a + b),
                    _ => None,
                };
            }
        }
    }
    let n = matrices.len() as f64;
    for row in values.iter_mut() {
        for v in row.iter_mut() {
            *v = v.map(|sum| sum / n);
        }
    }
    Ok(CorrMatrix {
        row_labels: first.row_labels.clone(),
        col_labels: first.col_labels.clone(),
        values,
    })
}
