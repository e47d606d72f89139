//! Synthetic datasets with planted darkness and known ground truth.
//!
//! Each phantom slice is a bright brain disc on a dark air background with
//! two elliptical ROIs. A contiguous blob covering a planted fraction of each
//! ROI is darkened by a fixed delta, Gaussian noise is added, and samples are
//! rounded to the integer range [0, 255] so written files reproduce the
//! in-memory data exactly. The planted fractions give an objective
//! light-to-dark ranking and tercile clustering to score descriptors against.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::image::{GrayImage, Hemisphere, RoiMask};
use crate::rng::{Gaussian, SplitMix64};
use crate::stats::{Cluster, Clustering, Ranking};

/// Axis-aligned ellipse in pixel coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ellipse {
    pub center_row: f64,
    pub center_col: f64,
    pub semi_row: f64,
    pub semi_col: f64,
}

impl Ellipse {
    pub fn contains(&self, row: usize, col: usize) -> bool {
        let dr = (row as f64 - self.center_row) / self.semi_row;
        let dc = (col as f64 - self.center_col) / self.semi_col;
        dr * dr + dc * dc <= 1.0
    }

    fn members(&self, width: usize, height: usize) -> Vec<(usize, usize)> {
        let mut members = Vec::new();
        for row in 0..height {
            for col in 0..width {
                if self.contains(row, col) {
                    members.push((row, col));
                }
            }
        }
        members
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PhantomSpec {
    pub subject_count: usize,
    pub width: usize,
    pub height: usize,
    pub left_roi: Ellipse,
    pub right_roi: Ellipse,
    pub brain_center: (f64, f64),
    pub brain_radius: f64,
    pub base_intensity: f64,
    /// Intensity drop of the planted blob below the base.
    pub dark_delta: f64,
    /// Planted hypointense ROI fraction per subject, strictly increasing.
    pub fractions: Vec<f64>,
    pub noise_sigma: f64,
    pub seed: u64,
}

impl PhantomSpec {
    /// Conventional geometry: brain disc filling most of the frame, two
    /// upright ellipses side by side, fractions evenly spaced from 0 to
    /// `max_fraction`.
    #[allow(clippy::too_many_arguments)]
    pub fn standard(
        subject_count: usize,
        width: usize,
        height: usize,
        base_intensity: f64,
        dark_delta: f64,
        noise_sigma: f64,
        max_fraction: f64,
        seed: u64,
    ) -> Self {
        let w = width as f64;
        let h = height as f64;
        let fractions = (0..subject_count)
            .map(|k| {
                if subject_count < 2 {
                    0.0
                } else {
                    max_fraction * k as f64 / (subject_count - 1) as f64
                }
            })
            .collect();
        Self {
            subject_count,
            width,
            height,
            left_roi: Ellipse {
                center_row: h / 2.0,
                center_col: w * 0.32,
                semi_row: h * 0.19,
                semi_col: w * 0.14,
            },
            right_roi: Ellipse {
                center_row: h / 2.0,
                center_col: w * 0.68,
                semi_row: h * 0.19,
                semi_col: w * 0.14,
            },
            brain_center: (h / 2.0, w / 2.0),
            brain_radius: 0.47 * w.min(h),
            base_intensity,
            dark_delta,
            fractions,
            noise_sigma,
            seed,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.subject_count < 3 {
            return Err(Error::InvalidSpec(format!(
                "need at least 3 subjects for tercile clusters, got {}",
                self.subject_count
            )));
        }
        if self.fractions.len() != self.subject_count {
            return Err(Error::InvalidSpec(format!(
                "{} fractions for {} subjects",
                self.fractions.len(),
                self.subject_count
            )));
        }
        for pair in self.fractions.windows(2) {
            if pair[1] <= pair[0] {
                return Err(Error::InvalidSpec(
                    "fractions must be strictly increasing".into(),
                ));
            }
        }
        if self.fractions.iter().any(|&f| !(0.0..1.0).contains(&f)) {
            return Err(Error::InvalidSpec("fractions must lie in [0, 1)".into()));
        }
        if self.dark_delta <= 0.0 || self.noise_sigma < 0.0 {
            return Err(Error::InvalidSpec(
                "dark_delta must be positive and noise_sigma nonnegative".into(),
            ));
        }
        if self.base_intensity - self.dark_delta < 0.0 || self.base_intensity > 255.0 {
            return Err(Error::InvalidSpec(
                "intensities must stay inside [0, 255]".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PhantomSubject {
    pub id: String,
    pub image: GrayImage,
    pub left: RoiMask,
    pub right: RoiMask,
    pub label: Cluster,
    pub fraction: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PhantomDataset {
    /// Subjects in a seeded shuffled order, so dataset order carries no
    /// information about darkness and tie-breaks cannot fake a ranking.
    pub subjects: Vec<PhantomSubject>,
    /// Subject ids by ascending planted fraction (light to dark).
    pub planted_ranking: Ranking,
    /// Terciles of the planted ranking, remainder to dark.
    pub planted_clusters: Clustering,
}

/// Grows a contiguous blob of `target` pixels by breadth-first search from
/// the mask pixel nearest the given point. Neighbor order and the queue are
/// fixed, so the blob for a larger target is a superset of a smaller one.
fn grow_blob(mask: &RoiMask, start_near: (f64, f64), target: usize) -> BTreeSet<(usize, usize)> {
    let mut blob = BTreeSet::new();
    if target == 0 {
        return blob;
    }
    let members: BTreeSet<(usize, usize)> = mask.members().iter().copied().collect();
    let seed = *mask
        .members()
        .iter()
        .min_by(|&&(ar, ac), &&(br, bc)| {
            let da = (ar as f64 - start_near.0) * (ar as f64 - start_near.0)
                + (ac as f64 - start_near.1) * (ac as f64 - start_near.1);
            let db = (br as f64 - start_near.0) * (br as f64 - start_near.0)
                + (bc as f64 - start_near.1) * (bc as f64 - start_near.1);
            da.total_cmp(&db)
        })
        .expect("mask is non-empty");
    let mut queue = alloc::collections::VecDeque::new();
    queue.push_back(seed);
    blob.insert(seed);
    while let Some((row, col)) = queue.pop_front() {
        if blob.len() >= target {
            break;
        }
        let neighbors = [
            (row.wrapping_sub(1), col),
            (row + 1, col),
            (row, col.wrapping_sub(1)),
            (row, col + 1),
        ];
        for next in neighbors {
            if blob.len() >= target {
                break;
            }
            if members.contains(&next) && blob.insert(next) {
                queue.push_back(next);
            }
        }
    }
    blob
}

/// Generates the full dataset with planted ranking and clusters. Fully
/// deterministic given the spec, independent of evaluation order.
pub fn generate(spec: &PhantomSpec) -> Result<PhantomDataset> {
    spec.validate()?;
    let left_members = spec.left_roi.members(spec.width, spec.height);
    let right_members = spec.right_roi.members(spec.width, spec.height);
    if left_members.is_empty() || right_members.is_empty() {
        return Err(Error::InvalidSpec("an ROI ellipse covers no pixels".into()));
    }
    let left_set: BTreeSet<_> = left_members.iter().copied().collect();
    if right_members.iter().any(|p| left_set.contains(p)) {
        return Err(Error::InvalidSpec("ROI ellipses overlap".into()));
    }
    let left_mask = RoiMask::new(spec.width, spec.height, left_members, Hemisphere::Left)?;
    let right_mask = RoiMask::new(spec.width, spec.height, right_members, Hemisphere::Right)?;

    let id_width = {
        let mut digits = 1;
        let mut n = spec.subject_count;
        while n >= 10 {
            digits += 1;
            n /= 10;
        }
        digits
    };

    let n = spec.subject_count;
    let tercile = n / 3;
    let label_of = |rank: usize| -> Cluster {
        if rank < tercile {
            Cluster::Light
        } else if rank < 2 * tercile {
            Cluster::Mid
        } else {
            Cluster::Dark
        }
    };

    let mut subjects = Vec::with_capacity(n);
    for (k, &fraction) in spec.fractions.iter().enumerate() {
        let id = format!("s{:0width$}", k + 1, width = id_width);
        let left_target = libm::round(fraction * left_mask.len() as f64) as usize;
        let right_target = libm::round(fraction * right_mask.len() as f64) as usize;
        let left_blob = grow_blob(
            &left_mask,
            (spec.left_roi.center_row, spec.left_roi.center_col),
            left_target,
        );
        let right_blob = grow_blob(
            &right_mask,
            (spec.right_roi.center_row, spec.right_roi.center_col),
            right_target,
        );

        let mut noise = Gaussian::new(SplitMix64::fork(spec.seed, k as u64));
        let mut pixels = Vec::with_capacity(spec.width * spec.height);
        for row in 0..spec.height {
            for col in 0..spec.width {
                let dr = row as f64 - spec.brain_center.0;
                let dc = col as f64 - spec.brain_center.1;
                let in_brain = dr * dr + dc * dc <= spec.brain_radius * spec.brain_radius;
                let mut value = if in_brain { spec.base_intensity } else { 0.0 };
                if left_blob.contains(&(row, col)) || right_blob.contains(&(row, col)) {
                    value = spec.base_intensity - spec.dark_delta;
                }
                value += spec.noise_sigma * noise.draw();
                pixels.push(libm::round(value.clamp(0.0, 255.0)));
            }
        }
        let image = GrayImage::new(spec.width, spec.height, pixels)?;
        subjects.push(PhantomSubject {
            id,
            image,
            left: left_mask.clone(),
            right: right_mask.clone(),
            label: label_of(k),
            fraction,
        });
    }

    let planted_ranking = Ranking::new(subjects.iter().map(|s| s.id.clone()).collect())?;
    let planted_clusters =
        Clustering::from_pairs(subjects.iter().map(|s| (s.id.clone(), s.label)))?;

    // Shuffle the dataset order (stream n never collides with the per-subject
    // noise streams 0..n-1).
    let mut order_rng = SplitMix64::fork(spec.seed, n as u64);
    let order = crate::rng::shuffled_indices(n, &mut order_rng);
    let mut shuffled = Vec::with_capacity(n);
    for &i in &order {
        shuffled.push(subjects[i].clone());
    }

    Ok(PhantomDataset {
        subjects: shuffled,
        planted_ranking,
        planted_clusters,
    })
}
