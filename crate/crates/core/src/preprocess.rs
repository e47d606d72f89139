//! Intensity normalization and ROI value extraction.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::image::{GrayImage, Rect, RoiMask};

/// ROI pixel values paired with their coordinates, both in raster order.
#[derive(Debug, Clone, PartialEq)]
pub struct RoiIntensities {
    values: Vec<f64>,
    coords: Vec<(usize, usize)>,
}

impl RoiIntensities {
    /// Pairs values with coordinates. Coordinates must already be in strictly
    /// increasing raster order, matching the mask they came from.
    pub fn new(values: Vec<f64>, coords: Vec<(usize, usize)>) -> Result<Self> {
        if values.len() != coords.len() {
            return Err(Error::LengthMismatch {
                expected: coords.len(),
                got: values.len(),
            });
        }
        if values.is_empty() {
            return Err(Error::Empty("ROI intensities"));
        }
        debug_assert!(coords.windows(2).all(|w| w[0] < w[1]));
        Ok(Self { values, coords })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn coords(&self) -> &[(usize, usize)] {
        &self.coords
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Same coordinates with replaced values (e.g. after relative normalization).
    pub fn with_values(&self, values: Vec<f64>) -> Result<Self> {
        RoiIntensities::new(values, self.coords.clone())
    }
}

/// Min-max rescaling of an image onto the uniform range [0, 255].
///
/// Output endpoints are exact: the darkest input pixel maps to 0 and the
/// brightest to 255. A constant image maps to all zeros.
pub fn normalize_intensity(image: &GrayImage) -> GrayImage {
    let (min, max) = image.min_max();
    let range = max - min;
    let pixels = if range == 0.0 {
        alloc::vec![0.0; image.pixels().len()]
    } else {
        image
            .pixels()
            .iter()
            .map(|&v| ((v - min) / range) * 255.0)
            .collect()
    };
    GrayImage::new(image.width(), image.height(), pixels).expect("shape preserved")
}

/// Relative normalization of ROI values: (v - mean) / mean.
///
/// The output is dimensionless with mean zero, making thresholds comparable
/// across subjects.
pub fn normalize_roi(values: &[f64]) -> Result<Vec<f64>> {
    if values.is_empty() {
        return Err(Error::Empty("ROI values"));
    }
    let mean = values.iter().sum::<f64>() / values.len() as f64;
    if mean == 0.0 {
        return Err(Error::ZeroMean);
    }
    Ok(values.iter().map(|&v| (v - mean) / mean).collect())
}

/// Reads the masked pixel values of an image in sequential raster order.
pub fn extract_roi(image: &GrayImage, mask: &RoiMask) -> Result<RoiIntensities> {
    if !mask.matches(image) {
        return Err(Error::DimensionMismatch {
            expected_width: image.width(),
            expected_height: image.height(),
            width: mask.width(),
            height: mask.height(),
        });
    }
    let values = mask
        .members()
        .iter()
        .map(|&(r, c)| image.get(r, c))
        .collect();
    RoiIntensities::new(values, mask.members().to_vec())
}

/// Mean and population standard deviation over a rectangular reference region.
pub fn reference_region_stats(image: &GrayImage, rect: Rect) -> Result<(f64, f64)> {
    if !rect.fits(image) {
        return Err(Error::RectOutOfBounds);
    }
    let n = rect.area() as f64;
    let mut sum = 0.0;
    for r in rect.row0..rect.row0 + rect.rows {
        for c in rect.col0..rect.col0 + rect.cols {
            sum += image.get(r, c);
        }
    }
    let mean = sum / n;
    let mut sq = 0.0;
    for r in rect.row0..rect.row0 + rect.rows {
        for c in rect.col0..rect.col0 + rect.cols {
            let d = image.get(r, c) - mean;
            sq += d * d;
        }
    }
    Ok((mean, libm::sqrt(sq / n)))
}
