//! In-memory grayscale images, ROI masks and reference rectangles.

use alloc::vec::Vec;

use crate::error::{Error, Result};

/// A 2D grid of finite real intensities, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct GrayImage {
    width: usize,
    height: usize,
    pixels: Vec<f64>,
}

impl GrayImage {
    /// Builds an image, validating shape and finiteness of every sample.
    pub fn new(width: usize, height: usize, pixels: Vec<f64>) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::Empty("image dimensions"));
        }
        if pixels.len() != width * height {
            return Err(Error::LengthMismatch {
                expected: width * height,
                got: pixels.len(),
            });
        }
        if let Some(i) = pixels.iter().position(|v| !v.is_finite()) {
            return Err(Error::NotFinite(i));
        }
        Ok(Self {
            width,
            height,
            pixels,
        })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    /// Row-major pixel slice.
    pub fn pixels(&self) -> &[f64] {
        &self.pixels
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        debug_assert!(row < self.height && col < self.width);
        self.pixels[row * self.width + col]
    }

    pub fn min_max(&self) -> (f64, f64) {
        let mut min = f64::INFINITY;
        let mut max = f64::NEG_INFINITY;
        for &v in &self.pixels {
            min = min.min(v);
            max = max.max(v);
        }
        (min, max)
    }
}

/// Which side of the brain a mask covers. `Whole` is the union of both.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Hemisphere {
    Left,
    Right,
    Whole,
}

impl Hemisphere {
    pub fn as_str(self) -> &'static str {
        match self {
            Hemisphere::Left => "left",
            Hemisphere::Right => "right",
            Hemisphere::Whole => "whole",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "left" => Some(Hemisphere::Left),
            "right" => Some(Hemisphere::Right),
            "whole" => Some(Hemisphere::Whole),
            _ => None,
        }
    }
}

/// A non-empty set of in-bounds pixel coordinates over an image grid.
///
/// Members are kept sorted in raster order (row-major), which downstream
/// extraction and sampling rely on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoiMask {
    width: usize,
    height: usize,
    members: Vec<(usize, usize)>,
    hemisphere: Hemisphere,
}

impl RoiMask {
    pub fn new(
        width: usize,
        height: usize,
        mut members: Vec<(usize, usize)>,
        hemisphere: Hemisphere,
    ) -> Result<Self> {
        if members.is_empty() {
            return Err(Error::Empty("ROI mask"));
        }
        for &(row, col) in &members {
            if row >= height || col >= width {
                return Err(Error::OutOfBounds {
                    row,
                    col,
                    width,
                    height,
                });
            }
        }
        members.sort_unstable();
        members.dedup();
        Ok(Self {
            width,
            height,
            members,
            hemisphere,
        })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn hemisphere(&self) -> Hemisphere {
        self.hemisphere
    }

    /// Coordinates in raster order.
    pub fn members(&self) -> &[(usize, usize)] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn matches(&self, image: &GrayImage) -> bool {
        self.width == image.width() && self.height == image.height()
    }

    /// Union of two hemisphere masks over the same grid.
    pub fn union(&self, other: &RoiMask) -> Result<RoiMask> {
        if self.width != other.width || self.height != other.height {
            return Err(Error::DimensionMismatch {
                expected_width: self.width,
                expected_height: self.height,
                width: other.width,
                height: other.height,
            });
        }
        let mut members = self.members.clone();
        members.extend_from_slice(&other.members);
        RoiMask::new(self.width, self.height, members, Hemisphere::Whole)
    }
}

/// Axis-aligned rectangle given as (top row, left column, row count, column count).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Rect {
    pub row0: usize,
    pub col0: usize,
    pub rows: usize,
    pub cols: usize,
}

impl Rect {
    pub fn new(row0: usize, col0: usize, rows: usize, cols: usize) -> Self {
        Self {
            row0,
            col0,
            rows,
            cols,
        }
    }

    pub fn area(&self) -> usize {
        self.rows * self.cols
    }

    pub fn fits(&self, image: &GrayImage) -> bool {
        self.rows >= 1
            && self.cols >= 1
            && self.row0 + self.rows <= image.height()
            && self.col0 + self.cols <= image.width()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn image_rejects_bad_shapes() {
        assert!(matches!(
            GrayImage::new(2, 2, vec![1.0, 2.0, 3.0]),
            Err(Error::LengthMismatch {
                expected: 4,
                got: 3
            })
        ));
        assert!(matches!(GrayImage::new(0, 2, vec![]), Err(Error::Empty(_))));
        assert!(matches!(
            GrayImage::new(2, 1, vec![1.0, f64::NAN]),
            Err(Error::NotFinite(1))
        ));
    }

    #[test]
    fn mask_sorts_members_into_raster_order() {
        let mask = RoiMask::new(3, 3, vec![(2, 0), (0, 1), (1, 2)], Hemisphere::Left).unwrap();
        assert_eq!(mask.members(), &[(0, 1), (1, 2), (2, 0)]);
    }

    #[test]
    fn mask_rejects_empty_and_out_of_bounds() {
        assert!(matches!(
            RoiMask::new(2, 2, vec![], Hemisphere::Whole),
            Err(Error::Empty(_))
        ));
        assert!(matches!(
            RoiMask::new(2, 2, vec![(2, 0)], Hemisphere::Whole),
            Err(Error::OutOfBounds { .. })
        ));
    }

    #[test]
    fn union_merges_and_dedups() {
        let left = RoiMask::new(2, 2, vec![(0, 0), (0, 1)], Hemisphere::Left).unwrap();
        let right = RoiMask::new(2, 2, vec![(0, 1), (1, 1)], Hemisphere::Right).unwrap();
        let whole = left.union(&right).unwrap();
        assert_eq!(whole.members(), &[(0, 0), (0, 1), (1, 1)]);
        assert_eq!(whole.hemisphere(), Hemisphere::Whole);
    }
}
