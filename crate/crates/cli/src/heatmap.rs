//! PPM rendering of correlation matrices.
//!
//! Linear color ramp: blue at -1, white at 0, red at +1, one 16x16 pixel
//! cell per entry. Flagged (undefined) entries render mid-gray. The ramp is
//! fixed, so renderings are bit-exact across runs.

use std::path::Path;

use hypoquant_core::CorrMatrix;

use crate::error::Result;
use crate::pnm::save_ppm;

pub const CELL: usize = 16;

fn color(value: Option<f64>) -> [u8; 3] {
    match value {
        None => [128, 128, 128],
        Some(v) => {
            let v = v.clamp(-1.0, 1.0);
            if v < 0.0 {
                let level = (255.0 * (1.0 + v)).round() as u8;
                [level, level, 255]
            } else {
                let level = (255.0 * (1.0 - v)).round() as u8;
                [255, level, level]
            }
        }
    }
}

/// Expands every matrix entry into a CELL x CELL block of its ramp color.
pub fn render(matrix: &CorrMatrix) -> (usize, usize, Vec<u8>) {
    let rows = matrix.values.len();
    let cols = matrix.col_labels.len();
    let width = cols * CELL;
    let height = rows * CELL;
    let mut rgb = vec![0u8; width * height * 3];
    for (i, row) in matrix.values.iter().enumerate() {
        for (j, &value) in row.iter().enumerate() {
            let [r, g, b] = color(value);
            for dy in 0..CELL {
                let y = i * CELL + dy;
                for dx in 0..CELL {
                    let x = j * CELL + dx;
                    let at = (y * width + x) * 3;
                    rgb[at] = r;
                    rgb[at + 1] = g;
                    rgb[at + 2] = b;
                }
            }
        }
    }
    (width, height, rgb)
}

pub fn save_heatmap(matrix: &CorrMatrix, path: &Path) -> Result<()> {
    let (width, height, rgb) = render(matrix);
    save_ppm(width, height, &rgb, path)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ramp_endpoints_and_midpoint() {
        assert_eq!(color(Some(-1.0)), [0, 0, 255]);
        assert_eq!(color(Some(0.0)), [255, 255, 255]);
        assert_eq!(color(Some(1.0)), [255, 0, 0]);
        assert_eq!(color(Some(0.5)), [255, 128, 128]);
        assert_eq!(color(Some(-0.5)), [128, 128, 255]);
        assert_eq!(color(None), [128, 128, 128]);
    }

    #[test]
    fn render_shapes_one_cell_per_entry() {
        let matrix = CorrMatrix {
            row_labels: vec!["a".into(), "b".into()],
            col_labels: vec!["x".into(), "y".into(), "z".into()],
            values: vec![
                vec![Some(1.0), Some(0.0), None],
                vec![Some(-1.0), Some(0.25), Some(0.75)],
            ],
        };
        let (width, height, rgb) = render(&matrix);
        assert_eq!((width, height), (48, 32));
        assert_eq!(rgb.len(), 48 * 32 * 3);
        // Top-left pixel is the +1 cell (pure red).
        assert_eq!(&rgb[..3], &[255, 0, 0]);
    }
}
