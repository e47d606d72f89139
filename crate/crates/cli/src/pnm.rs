//! Binary netpbm readers and writers: PGM (P5) images, PBM (P4) or PGM
//! masks, PPM (P6) renderings.
//!
//! PGM samples wider than 8 bits are big-endian, per the format convention.
//! Parse failures report the byte offset of the offending data.

use std::fs;
use std::path::Path;

use hypoquant_core::{GrayImage, Hemisphere, RoiMask};

use crate::error::{Error, Result};

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
    path: &'a Path,
    format: &'static str,
}

impl<'a> Parser<'a> {
    fn fail<T>(&self, offset: usize, reason: impl Into<String>) -> Result<T> {
        Err(Error::Format {
            path: self.path.to_path_buf(),
            format: self.format,
            offset,
            reason: reason.into(),
        })
    }

    /// Skips whitespace and `#` comments between header tokens.
    fn skip_separators(&mut self) {
        while self.pos < self.bytes.len() {
            match self.bytes[self.pos] {
                b' ' | b'\t' | b'\r' | b'\n' => self.pos += 1,
                b'#' => {
                    while self.pos < self.bytes.len() && self.bytes[self.pos] != b'\n' {
                        self.pos += 1;
                    }
                }
                _ => break,
            }
        }
    }

    fn read_number(&mut self, what: &str) -> Result<usize> {
        self.skip_separators();
        let start = self.pos;
        let mut value = 0usize;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            value = value
                .checked_mul(10)
                .and_then(|v| v.checked_add((self.bytes[self.pos] - b'0') as usize))
                .ok_or(())
                .or_else(|_| self.fail(start, format!("{what} overflows")))?;
            self.pos += 1;
        }
        if self.pos == start {
            return self.fail(start, format!("expected {what}"));
        }
        Ok(value)
    }

    /// The header ends with exactly one whitespace byte before the payload.
    fn expect_payload(&mut self) -> Result<usize> {
        match self.bytes.get(self.pos) {
            Some(b' ' | b'\t' | b'\r' | b'\n') => {
                self.pos += 1;
                Ok(self.pos)
            }
            _ => self.fail(self.pos, "expected whitespace before payload"),
        }
    }
}

fn read_file(path: &Path) -> Result<Vec<u8>> {
    fs::read(path).map_err(|e| Error::io(path, e))
}

/// Loads a binary PGM (P5) image, preserving raw sample values.
pub fn load_pgm(path: &Path) -> Result<GrayImage> {
    let bytes = read_file(path)?;
    let (image, _) = parse_pgm(&bytes, path)?;
    Ok(image)
}

fn parse_pgm(bytes: &[u8], path: &Path) -> Result<(GrayImage, usize)> {
    let mut p = Parser {
        bytes,
        pos: 0,
        path,
        format: "PGM",
    };
    if bytes.len() < 2 || &bytes[..2] != b"P5" {
        return p.fail(0, "unsupported magic (want P5)");
    }
    p.pos = 2;
    let width = p.read_number("width")?;
    let height = p.read_number("height")?;
    let maxval_at = {
        p.skip_separators();
        p.pos
    };
    let maxval = p.read_number("maxval")?;
    if maxval == 0 || maxval > 65535 {
        return p.fail(maxval_at, format!("maxval {maxval} out of range 1..=65535"));
    }
    let payload = p.expect_payload()?;
    let sample_bytes = if maxval > 255 { 2 } else { 1 };
    let expected = width
        .checked_mul(height)
        .and_then(|n| n.checked_mul(sample_bytes))
        .ok_or(())
        .or_else(|_| p.fail(2, "image dimensions overflow"))?;
    if bytes.len() - payload < expected {
        return p.fail(
            bytes.len(),
            format!(
                "payload truncated: {} of {expected} bytes",
                bytes.len() - payload
            ),
        );
    }
    let data = &bytes[payload..payload + expected];
    let pixels: Vec<f64> = if sample_bytes == 1 {
        data.iter().map(|&b| b as f64).collect()
    } else {
        data.chunks_exact(2)
            .map(|pair| u16::from_be_bytes([pair[0], pair[1]]) as f64)
            .collect()
    };
    let image = GrayImage::new(width, height, pixels).map_err(Error::Core)?;
    Ok((image, maxval))
}

/// Writes a binary PGM (P5). Every sample must be an integer in
/// [0, 65535]; maxval is 255 when they all fit in a byte, 65535 otherwise.
pub fn save_pgm(image: &GrayImage, path: &Path) -> Result<()> {
    let mut max = 0u16;
    for (i, &v) in image.pixels().iter().enumerate() {
        if !(0.0..=65535.0).contains(&v) || v.fract() != 0.0 {
            return Err(Error::Data(format!(
                "{}: sample {i} ({v}) is not an integer in [0, 65535]",
                path.display()
            )));
        }
        max = max.max(v as u16);
    }
    let maxval: u16 = if max <= 255 { 255 } else { 65535 };
    let mut out = format!("P5\n{} {}\n{}\n", image.width(), image.height(), maxval).into_bytes();
    if maxval <= 255 {
        out.extend(image.pixels().iter().map(|&v| v as u8));
    } else {
        for &v in image.pixels() {
            out.extend_from_slice(&(v as u16).to_be_bytes());
        }
    }
    fs::write(path, out).map_err(|e| Error::io(path, e))
}

/// Loads an ROI mask from a PGM (nonzero sample) or PBM P4 (set bit) file
/// with the same dimensions as the image it annotates.
pub fn load_mask(path: &Path, image: &GrayImage, hemisphere: Hemisphere) -> Result<RoiMask> {
    let bytes = read_file(path)?;
    let (width, height, members) = if bytes.len() >= 2 && &bytes[..2] == b"P4" {
        parse_pbm_members(&bytes, path)?
    } else {
        let (mask_image, _) = parse_pgm(&bytes, path)?;
        let mut members = Vec::new();
        for row in 0..mask_image.height() {
            for col in 0..mask_image.width() {
                if mask_image.get(row, col) != 0.0 {
                    members.push((row, col));
                }
            }
        }
        (mask_image.width(), mask_image.height(), members)
    };
    if width != image.width() || height != image.height() {
        return Err(Error::Core(hypoquant_core::Error::DimensionMismatch {
            expected_width: image.width(),
            expected_height: image.height(),
            width,
            height,
        }));
    }
    if members.is_empty() {
        return Err(Error::Manifest {
            path: path.to_path_buf(),
            reason: "mask has no nonzero pixels (empty ROI)".into(),
        });
    }
    RoiMask::new(width, height, members, hemisphere).map_err(Error::Core)
}

type PbmContent = (usize, usize, Vec<(usize, usize)>);

fn parse_pbm_members(bytes: &[u8], path: &Path) -> Result<PbmContent> {
    let mut p = Parser {
        bytes,
        pos: 2,
        path,
        format: "PBM",
    };
    let width = p.read_number("width")?;
    let height = p.read_number("height")?;
    let payload = p.expect_payload()?;
    let row_bytes = width.div_ceil(8);
    let expected = row_bytes * height;
    if bytes.len() - payload < expected {
        return p.fail(
            bytes.len(),
            format!(
                "payload truncated: {} of {expected} bytes",
                bytes.len() - payload
            ),
        );
    }
    let mut members = Vec::new();
    for row in 0..height {
        let base = payload + row * row_bytes;
        for col in 0..width {
            let byte = bytes[base + col / 8];
            if byte & (0x80 >> (col % 8)) != 0 {
                members.push((row, col));
            }
        }
    }
    Ok((width, height, members))
}

/// Writes a binary PPM (P6) from row-major RGB triples.
pub fn save_ppm(width: usize, height: usize, rgb: &[u8], path: &Path) -> Result<()> {
    assert_eq!(rgb.len(), width * height * 3);
    let mut out = format!("P6\n{width} {height}\n255\n").into_bytes();
    out.extend_from_slice(rgb);
    fs::write(path, out).map_err(|e| Error::io(path, e))
}
