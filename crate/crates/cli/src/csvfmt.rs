//! Deterministic CSV output: comma separators, `.` decimal point, LF line
//! endings, header row, and real values printed with 12 significant digits.

use std::fs;
use std::path::Path;

use hypoquant_core::Ranking;

use crate::error::{Error, Result};

/// Formats a real value with 12 significant digits in plain decimal
/// notation.
pub fn sig(value: f64) -> String {
    if value == 0.0 {
        return "0".to_string();
    }
    if !value.is_finite() {
        return if value.is_nan() {
            "nan".to_string()
        } else if value > 0.0 {
            "inf".to_string()
        } else {
            "-inf".to_string()
        };
    }
    let magnitude = value.abs().log10().floor() as i32;
    let decimals = (11 - magnitude).max(0) as usize;
    format!("{value:.decimals$}")
}

/// Quotes a field only when it contains a separator, quote or newline.
pub fn escape(field: &str) -> String {
    if field.contains(',') || field.contains('"') || field.contains('\n') {
        format!("\"{}\"", field.replace('"', "\"\""))
    } else {
        field.to_string()
    }
}

/// Writes header + rows with LF line endings.
pub fn write_csv(path: &Path, header: &[String], rows: &[Vec<String>]) -> Result<()> {
    let mut out = String::new();
    out.push_str(&header.join(","));
    out.push('\n');
    for row in rows {
        debug_assert_eq!(row.len(), header.len());
        out.push_str(&row.join(","));
        out.push('\n');
    }
    fs::write(path, out).map_err(|e| Error::io(path, e))
}

/// Splits one CSV line, honoring the minimal quoting `escape` produces.
fn split_line(line: &str) -> Vec<String> {
    let mut fields = Vec::new();
    let mut current = String::new();
    let mut quoted = false;
    let mut chars = line.chars().peekable();
    while let Some(c) = chars.next() {
        match c {
            '"' if quoted => {
                if chars.peek() == Some(&'"') {
                    chars.next();
                    current.push('"');
                } else {
                    quoted = false;
                }
            }
            '"' if current.is_empty() => quoted = true,
            ',' if !quoted => {
                fields.push(std::mem::take(&mut current));
            }
            _ => current.push(c),
        }
    }
    fields.push(current);
    fields
}

/// Reads a light-to-dark ranking from a `rank,id` CSV.
pub fn read_ranking(path: &Path) -> Result<Ranking> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let mut lines = text.lines();
    match lines.next() {
        Some(header) if split_line(header).first().map(String::as_str) == Some("rank") => {}
        _ => {
            return Err(Error::Data(format!(
                "{}: expected a rank,id header",
                path.display()
            )))
        }
    }
    let mut ids = Vec::new();
    for (i, line) in lines.enumerate() {
        if line.is_empty() {
            continue;
        }
        let fields = split_line(line);
        if fields.len() < 2 {
            return Err(Error::Data(format!(
                "{}: line {} has no id column",
                path.display(),
                i + 2
            )));
        }
        ids.push(fields[1].clone());
    }
    Ranking::new(ids).map_err(Error::Core)
}
