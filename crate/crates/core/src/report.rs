//! Bit-stable report emission: canonical JSON, CSV, and markdown tables,
//! plus atomic file writes.
//!
//! Identical inputs must produce byte-identical files, so every formatting
//! choice here is deterministic: JSON objects serialize with sorted keys
//! (the underlying map is ordered), CSV uses LF line endings and `'.'` as
//! the decimal separator, and reported measurements are quantized to ten
//! decimal places before serialization so their printed form is the
//! shortest decimal that round-trips.  Error magnitudes and residuals are
//! deliberately *not* quantized — flushing a `1e-14` residual to zero would
//! hide the very number the report exists to show.

use std::fs;
use std::io::Write as _;
use std::path::Path;

use serde_json::Value;

use crate::error::{Error, Result};

/// Quantizes a measurement to ten decimal places.
///
/// The rounded value prints (via shortest-round-trip formatting) with at
/// most ten fractional digits, e.g. `2.1213203435596424` → `2.1213203436`.
/// Not suitable for magnitudes near or below `1e-10`; serialize those raw.
pub fn fixed10(x: f64) -> f64 {
    if !x.is_finite() {
        return x;
    }
    let q = (x * 1e10).round() / 1e10;
    // Avoid the negative-zero artifact for tiny negative inputs.
    if q == 0.0 {
        0.0
    } else {
        q
    }
}

/// Decimal string of a quantized measurement, for CSV cells.
pub fn fmt_fixed10(x: f64) -> String {
    format!("{}", fixed10(x))
}

/// Canonical JSON: compact, sorted keys, trailing newline.
pub fn canonical_json(value: &Value) -> String {
    let mut s = value.to_string();
    s.push('\n');
    s
}

/// CSV table with a header row, LF line endings.
pub fn csv_table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut out = String::new();
    out.push_str(&header.join(","));
    out.push('\n');
    for row in rows {
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

/// Markdown table with a header row; renders `none` when there are no rows
/// (so empty violation lists stay visible rather than vanishing).
pub fn markdown_table(header: &[&str], rows: &[Vec<String>]) -> String {
    if rows.is_empty() {
        return "none\n".to_string();
    }
    let mut out = String::new();
    out.push_str("| ");
    out.push_str(&header.join(" | "));
    out.push_str(" |\n|");
    for _ in header {
        out.push_str(" --- |");
    }
    out.push('\n');
    for row in rows {
        out.push_str("| ");
        out.push_str(&row.join(" | "));
        out.push_str(" |\n");
    }
    out
}

/// Writes a file atomically: the contents land in a same-directory
/// temporary first and are renamed into place, so readers never observe a
/// half-written report.  I/O errors carry the destination path.
pub fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let context = |e: std::io::Error| {
        Error::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display())))
    };
    let dir = path.parent().filter(|d| !d.as_os_str().is_empty());
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    let tmp = std::path::PathBuf::from(tmp);
    if let Some(dir) = dir {
        fs::create_dir_all(dir).map_err(context)?;
    }
    let mut file = fs::File::create(&tmp).map_err(context)?;
    file.write_all(contents.as_bytes()).map_err(context)?;
    file.sync_all().map_err(context)?;
    drop(file);
    fs::rename(&tmp, path).map_err(context)?;
    Ok(())
}
