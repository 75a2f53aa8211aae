//! File formats read and written by the toolkit.
//!
//! | file | layout |
//! |------|--------|
//! | track | JSON lines `{"frame", "box": {"cx","cy","w","h"} \| null, "pose": [[x, y]; 24] \| null}` |
//! | global features | JSON lines `{"frame", "features": [f64; 64]}` |
//! | series | binary `VASERIE1`, `T`, `D`, id length (u32 LE), id bytes, `T*D` f64 LE; or CSV |
//! | path | `#key=value` header lines then one `(i, j)` per line |
//! | annotation | JSON lines `{"videoId", "phases": [int]}` |
//! | mask | binary `VAMASK01`, `H`, `W` (u32 LE), `H*W` f64 LE; or text |
//! | ground truth | `#key=value` header lines then one `(x, y)` anchor per line |
//! | report | pretty-printed JSON |
//!
//! Numbers in text formats use the shortest representation that parses back
//! to the same `f64`, so every format round-trips byte for byte.

mod annotation;
mod global;
mod mask_file;
mod path_file;
mod series_file;
mod track;

pub use annotation::{read_annotations, write_annotations};
pub use global::{read_global, write_global};
pub use mask_file::{read_mask, read_mask_text, write_mask, write_mask_text};
pub use path_file::{read_ground_truth, read_path, write_ground_truth, write_path, PathFile};
pub use series_file::{
    read_series, read_series_bin, read_series_csv, write_series_bin, write_series_csv, SERIES_MAGIC,
};
pub use track::{read_track, write_track};

use crate::error::{Error, Result};
use crate::eval::EvalReport;
use std::io::{BufRead, Read, Write};

pub fn write_report<W: Write>(mut w: W, report: &EvalReport) -> Result<()> {
    serde_json::to_writer_pretty(&mut w, report)?;
    w.write_all(b"\n")?;
    Ok(())
}

pub fn read_report<R: Read>(r: R) -> Result<EvalReport> {
    Ok(serde_json::from_reader(r)?)
}

/// Non-blank lines with their 1-based line numbers.
pub(crate) fn numbered_lines<R: BufRead>(r: R) -> impl Iterator<Item = Result<(usize, String)>> {
    r.lines()
        .enumerate()
        .map(|(i, l)| l.map(|l| (i + 1, l)).map_err(Error::from))
        .filter(|l| !matches!(l, Ok((_, s)) if s.trim().is_empty()))
}

pub(crate) fn parse_f64(line: usize, s: &str) -> Result<f64> {
    let v: f64 = s
        .trim()
        .parse()
        .map_err(|_| Error::schema(line, format!("not a number: {s:?}")))?;
    if !v.is_finite() {
        return Err(Error::schema(line, format!("non-finite value {s:?}")));
    }
    Ok(v)
}

pub(crate) fn check_id(id: &str) -> Result<()> {
    if id.chars().any(char::is_control) {
        return Err(Error::InvalidParameter(format!(
            "video id {id:?} contains control characters"
        )));
    }
    Ok(())
}
