//! `validate`: schema checks for every file format.

use super::build::{build_entry, Manifest};
use crate::support::{input_err, read_input};
use anyhow::Result;
use clap::ValueEnum;
use std::path::{Path, PathBuf};
use vidalign::io;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Track,
    Global,
    Series,
    Annotations,
    Path,
    GroundTruth,
    Mask,
    MaskText,
    Report,
    /// The manifest and every file it references.
    Manifest,
}

#[derive(Debug, clap::Args)]
pub struct Args {
    #[arg(value_enum)]
    pub kind: Kind,
    #[arg(required = true)]
    pub files: Vec<PathBuf>,
}

fn check(kind: Kind, path: &Path) -> Result<String> {
    if kind == Kind::Manifest {
        let m = Manifest::load(path)?;
        for e in &m.entries {
            build_entry(e)?;
        }
        return Ok(format!("{} videos", m.entries.len()));
    }
    let bytes = read_input(path)?;
    let b = bytes.as_slice();
    let summary = match kind {
        Kind::Track => {
            let t = io::read_track(b)?;
            format!("{} frames, {} incomplete", t.len(), t.missing_frames())
        }
        Kind::Global => format!("{} frames", io::read_global(b)?.len()),
        Kind::Series => {
            let s = io::read_series(b)?;
            format!("{}: {} x {}", s.video_id(), s.len(), s.dim())
        }
        Kind::Annotations => format!("{} videos", io::read_annotations(b)?.len()),
        Kind::Path => {
            let p = io::read_path(b)?;
            format!("{} vs {}: {} steps", p.video_a, p.video_b, p.path.len())
        }
        Kind::GroundTruth => {
            let (a, bb, gt) = io::read_ground_truth(b)?;
            format!("{a} vs {bb}: {} anchors", gt.anchors().len())
        }
        Kind::Mask => {
            let m = io::read_mask(b)?;
            format!("{} x {}", m.rows(), m.cols())
        }
        Kind::MaskText => {
            let m = io::read_mask_text(b)?;
            format!("{} x {}", m.rows(), m.cols())
        }
        Kind::Report => {
            let r = io::read_report(b)?;
            format!("{} vs {}", r.video_a, r.video_b)
        }
        Kind::Manifest => unreachable!(),
    };
    Ok(summary)
}

pub fn run(args: Args) -> Result<()> {
    let mut failed = 0;
    for f in &args.files {
        match check(args.kind, f) {
            Ok(summary) => println!("{}: ok ({summary})", f.display()),
            Err(e) => {
                failed += 1;
                println!("{}: error: {e:#}", f.display());
                log::warn!("{}: {e:#}", f.display());
            }
        }
    }
    if failed > 0 {
        return Err(input_err(format!(
            "{failed} of {} files failed validation",
            args.files.len()
        )));
    }
    Ok(())
}
