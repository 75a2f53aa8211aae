//! `build`: track + global features -> normalized series, one file per video.

use super::SeriesFormat;
use crate::support::{check_file_id, emit, input_err, parse_file, relative_to};
use anyhow::{Context, Result};
use rayon::prelude::*;
use serde::Deserialize;
use std::collections::HashSet;
use std::path::{Path, PathBuf};
use vidalign::eval::PhaseAnnotation;
use vidalign::series::build_series;

#[derive(Debug, clap::Args)]
pub struct Args {
    /// Dataset manifest (JSON).
    #[arg(long)]
    pub manifest: PathBuf,
    #[arg(long)]
    pub out_dir: PathBuf,
    #[arg(long, value_enum, default_value_t)]
    pub format: SeriesFormat,
}

#[derive(Debug, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct Manifest {
    pub action: String,
    pub entries: Vec<ManifestEntry>,
}

#[derive(Debug, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct ManifestEntry {
    pub video_id: String,
    pub track_path: PathBuf,
    pub global_path: PathBuf,
    #[serde(default)]
    pub annotation_path: Option<PathBuf>,
}

impl Manifest {
    /// Parses the manifest and checks ids and referenced files. Paths are
    /// made absolute against the manifest's directory.
    pub fn load(path: &Path) -> Result<Manifest> {
        let mut m: Manifest = parse_file(path, |b| Ok(serde_json::from_slice(b)?))?;
        if m.entries.is_empty() {
            return Err(input_err(format!(
                "{}: manifest lists no videos",
                path.display()
            )));
        }
        let mut seen = HashSet::new();
        for e in &mut m.entries {
            check_file_id(&e.video_id)?;
            if !seen.insert(e.video_id.clone()) {
                return Err(input_err(format!(
                    "duplicate videoId {:?} in manifest",
                    e.video_id
                )));
            }
            e.track_path = relative_to(path, &e.track_path);
            e.global_path = relative_to(path, &e.global_path);
            e.annotation_path = e.annotation_path.as_ref().map(|p| relative_to(path, p));
            for p in [
                Some(&e.track_path),
                Some(&e.global_path),
                e.annotation_path.as_ref(),
            ]
            .into_iter()
            .flatten()
            {
                if !p.is_file() {
                    return Err(input_err(format!(
                        "video {}: missing file {}",
                        e.video_id,
                        p.display()
                    )));
                }
            }
        }
        Ok(m)
    }
}

pub struct Built {
    pub series: vidalign::series::FeatureSeries,
    pub missing: usize,
    pub annotation: Option<PhaseAnnotation>,
}

/// Loads and processes one manifest entry.
pub fn build_entry(e: &ManifestEntry) -> Result<Built> {
    let ctx = |p: &Path| format!("video {}: {}", e.video_id, p.display());
    let track = vidalign::io::read_track(crate::support::read_input(&e.track_path)?.as_slice())
        .with_context(|| ctx(&e.track_path))?;
    let global = vidalign::io::read_global(crate::support::read_input(&e.global_path)?.as_slice())
        .with_context(|| ctx(&e.global_path))?;
    if track.len() != global.len() {
        return Err(input_err(format!(
            "video {}: track has {} frames but global features have {}",
            e.video_id,
            track.len(),
            global.len()
        )));
    }
    let series = build_series(&e.video_id, &track, &global)
        .with_context(|| format!("video {}", e.video_id))?;
    let annotation = match &e.annotation_path {
        None => None,
        Some(p) => {
            let all = vidalign::io::read_annotations(crate::support::read_input(p)?.as_slice())
                .with_context(|| ctx(p))?;
            let ann = all
                .into_iter()
                .find(|a| a.video_id == e.video_id)
                .ok_or_else(|| {
                    input_err(format!("{}: no annotation for {}", p.display(), e.video_id))
                })?;
            if ann.len() != series.len() {
                return Err(input_err(format!(
                    "video {}: annotation covers {} frames, video has {}",
                    e.video_id,
                    ann.len(),
                    series.len()
                )));
            }
            Some(ann)
        }
    };
    Ok(Built {
        missing: track.missing_frames(),
        series,
        annotation,
    })
}

pub fn run(args: Args) -> Result<()> {
    let manifest = Manifest::load(&args.manifest)?;
    log::info!(
        "building {} videos of {:?}",
        manifest.entries.len(),
        manifest.action
    );
    let built: Vec<Built> = manifest
        .entries
        .par_iter()
        .map(build_entry)
        .collect::<Result<_>>()?;

    for b in &built {
        let file = args.out_dir.join(format!(
            "{}.{}",
            b.series.video_id(),
            args.format.extension()
        ));
        args.format.write(&file, &b.series)?;
        println!(
            "{}\tframes={}\tinterpolated={}",
            b.series.video_id(),
            b.series.len(),
            b.missing
        );
    }
    let annotations: Vec<PhaseAnnotation> =
        built.iter().filter_map(|b| b.annotation.clone()).collect();
    if !annotations.is_empty() {
        emit(&args.out_dir.join("annotations.jsonl"), |buf| {
            vidalign::io::write_annotations(buf, &annotations)
        })?;
    }
    Ok(())
}
