//! `classify`: k-fold cross-validated k-NN phase classification.

use super::{read_annotations, read_series};
use crate::config::FileConfig;
use crate::support::{emit, input_err};
use anyhow::{Context, Result};
use std::path::{Path, PathBuf};
use vidalign::eval::{cross_validate, CvConfig};

#[derive(Debug, clap::Args)]
pub struct Args {
    /// Series files, or directories scanned for `.series` and `.csv` files.
    #[arg(required = true, value_name = "SERIES")]
    pub series: Vec<PathBuf>,
    #[arg(long)]
    pub annotations: PathBuf,
    /// Seed for the fold assignment.
    #[arg(long)]
    pub seed: Option<u64>,
    /// [default: 10]
    #[arg(long)]
    pub folds: Option<usize>,
    /// Neighbours per vote [default: 5].
    #[arg(long)]
    pub k: Option<usize>,
    /// Cross-validation report (JSON).
    #[arg(long)]
    pub out: PathBuf,
}

/// Expands directories into their series files, sorted by name.
pub fn collect_series(inputs: &[PathBuf]) -> Result<Vec<PathBuf>> {
    let mut out = Vec::new();
    for p in inputs {
        if p.is_dir() {
            let mut found: Vec<PathBuf> = std::fs::read_dir(p)
                .with_context(|| format!("listing {}", p.display()))?
                .filter_map(|e| e.ok().map(|e| e.path()))
                .filter(|f| is_series_file(f))
                .collect();
            found.sort();
            out.extend(found);
        } else {
            out.push(p.clone());
        }
    }
    Ok(out)
}

fn is_series_file(p: &Path) -> bool {
    match p.extension().and_then(|e| e.to_str()) {
        Some("series") => p.is_file(),
        // other CSV files (pair lists, summaries) may share the directory
        Some("csv") => std::fs::read(p).is_ok_and(|b| b.starts_with(b"#video_id,")),
        _ => false,
    }
}

pub fn run(args: Args, file_cfg: &FileConfig) -> Result<()> {
    let d = CvConfig::default();
    let cfg = CvConfig {
        folds: args.folds.or(file_cfg.classify.folds).unwrap_or(d.folds),
        k: args.k.or(file_cfg.classify.k).unwrap_or(d.k),
        seed: file_cfg.seed(args.seed)?,
    };
    let anns = read_annotations(&args.annotations)?;
    let files = collect_series(&args.series)?;
    let data = files
        .iter()
        .map(|f| {
            let s = read_series(f)?;
            let ann = anns
                .iter()
                .find(|a| a.video_id == s.video_id())
                .ok_or_else(|| {
                    input_err(format!(
                        "{}: no annotation for {}",
                        f.display(),
                        s.video_id()
                    ))
                })?
                .clone();
            Ok((s, ann))
        })
        .collect::<Result<Vec<_>>>()?;
    log::info!("cross-validating {} videos with {cfg:?}", data.len());
    let report = cross_validate(&data, &cfg)?;
    emit(&args.out, |buf| {
        serde_json::to_writer_pretty(&mut *buf, &report)?;
        buf.push(b'\n');
        Ok(())
    })?;
    println!(
        "accuracy={} ({}/{} frames, {} folds, k={})",
        report.accuracy, report.correct, report.total, cfg.folds, cfg.k
    );
    Ok(())
}
