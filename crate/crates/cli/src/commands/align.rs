//! `align`: one pair, or a batch listed in a CSV file.
//!
//! Batch summary columns, in order:
//! `video_a,video_b,n,k,method,margin,lambda,total_cost,path_file`.
//! `margin` and `lambda` are empty for non-DDTW methods.

use super::read_series;
use crate::config::FileConfig;
use crate::support::{check_file_id, emit, input_err, relative_to, write_atomic};
use anyhow::{Context, Result};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::HashSet;
use std::path::{Path, PathBuf};
use vidalign::align::{align, AlignmentConfig, Margin, Method};
use vidalign::io::PathFile;

#[derive(Debug, clap::Args)]
pub struct Args {
    /// Two series files (single-pair mode).
    #[arg(num_args = 0..=2, value_name = "SERIES")]
    pub series: Vec<PathBuf>,
    /// Output path file (single-pair mode).
    #[arg(long, conflicts_with = "pairs")]
    pub out: Option<PathBuf>,
    /// CSV with columns `series_a,series_b`; paths relative to the CSV.
    #[arg(long, conflicts_with = "series")]
    pub pairs: Option<PathBuf>,
    /// Directory for batch path files.
    #[arg(long, requires = "pairs")]
    pub out_dir: Option<PathBuf>,
    /// Batch summary CSV [default: <out-dir>/summary.csv].
    #[arg(long, requires = "pairs")]
    pub summary: Option<PathBuf>,
    /// dtw, ddtw or trivial [default: ddtw].
    #[arg(long)]
    pub method: Option<Method>,
    /// DDTW margin: `auto`, a number of cells, or `inf` [default: auto].
    #[arg(long)]
    pub margin: Option<Margin>,
    /// DDTW penalty weight [default: 1].
    #[arg(long)]
    pub lambda: Option<f64>,
}

#[derive(Debug, Deserialize)]
struct PairRow {
    series_a: PathBuf,
    series_b: PathBuf,
}

#[derive(Debug, Serialize)]
pub struct SummaryRow {
    pub video_a: String,
    pub video_b: String,
    pub n: usize,
    pub k: usize,
    pub method: Method,
    pub margin: Option<f64>,
    pub lambda: Option<f64>,
    pub total_cost: f64,
    pub path_file: String,
}

fn align_files(a: &Path, b: &Path, cfg: &AlignmentConfig) -> Result<PathFile> {
    let (x, y) = (read_series(a)?, read_series(b)?);
    let result = align(&x, &y, cfg)
        .with_context(|| format!("aligning {} with {}", a.display(), b.display()))?;
    Ok(PathFile::from_result(x.video_id(), y.video_id(), &result))
}

fn summary_row(f: &PathFile, path_file: &Path) -> SummaryRow {
    SummaryRow {
        video_a: f.video_a.clone(),
        video_b: f.video_b.clone(),
        n: f.n,
        k: f.k,
        method: f.method,
        margin: f.margin,
        lambda: f.lambda,
        total_cost: f.total_cost,
        path_file: path_file.display().to_string(),
    }
}

pub fn run(args: Args, file_cfg: &FileConfig) -> Result<()> {
    let cfg = file_cfg.alignment(args.method, args.margin, args.lambda)?;
    log::info!("alignment config {}", serde_json::to_string(&cfg)?);
    match &args.pairs {
        None => {
            let [a, b] = args.series.as_slice() else {
                return Err(input_err("give two series files, or --pairs"));
            };
            let out = args
                .out
                .as_ref()
                .ok_or_else(|| input_err("--out is required"))?;
            let file = align_files(a, b, &cfg)?;
            emit(out, |buf| vidalign::io::write_path(buf, &file))?;
            println!(
                "{} vs {}: n={} k={} method={} total_cost={}",
                file.video_a, file.video_b, file.n, file.k, file.method, file.total_cost
            );
            Ok(())
        }
        Some(pairs) => run_batch(pairs, &args, &cfg),
    }
}

fn run_batch(pairs: &Path, args: &Args, cfg: &AlignmentConfig) -> Result<()> {
    let out_dir = args
        .out_dir
        .as_ref()
        .ok_or_else(|| input_err("--out-dir is required with --pairs"))?;
    let bytes = crate::support::read_input(pairs)?;
    let rows: Vec<PairRow> = csv::Reader::from_reader(bytes.as_slice())
        .deserialize()
        .enumerate()
        .map(|(i, r)| r.map_err(|e| input_err(format!("{} row {}: {e}", pairs.display(), i + 1))))
        .collect::<Result<_>>()?;
    if rows.is_empty() {
        return Err(input_err(format!("{}: no pairs listed", pairs.display())));
    }

    let files: Vec<PathFile> = rows
        .par_iter()
        .map(|r| {
            align_files(
                &relative_to(pairs, &r.series_a),
                &relative_to(pairs, &r.series_b),
                cfg,
            )
        })
        .collect::<Result<_>>()?;

    let mut names = HashSet::new();
    let mut summary = csv::Writer::from_writer(Vec::new());
    for f in &files {
        check_file_id(&f.video_a)?;
        check_file_id(&f.video_b)?;
        let name = format!("{}__{}.path", f.video_a, f.video_b);
        if !names.insert(name.clone()) {
            return Err(input_err(format!(
                "pair {} / {} listed twice",
                f.video_a, f.video_b
            )));
        }
        emit(&out_dir.join(&name), |buf| vidalign::io::write_path(buf, f))?;
        summary.serialize(summary_row(f, Path::new(&name)))?;
    }
    let summary_path = args
        .summary
        .clone()
        .unwrap_or_else(|| out_dir.join("summary.csv"));
    write_atomic(&summary_path, &summary.into_inner()?)?;
    println!(
        "aligned {} pairs, summary in {}",
        files.len(),
        summary_path.display()
    );
    Ok(())
}
