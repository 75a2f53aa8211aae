//! `synth`: labelled synthetic videos of one action.
//!
//! Writes `<id>.series` (or `.csv`) per video, `annotations.jsonl`, one
//! ground-truth file per pair `(video-000, video-NNN)` under `ground_truth/`,
//! and `pairs.csv` listing those pairs for `align --pairs`.

use super::SeriesFormat;
use crate::config::FileConfig;
use crate::support::{emit, write_atomic};
use anyhow::Result;
use std::path::PathBuf;
use vidalign::eval::{ground_truth_path, PhaseAnnotation};
use vidalign::synth::{generate_dataset, DatasetSpec};

#[derive(Debug, clap::Args)]
pub struct Args {
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub out_dir: PathBuf,
    /// [default: 30]
    #[arg(long)]
    pub videos: Option<usize>,
    /// Phases per video [default: 3].
    #[arg(long)]
    pub phases: Option<usize>,
    /// Shortest phase in frames [default: 8].
    #[arg(long)]
    pub min_len: Option<usize>,
    /// Longest phase in frames [default: 20].
    #[arg(long)]
    pub max_len: Option<usize>,
    /// Feature width [default: 166].
    #[arg(long)]
    pub dim: Option<usize>,
    /// Gaussian noise standard deviation [default: 0.3].
    #[arg(long)]
    pub noise: Option<f64>,
    #[arg(long, value_enum, default_value_t)]
    pub format: SeriesFormat,
}

pub fn run(args: Args, cfg: &FileConfig) -> Result<()> {
    let d = DatasetSpec::default();
    let s = &cfg.synth;
    let spec = DatasetSpec {
        videos: args.videos.or(s.videos).unwrap_or(d.videos),
        phase_count: args.phases.or(s.phases).unwrap_or(d.phase_count),
        min_phase_len: args.min_len.or(s.min_len).unwrap_or(d.min_phase_len),
        max_phase_len: args.max_len.or(s.max_len).unwrap_or(d.max_phase_len),
        feature_dim: args.dim.or(s.dim).unwrap_or(d.feature_dim),
        noise_std: args.noise.or(s.noise).unwrap_or(d.noise_std),
        seed: cfg.seed(args.seed)?,
    };
    log::info!("synthetic dataset {}", serde_json::to_string(&spec)?);
    let data = generate_dataset(&spec)?;

    let ext = args.format.extension();
    for (series, _) in &data {
        args.format.write(
            &args.out_dir.join(format!("{}.{ext}", series.video_id())),
            series,
        )?;
    }
    let anns: Vec<PhaseAnnotation> = data.iter().map(|(_, a)| a.clone()).collect();
    emit(&args.out_dir.join("annotations.jsonl"), |buf| {
        vidalign::io::write_annotations(buf, &anns)
    })?;

    let mut pairs = csv::Writer::from_writer(Vec::new());
    pairs.write_record(["series_a", "series_b"])?;
    if let Some((first, rest)) = anns.split_first() {
        for other in rest {
            let gt = ground_truth_path(first, other)?;
            let name = format!("{}__{}.gt", first.video_id, other.video_id);
            emit(&args.out_dir.join("ground_truth").join(name), |buf| {
                vidalign::io::write_ground_truth(buf, &first.video_id, &other.video_id, &gt)
            })?;
            pairs.write_record([
                format!("{}.{ext}", first.video_id),
                format!("{}.{ext}", other.video_id),
            ])?;
        }
    }
    write_atomic(&args.out_dir.join("pairs.csv"), &pairs.into_inner()?)?;
    println!("wrote {} videos to {}", data.len(), args.out_dir.display());
    Ok(())
}
