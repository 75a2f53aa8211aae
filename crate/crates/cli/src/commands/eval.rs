//! `eval`: EAE and correct phase rate of a path file.

use super::read_annotations;
use crate::support::{emit, input_err, parse_file};
use anyhow::Result;
use std::path::PathBuf;
use vidalign::align::Margin;
use vidalign::eval::{
    correct_phase_rate, eae, ground_truth_path, CvReport, EvalReport, ReportConfig,
};

#[derive(Debug, clap::Args)]
pub struct Args {
    /// Path file written by `align`.
    #[arg(long)]
    pub path: PathBuf,
    /// Annotations covering both videos of the path.
    #[arg(long)]
    pub annotations: PathBuf,
    /// Ground-truth file to use instead of the one implied by the annotations.
    #[arg(long)]
    pub ground_truth: Option<PathBuf>,
    /// Cross-validation report from `classify`; its accuracy is copied in.
    #[arg(long)]
    pub classification: Option<PathBuf>,
    #[arg(long)]
    pub out: PathBuf,
}

pub fn run(args: Args) -> Result<()> {
    let file = parse_file(&args.path, |b| vidalign::io::read_path(b))?;
    let anns = read_annotations(&args.annotations)?;
    let find = |id: &str| {
        anns.iter().find(|a| a.video_id == id).ok_or_else(|| {
            input_err(format!(
                "{}: no annotation for {id}",
                args.annotations.display()
            ))
        })
    };
    let (a, b) = (find(&file.video_a)?, find(&file.video_b)?);

    let gt = match &args.ground_truth {
        Some(p) => {
            let (ga, gb, gt) = parse_file(p, |b| vidalign::io::read_ground_truth(b))?;
            if (ga.as_str(), gb.as_str()) != (file.video_a.as_str(), file.video_b.as_str()) {
                return Err(input_err(format!(
                    "{} is for {ga} / {gb}, path is for {} / {}",
                    p.display(),
                    file.video_a,
                    file.video_b
                )));
            }
            gt
        }
        None => ground_truth_path(a, b)?,
    };
    let classification_accuracy = match &args.classification {
        Some(p) => {
            let cv: CvReport = parse_file(p, |b| Ok(serde_json::from_slice(b)?))?;
            Some(cv.accuracy)
        }
        None => None,
    };

    let report = EvalReport {
        video_a: file.video_a.clone(),
        video_b: file.video_b.clone(),
        n: file.n,
        k: file.k,
        eae: eae(&file.path, &gt, file.n, file.k)?,
        correct_phase_rate: correct_phase_rate(&file.path, a, b)?,
        classification_accuracy,
        config: ReportConfig {
            method: file.method,
            margin: file.margin.map(Margin::Fixed),
            lambda: file.lambda,
        },
    };
    emit(&args.out, |buf| vidalign::io::write_report(buf, &report))?;
    println!(
        "{} vs {}: eae={} correct_phase_rate={}",
        report.video_a, report.video_b, report.eae, report.correct_phase_rate
    );
    Ok(())
}
