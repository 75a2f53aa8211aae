//! Alignment and feature quality metrics: enclosed area error, correct phase
//! rate, and per-frame phase classification with k-fold cross-validation.

mod classify;
mod eae;
mod phase;

pub use classify::{cross_validate, knn_classify, CvConfig, CvReport};
pub use eae::{eae, enclosed_area};
pub use phase::{correct_phase_rate, ground_truth_path, GroundTruthPath, PhaseAnnotation};

use crate::align::{AlignmentConfig, Margin, Method};
use serde::{Deserialize, Serialize};

/// Alignment settings echoed into a report.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportConfig {
    pub method: Method,
    pub margin: Option<Margin>,
    pub lambda: Option<f64>,
}

impl From<&AlignmentConfig> for ReportConfig {
    fn from(c: &AlignmentConfig) -> Self {
        let ddtw = c.method == Method::Ddtw;
        ReportConfig {
            method: c.method,
            margin: ddtw.then_some(c.margin),
            lambda: ddtw.then_some(c.lambda),
        }
    }
}

/// Scores for one aligned video pair.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct EvalReport {
    pub video_a: String,
    pub video_b: String,
    pub n: usize,
    pub k: usize,
    pub eae: f64,
    pub correct_phase_rate: f64,
    pub classification_accuracy: Option<f64>,
    pub config: ReportConfig,
}
