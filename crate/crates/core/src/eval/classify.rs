use super::PhaseAnnotation;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::rng::SplitMix64;
use crate::series::FeatureSeries;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Majority phase among the `k` nearest training frames (Euclidean).
/// Equidistant neighbours are taken in training order; vote ties go to the
/// smaller phase id.
pub fn knn_classify(train: &Matrix, labels: &[u32], test: &Matrix, k: usize) -> Result<Vec<u32>> {
    if train.rows() == 0 {
        return Err(Error::EmptyTrainSet);
    }
    if labels.len() != train.rows() {
        return Err(Error::LengthMismatch {
            expected: train.rows(),
            found: labels.len(),
        });
    }
    if k == 0 || k > train.rows() {
        return Err(Error::BadNeighbourCount {
            k,
            train: train.rows(),
        });
    }
    if test.rows() > 0 && test.cols() != train.cols() {
        return Err(Error::DimMismatch {
            left: train.cols(),
            right: test.cols(),
        });
    }

    Ok((0..test.rows())
        .into_par_iter()
        .map(|t| {
            let query = test.row(t);
            let mut dists: Vec<(f64, usize)> = train
                .iter_rows()
                .enumerate()
                .map(|(i, row)| {
                    let d: f64 = row.iter().zip(query).map(|(a, b)| (a - b) * (a - b)).sum();
                    (d, i)
                })
                .collect();
            let by_dist =
                |a: &(f64, usize), b: &(f64, usize)| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1));
            if k < dists.len() {
                dists.select_nth_unstable_by(k - 1, by_dist);
            }
            let mut votes: BTreeMap<u32, usize> = BTreeMap::new();
            for &(_, i) in &dists[..k] {
                *votes.entry(labels[i]).or_default() += 1;
            }
            let mut best = (0, 0);
            for (&label, &count) in &votes {
                if count > best.1 {
                    best = (label, count);
                }
            }
            best.0
        })
        .collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CvConfig {
    pub folds: usize,
    pub k: usize,
    pub seed: u64,
}

impl Default for CvConfig {
    fn default() -> Self {
        CvConfig {
            folds: 10,
            k: 5,
            seed: 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CvReport {
    /// Correctly labelled test frames over all test frames.
    pub accuracy: f64,
    pub correct: usize,
    pub total: usize,
    pub fold_accuracies: Vec<f64>,
    /// Video ids held out in each fold.
    pub folds: Vec<Vec<String>>,
    pub config: CvConfig,
}

/// Video-level k-fold cross-validation of per-frame phase classification.
///
/// Video ids are sorted, shuffled with the seeded generator, and dealt
/// round-robin into folds. Each fold is classified with a k-NN model trained
/// on the frames of every other fold.
pub fn cross_validate(
    dataset: &[(FeatureSeries, PhaseAnnotation)],
    config: &CvConfig,
) -> Result<CvReport> {
    if config.folds < 2 {
        return Err(Error::InvalidParameter(format!(
            "need at least 2 folds, got {}",
            config.folds
        )));
    }
    if dataset.len() < config.folds {
        return Err(Error::TooFewVideos {
            videos: dataset.len(),
            folds: config.folds,
        });
    }
    let dim = dataset[0].0.dim();
    for (series, ann) in dataset {
        if series.len() != ann.len() {
            return Err(Error::LengthMismatch {
                expected: series.len(),
                found: ann.len(),
            });
        }
        if series.dim() != dim {
            return Err(Error::DimMismatch {
                left: dim,
                right: series.dim(),
            });
        }
    }

    let mut order: Vec<usize> = (0..dataset.len()).collect();
    order.sort_by(|&a, &b| dataset[a].0.video_id().cmp(dataset[b].0.video_id()));
    if let Some(w) = order
        .windows(2)
        .find(|w| dataset[w[0]].0.video_id() == dataset[w[1]].0.video_id())
    {
        return Err(Error::InvalidParameter(format!(
            "duplicate video id {:?}",
            dataset[w[0]].0.video_id()
        )));
    }
    SplitMix64::new(config.seed).shuffle(&mut order);
    let mut fold_of = vec![0; dataset.len()];
    for (pos, &v) in order.iter().enumerate() {
        fold_of[v] = pos % config.folds;
    }

    let stack = |videos: &[usize]| -> (Matrix, Vec<u32>) {
        let mut data = Vec::new();
        let mut labels = Vec::new();
        for &v in videos {
            let (series, ann) = &dataset[v];
            data.extend_from_slice(series.values().as_slice());
            labels.extend_from_slice(&ann.phases);
        }
        (Matrix::from_vec(labels.len(), dim, data).unwrap(), labels)
    };

    let mut report = CvReport {
        accuracy: 0.0,
        correct: 0,
        total: 0,
        fold_accuracies: Vec::with_capacity(config.folds),
        folds: Vec::with_capacity(config.folds),
        config: *config,
    };
    for fold in 0..config.folds {
        // held-out videos in shuffled order
        let test_videos: Vec<usize> = order
            .iter()
            .copied()
            .filter(|&v| fold_of[v] == fold)
            .collect();
        let train_videos: Vec<usize> = (0..dataset.len()).filter(|&v| fold_of[v] != fold).collect();
        let (train, train_labels) = stack(&train_videos);
        let (test, test_labels) = stack(&test_videos);
        let predicted = knn_classify(&train, &train_labels, &test, config.k)?;
        let correct = predicted
            .iter()
            .zip(&test_labels)
            .filter(|(p, t)| p == t)
            .count();
        report.correct += correct;
        report.total += test_labels.len();
        report
            .fold_accuracies
            .push(correct as f64 / test_labels.len() as f64);
        report.folds.push(
            test_videos
                .iter()
                .map(|&v| dataset[v].0.video_id().to_string())
                .collect(),
        );
    }
    report.accuracy = report.correct as f64 / report.total as f64;
    Ok(report)
}
