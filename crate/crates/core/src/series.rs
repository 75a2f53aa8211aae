//! Per-frame feature vectors assembled into a multivariate time series,
//! smoothed with a centered moving average and z-normalized per dimension.

use crate::error::{Error, Result};
use crate::features::{local_features, LocalFeatures, SubjectTrack, LOCAL_WIDTH};
use crate::matrix::Matrix;
use serde::{Deserialize, Serialize};

/// Width of the backbone embedding per frame.
pub const GLOBAL_WIDTH: usize = 64;
/// Width of an assembled series: local block followed by the global block.
pub const SERIES_WIDTH: usize = LOCAL_WIDTH + GLOBAL_WIDTH;
/// Default moving-average window.
pub const SMOOTHING_WINDOW: usize = 5;

/// Column ranges of an assembled series, in order.
pub const LAYOUT: [(&str, std::ops::Range<usize>); 5] = [
    ("static_box", 0..3),
    ("static_pose", 3..51),
    ("dynamic_box", 51..54),
    ("dynamic_pose", 54..102),
    ("global", 102..166),
];

/// Backbone embeddings, one 64-wide row per frame.
#[derive(Clone, Debug, PartialEq)]
pub struct GlobalFeatures {
    values: Matrix,
}

impl GlobalFeatures {
    pub fn new(values: Matrix) -> Result<Self> {
        if values.cols() != GLOBAL_WIDTH {
            return Err(Error::DimMismatch {
                left: values.cols(),
                right: GLOBAL_WIDTH,
            });
        }
        Ok(GlobalFeatures { values })
    }

    pub fn len(&self) -> usize {
        self.values.rows()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn values(&self) -> &Matrix {
        &self.values
    }
}

/// A video modelled as a `T x D` matrix, one row per frame.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FeatureSeries {
    video_id: String,
    values: Matrix,
}

impl FeatureSeries {
    /// Requires at least two frames and at least one dimension.
    pub fn new(video_id: impl Into<String>, values: Matrix) -> Result<Self> {
        if values.rows() < 2 {
            return Err(Error::LengthTooShort {
                len: values.rows(),
                min: 2,
            });
        }
        if values.cols() == 0 {
            return Err(Error::InvalidParameter("series has no dimensions".into()));
        }
        if let Some(v) = values.as_slice().iter().find(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "non-finite value {v} in series"
            )));
        }
        Ok(FeatureSeries {
            video_id: video_id.into(),
            values,
        })
    }

    pub fn video_id(&self) -> &str {
        &self.video_id
    }

    pub fn set_video_id(&mut self, id: impl Into<String>) {
        self.video_id = id.into();
    }

    pub fn values(&self) -> &Matrix {
        &self.values
    }

    pub fn into_values(self) -> Matrix {
        self.values
    }

    /// Number of frames.
    pub fn len(&self) -> usize {
        self.values.rows()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn dim(&self) -> usize {
        self.values.cols()
    }

    pub fn frame(&self, t: usize) -> &[f64] {
        self.values.row(t)
    }

    fn with_values(&self, values: Matrix) -> FeatureSeries {
        FeatureSeries {
            video_id: self.video_id.clone(),
            values,
        }
    }
}

/// Concatenates local and global features frame by frame.
pub fn assemble(
    video_id: impl Into<String>,
    local: &LocalFeatures,
    global: &GlobalFeatures,
) -> Result<FeatureSeries> {
    if local.len() != global.len() {
        return Err(Error::LengthMismatch {
            expected: local.len(),
            found: global.len(),
        });
    }
    let local = local.to_matrix();
    let values = Matrix::hstack(&[&local, &global.values]).expect("equal frame counts");
    FeatureSeries::new(video_id, values)
}

/// Centered moving average over time. Near the ends the window is truncated
/// to the frames that exist, so the first frame averages frames 1..=3 for a
/// window of 5.
pub fn smooth(series: &FeatureSeries, window: usize) -> Result<FeatureSeries> {
    if window == 0 || window.is_multiple_of(2) {
        return Err(Error::BadWindow(window));
    }
    let half = window / 2;
    let (t_len, dim) = (series.len(), series.dim());
    let mut out = Matrix::zeros(t_len, dim);
    for t in 0..t_len {
        let lo = t.saturating_sub(half);
        let hi = (t + half).min(t_len - 1);
        let row = out.row_mut(t);
        for s in lo..=hi {
            for (o, v) in row.iter_mut().zip(series.frame(s)) {
                *o += v;
            }
        }
        let count = (hi - lo + 1) as f64;
        row.iter_mut().for_each(|o| *o /= count);
    }
    Ok(series.with_values(out))
}

/// Per-dimension z-score using the population standard deviation.
/// Dimensions that are constant over time become zeros.
pub fn normalize(series: &FeatureSeries) -> FeatureSeries {
    let (t_len, dim) = (series.len(), series.dim());
    let n = t_len as f64;
    let mut out = series.values.clone();
    for d in 0..dim {
        let col = series.values.column(d);
        let mean = col.iter().sum::<f64>() / n;
        let var = col.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / n;
        let std = var.sqrt();
        let constant = std <= 1e-12 * mean.abs().max(1.0);
        for (t, v) in col.iter().enumerate() {
            out.set(t, d, if constant { 0.0 } else { (v - mean) / std });
        }
    }
    series.with_values(out)
}

/// Full pipeline: local features, concatenation with global features,
/// smoothing, normalization.
pub fn build_series(
    video_id: impl Into<String>,
    track: &SubjectTrack,
    global: &GlobalFeatures,
) -> Result<FeatureSeries> {
    let local = local_features(track)?;
    let raw = assemble(video_id, &local, global)?;
    Ok(normalize(&smooth(&raw, SMOOTHING_WINDOW)?))
}
