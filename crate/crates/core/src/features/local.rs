use super::{interpolate_track, CompleteTrack, SubjectTrack, KEYPOINT_COUNT};
use crate::error::{Error, Result};
use crate::matrix::Matrix;

pub const STATIC_BOX_WIDTH: usize = 3;
pub const STATIC_POSE_WIDTH: usize = 2 * KEYPOINT_COUNT;
/// Values per frame: static box, static pose, dynamic box, dynamic pose.
pub const LOCAL_WIDTH: usize = 2 * (STATIC_BOX_WIDTH + STATIC_POSE_WIDTH);

/// Per-frame local features; every block has one row per frame.
#[derive(Clone, Debug, PartialEq)]
pub struct LocalFeatures {
    pub static_box: Matrix,
    pub static_pose: Matrix,
    pub dynamic_box: Matrix,
    pub dynamic_pose: Matrix,
}

impl LocalFeatures {
    pub fn len(&self) -> usize {
        self.static_box.rows()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// The four blocks side by side, `LOCAL_WIDTH` columns.
    pub fn to_matrix(&self) -> Matrix {
        Matrix::hstack(&[
            &self.static_box,
            &self.static_pose,
            &self.dynamic_box,
            &self.dynamic_pose,
        ])
        .expect("blocks share the frame count")
    }
}

/// Box center relative to the first frame's center, and height-to-width ratio
/// relative to the first frame's ratio. Columns: `[dx, dy, ratio]`.
pub fn static_box_features(track: &CompleteTrack) -> Result<Matrix> {
    if let Some((t, b)) = track.boxes.iter().enumerate().find(|(_, b)| !b.is_valid()) {
        return Err(Error::DegenerateBox {
            frame: t + 1,
            width: b.w,
            height: b.h,
        });
    }
    let first = track
        .boxes
        .first()
        .ok_or(Error::LengthTooShort { len: 0, min: 1 })?;
    let (c0, r0) = ((first.cx, first.cy), first.ratio());
    Ok(Matrix::from_rows(
        &track
            .boxes
            .iter()
            .map(|b| [b.cx - c0.0, b.cy - c0.1, b.ratio() / r0])
            .collect::<Vec<_>>(),
    )
    .unwrap())
}

/// Every keypoint translated by the first frame's hip position.
/// Columns alternate `x, y` in keypoint order.
pub fn static_pose_features(track: &CompleteTrack) -> Matrix {
    let Some(first) = track.poses.first() else {
        return Matrix::zeros(0, STATIC_POSE_WIDTH);
    };
    let [hx, hy] = first.hip();
    let mut out = Matrix::zeros(track.len(), STATIC_POSE_WIDTH);
    for (t, pose) in track.poses.iter().enumerate() {
        let row = out.row_mut(t);
        for (m, [x, y]) in pose.keypoints.iter().enumerate() {
            row[2 * m] = x - hx;
            row[2 * m + 1] = y - hy;
        }
    }
    out
}

/// First differences between consecutive frames; the first frame is all zeros.
pub fn dynamic_features(statics: &Matrix) -> Result<Matrix> {
    if statics.rows() < 2 {
        return Err(Error::LengthTooShort {
            len: statics.rows(),
            min: 2,
        });
    }
    let mut out = Matrix::zeros(statics.rows(), statics.cols());
    for t in 1..statics.rows() {
        let (prev, cur) = (statics.row(t - 1), statics.row(t));
        for (o, (c, p)) in out.row_mut(t).iter_mut().zip(cur.iter().zip(prev)) {
            *o = c - p;
        }
    }
    Ok(out)
}

/// Interpolates missing detections, then computes all four local blocks.
pub fn local_features(track: &SubjectTrack) -> Result<LocalFeatures> {
    if track.len() < 2 {
        return Err(Error::LengthTooShort {
            len: track.len(),
            min: 2,
        });
    }
    let complete = interpolate_track(track)?;
    let static_box = static_box_features(&complete)?;
    let static_pose = static_pose_features(&complete);
    let dynamic_box = dynamic_features(&static_box)?;
    let dynamic_pose = dynamic_features(&static_pose)?;
    Ok(LocalFeatures {
        static_box,
        static_pose,
        dynamic_box,
        dynamic_pose,
    })
}
