//! Local subject features (box and pose, static and dynamic) and the Gaussian
//! weight mask used before global feature extraction.

mod local;
mod mask;
mod track;

pub use local::{
    dynamic_features, local_features, static_box_features, static_pose_features, LocalFeatures,
    LOCAL_WIDTH, STATIC_BOX_WIDTH, STATIC_POSE_WIDTH,
};
pub use mask::{gaussian_mask, MaskConfig, MaskScale, PixelRect, WeightMask};
pub use track::{interpolate_track, CompleteTrack};

use serde::{Deserialize, Serialize};

/// Number of keypoints produced per pose.
pub const KEYPOINT_COUNT: usize = 24;

/// Keypoint order expected in track files.
pub const KEYPOINT_NAMES: [&str; KEYPOINT_COUNT] = [
    "pelvis",
    "left_hip",
    "right_hip",
    "spine1",
    "left_knee",
    "right_knee",
    "spine2",
    "left_ankle",
    "right_ankle",
    "spine3",
    "left_foot",
    "right_foot",
    "neck",
    "left_collar",
    "right_collar",
    "head",
    "left_shoulder",
    "right_shoulder",
    "left_elbow",
    "right_elbow",
    "left_wrist",
    "right_wrist",
    "left_hand",
    "right_hand",
];

/// Position of the hip joint in [`Pose::keypoints`]. It is the first keypoint
/// of the stored order and anchors the static pose features.
pub const HIP: usize = 0;

/// Axis-aligned subject box in pixel coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SubjectBox {
    pub cx: f64,
    pub cy: f64,
    pub w: f64,
    pub h: f64,
}

impl SubjectBox {
    pub fn new(cx: f64, cy: f64, w: f64, h: f64) -> Self {
        SubjectBox { cx, cy, w, h }
    }

    /// Height-to-width ratio.
    pub fn ratio(&self) -> f64 {
        self.h / self.w
    }

    pub fn is_valid(&self) -> bool {
        self.w > 0.0 && self.h > 0.0 && self.cx.is_finite() && self.cy.is_finite()
    }

    fn to_array(self) -> [f64; 4] {
        [self.cx, self.cy, self.w, self.h]
    }

    fn from_array(a: [f64; 4]) -> Self {
        SubjectBox::new(a[0], a[1], a[2], a[3])
    }
}

/// 2D image-plane keypoints of one subject.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Pose {
    pub keypoints: [[f64; 2]; KEYPOINT_COUNT],
}

impl Pose {
    pub fn new(keypoints: [[f64; 2]; KEYPOINT_COUNT]) -> Self {
        Pose { keypoints }
    }

    pub fn hip(&self) -> [f64; 2] {
        self.keypoints[HIP]
    }

    fn to_array(self) -> [f64; 2 * KEYPOINT_COUNT] {
        let mut out = [0.0; 2 * KEYPOINT_COUNT];
        for (m, [x, y]) in self.keypoints.iter().enumerate() {
            out[2 * m] = *x;
            out[2 * m + 1] = *y;
        }
        out
    }

    fn from_array(a: [f64; 2 * KEYPOINT_COUNT]) -> Self {
        let mut keypoints = [[0.0; 2]; KEYPOINT_COUNT];
        for (m, kp) in keypoints.iter_mut().enumerate() {
            *kp = [a[2 * m], a[2 * m + 1]];
        }
        Pose { keypoints }
    }
}

/// Detector and pose-estimator output for one frame; `None` marks a failure.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct FrameObservation {
    pub bbox: Option<SubjectBox>,
    pub pose: Option<Pose>,
}

/// Per-frame observations of the main subject of one video.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct SubjectTrack {
    pub frames: Vec<FrameObservation>,
}

impl SubjectTrack {
    pub fn new(frames: Vec<FrameObservation>) -> Self {
        SubjectTrack { frames }
    }

    pub fn len(&self) -> usize {
        self.frames.len()
    }

    pub fn is_empty(&self) -> bool {
        self.frames.is_empty()
    }

    /// Frames missing a box or a pose.
    pub fn missing_frames(&self) -> usize {
        self.frames
            .iter()
            .filter(|f| f.bbox.is_none() || f.pose.is_none())
            .count()
    }
}
