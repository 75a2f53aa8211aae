use super::{FrameObservation, Pose, SubjectBox, SubjectTrack};
use crate::error::{Error, Result};

/// A track where every frame carries both a box and a pose.
#[derive(Clone, Debug, PartialEq)]
pub struct CompleteTrack {
    pub boxes: Vec<SubjectBox>,
    pub poses: Vec<Pose>,
}

impl CompleteTrack {
    pub fn len(&self) -> usize {
        self.boxes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.boxes.is_empty()
    }

    pub fn into_track(self) -> SubjectTrack {
        SubjectTrack::new(
            self.boxes
                .into_iter()
                .zip(self.poses)
                .map(|(b, p)| FrameObservation {
                    bbox: Some(b),
                    pose: Some(p),
                })
                .collect(),
        )
    }
}

/// Fills missing boxes and poses.
///
/// Interior gaps are linearly interpolated per coordinate between the nearest
/// present frames on either side. Leading and trailing gaps copy the nearest
/// present frame. Present frames are returned unchanged.
pub fn interpolate_track(track: &SubjectTrack) -> Result<CompleteTrack> {
    let boxes: Vec<_> = track
        .frames
        .iter()
        .map(|f| f.bbox.map(SubjectBox::to_array))
        .collect();
    let poses: Vec<_> = track
        .frames
        .iter()
        .map(|f| f.pose.map(Pose::to_array))
        .collect();
    let boxes = fill_gaps(&boxes).ok_or(Error::AllMissing("box"))?;
    let poses = fill_gaps(&poses).ok_or(Error::AllMissing("pose"))?;
    Ok(CompleteTrack {
        boxes: boxes.into_iter().map(SubjectBox::from_array).collect(),
        poses: poses.into_iter().map(Pose::from_array).collect(),
    })
}

fn fill_gaps<const N: usize>(values: &[Option<[f64; N]>]) -> Option<Vec<[f64; N]>> {
    let present: Vec<usize> = (0..values.len()).filter(|&t| values[t].is_some()).collect();
    let (&first, &last) = (present.first()?, present.last()?);

    let mut out = Vec::with_capacity(values.len());
    let mut next = 0; // index into `present` of the first present frame >= t
    for t in 0..values.len() {
        if let Some(v) = values[t] {
            out.push(v);
            next += 1;
            continue;
        }
        let filled = if t < first {
            values[first].unwrap()
        } else if t > last {
            values[last].unwrap()
        } else {
            let (p, q) = (present[next - 1], present[next]);
            let (a, b) = (values[p].unwrap(), values[q].unwrap());
            let w = (t - p) as f64 / (q - p) as f64;
            std::array::from_fn(|c| a[c] + (b[c] - a[c]) * w)
        };
        out.push(filled);
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::features::KEYPOINT_COUNT;

    fn frame(cx: Option<f64>) -> FrameObservation {
        FrameObservation {
            bbox: cx.map(|cx| SubjectBox::new(cx, 0.0, 1.0, 1.0)),
            pose: Some(Pose::new([[0.0; 2]; KEYPOINT_COUNT])),
        }
    }

    fn centers(t: &CompleteTrack) -> Vec<f64> {
        t.boxes.iter().map(|b| b.cx).collect()
    }

    #[test]
    fn interior_gap_is_linear() {
        let track = SubjectTrack::new(vec![frame(Some(1.0)), frame(None), frame(Some(3.0))]);
        assert_eq!(
            centers(&interpolate_track(&track).unwrap()),
            vec![1.0, 2.0, 3.0]
        );
    }

    #[test]
    fn long_gap_uses_nearest_neighbours() {
        let track = SubjectTrack::new(vec![
            frame(Some(0.0)),
            frame(None),
            frame(None),
            frame(None),
            frame(Some(8.0)),
        ]);
        assert_eq!(
            centers(&interpolate_track(&track).unwrap()),
            vec![0.0, 2.0, 4.0, 6.0, 8.0]
        );
    }

    #[test]
    fn boundary_gaps_copy_nearest() {
        let track = SubjectTrack::new(vec![
            frame(None),
            frame(Some(2.0)),
            frame(Some(4.0)),
            frame(None),
        ]);
        assert_eq!(
            centers(&interpolate_track(&track).unwrap()),
            vec![2.0, 2.0, 4.0, 4.0]
        );
    }

    #[test]
    fn all_missing_boxes_is_an_error() {
        let track = SubjectTrack::new(vec![frame(None), frame(None)]);
        assert!(matches!(
            interpolate_track(&track),
            Err(Error::AllMissing("box"))
        ));
        let no_pose = SubjectTrack::new(vec![FrameObservation {
            bbox: Some(SubjectBox::new(0.0, 0.0, 1.0, 1.0)),
            pose: None,
        }]);
        assert!(matches!(
            interpolate_track(&no_pose),
            Err(Error::AllMissing("pose"))
        ));
    }

    #[test]
    fn complete_track_is_a_fixed_point() {
        let track = SubjectTrack::new(vec![frame(Some(1.5)), frame(Some(-2.0)), frame(Some(7.25))]);
        let filled = interpolate_track(&track).unwrap();
        assert_eq!(filled.into_track(), track);
    }
}
