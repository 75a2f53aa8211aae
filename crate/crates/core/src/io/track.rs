use super::numbered_lines;
use crate::error::{Error, Result};
use crate::features::{FrameObservation, Pose, SubjectBox, SubjectTrack, KEYPOINT_COUNT};
use serde::{Deserialize, Serialize};
use std::io::{BufRead, Write};

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TrackRecord {
    frame: usize,
    #[serde(rename = "box")]
    bbox: Option<SubjectBox>,
    pose: Option<Vec<[f64; 2]>>,
}

/// Reads a track; frames must be numbered `1..=T` in order.
pub fn read_track<R: BufRead>(r: R) -> Result<SubjectTrack> {
    let mut frames = Vec::new();
    for item in numbered_lines(r) {
        let (line, text) = item?;
        let rec: TrackRecord =
            serde_json::from_str(&text).map_err(|e| Error::schema(line, e.to_string()))?;
        if rec.frame != frames.len() + 1 {
            return Err(Error::schema(
                line,
                format!("expected frame {}, found {}", frames.len() + 1, rec.frame),
            ));
        }
        if let Some(b) = &rec.bbox {
            if !b.is_valid() {
                return Err(Error::schema(
                    line,
                    format!("box must have finite center and positive size, got {b:?}"),
                ));
            }
        }
        let pose = match rec.pose {
            None => None,
            Some(kps) => {
                if kps.len() != KEYPOINT_COUNT {
                    return Err(Error::schema(
                        line,
                        format!(
                            "pose has {} keypoints, expected {KEYPOINT_COUNT}",
                            kps.len()
                        ),
                    ));
                }
                if kps.iter().flatten().any(|v| !v.is_finite()) {
                    return Err(Error::schema(line, "non-finite keypoint"));
                }
                Some(Pose::new(kps.try_into().unwrap()))
            }
        };
        frames.push(FrameObservation {
            bbox: rec.bbox,
            pose,
        });
    }
    Ok(SubjectTrack::new(frames))
}

pub fn write_track<W: Write>(mut w: W, track: &SubjectTrack) -> Result<()> {
    for (t, f) in track.frames.iter().enumerate() {
        let rec = TrackRecord {
            frame: t + 1,
            bbox: f.bbox,
            pose: f.pose.map(|p| p.keypoints.to_vec()),
        };
        serde_json::to_writer(&mut w, &rec)?;
        w.write_all(b"\n")?;
    }
    Ok(())
}
