use crate::align::WarpPath;
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Phase id (1-based) of every frame of one video.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct PhaseAnnotation {
    pub video_id: String,
    pub phases: Vec<u32>,
}

impl PhaseAnnotation {
    /// Phases must start at 1 and advance by at most one per frame.
    pub fn new(video_id: impl Into<String>, phases: Vec<u32>) -> Result<Self> {
        let a = PhaseAnnotation {
            video_id: video_id.into(),
            phases,
        };
        a.validate()?;
        Ok(a)
    }

    /// Builds an annotation from per-phase frame counts.
    pub fn from_durations(video_id: impl Into<String>, durations: &[usize]) -> Result<Self> {
        let phases = durations
            .iter()
            .enumerate()
            .flat_map(|(p, &d)| std::iter::repeat_n(p as u32 + 1, d))
            .collect();
        PhaseAnnotation::new(video_id, phases)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| {
            Err(Error::InvalidAnnotation(format!(
                "{}: {msg}",
                self.video_id
            )))
        };
        match self.phases.first() {
            None => return bad("no frames".into()),
            Some(&p) if p != 1 => return bad(format!("first frame has phase {p}, expected 1")),
            _ => {}
        }
        for (t, w) in self.phases.windows(2).enumerate() {
            if w[1] != w[0] && w[1] != w[0] + 1 {
                return bad(format!(
                    "phase jumps from {} to {} at frame {}",
                    w[0],
                    w[1],
                    t + 2
                ));
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.phases.len()
    }

    pub fn is_empty(&self) -> bool {
        self.phases.is_empty()
    }

    pub fn phase_count(&self) -> usize {
        self.phases.last().copied().unwrap_or(0) as usize
    }

    /// Phase of 1-based frame `t`.
    pub fn phase_of(&self, t: usize) -> u32 {
        self.phases[t - 1]
    }

    /// 1-based first frame of phases `2..=P`.
    pub fn boundaries(&self) -> Vec<usize> {
        self.phases
            .windows(2)
            .enumerate()
            .filter(|(_, w)| w[1] != w[0])
            .map(|(t, _)| t + 2)
            .collect()
    }
}

/// Piecewise-linear reference alignment through matching phase boundaries.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GroundTruthPath {
    anchors: Vec<(f64, f64)>,
}

impl GroundTruthPath {
    /// Anchors must start at `(1, 1)` and increase strictly in both coordinates.
    pub fn new(anchors: Vec<(f64, f64)>) -> Result<Self> {
        match anchors.first() {
            Some(&(x, y)) if x == 1.0 && y == 1.0 => {}
            _ => {
                return Err(Error::InvalidPath(
                    "ground truth must start at (1, 1)".into(),
                ))
            }
        }
        if anchors.len() < 2 {
            return Err(Error::InvalidPath("ground truth needs two anchors".into()));
        }
        for w in anchors.windows(2) {
            if !(w[1].0 > w[0].0 && w[1].1 > w[0].1) {
                return Err(Error::NonMonotoneAnchors {
                    prev: w[0],
                    next: w[1],
                });
            }
        }
        Ok(GroundTruthPath { anchors })
    }

    pub fn anchors(&self) -> &[(f64, f64)] {
        &self.anchors
    }

    pub fn end(&self) -> (f64, f64) {
        *self.anchors.last().unwrap()
    }
}

/// Anchors at `(1, 1)`, at the first frames of each shared phase boundary, and
/// at `(n, k)`.
pub fn ground_truth_path(a: &PhaseAnnotation, b: &PhaseAnnotation) -> Result<GroundTruthPath> {
    a.validate()?;
    b.validate()?;
    if a.phase_count() != b.phase_count() {
        return Err(Error::PhaseCountMismatch {
            a: a.phase_count(),
            b: b.phase_count(),
        });
    }
    let mut anchors = vec![(1.0, 1.0)];
    anchors.extend(
        a.boundaries()
            .into_iter()
            .zip(b.boundaries())
            .map(|(x, y)| (x as f64, y as f64)),
    );
    anchors.push((a.len() as f64, b.len() as f64));
    GroundTruthPath::new(anchors)
}

/// Fraction of frames of the first video aligned to at least one frame of the
/// same phase in the second video.
pub fn correct_phase_rate(
    path: &WarpPath,
    a: &PhaseAnnotation,
    b: &PhaseAnnotation,
) -> Result<f64> {
    let (n, k) = path.end();
    if n != a.len() {
        return Err(Error::LengthMismatch {
            expected: a.len(),
            found: n,
        });
    }
    if k != b.len() {
        return Err(Error::LengthMismatch {
            expected: b.len(),
            found: k,
        });
    }
    path.validate(n, k)?;
    let mut correct = vec![false; n];
    for &(i, j) in path.steps() {
        if a.phase_of(i) == b.phase_of(j) {
            correct[i - 1] = true;
        }
    }
    Ok(correct.iter().filter(|&&c| c).count() as f64 / n as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ann(phases: &[u32]) -> PhaseAnnotation {
        PhaseAnnotation::new("v", phases.to_vec()).unwrap()
    }

    #[test]
    fn annotation_validation() {
        assert!(PhaseAnnotation::new("v", vec![]).is_err());
        assert!(PhaseAnnotation::new("v", vec![2, 2]).is_err());
        assert!(PhaseAnnotation::new("v", vec![1, 3]).is_err());
        assert!(PhaseAnnotation::new("v", vec![1, 2, 1]).is_err());
        let a = ann(&[1, 1, 2, 2, 2, 3]);
        assert_eq!(a.phase_count(), 3);
        assert_eq!(a.boundaries(), vec![3, 6]);
        assert_eq!(PhaseAnnotation::from_durations("v", &[2, 3, 1]).unwrap(), a);
    }

    #[test]
    fn ground_truth_anchors() {
        let a = PhaseAnnotation::from_durations("a", &[5, 6]).unwrap();
        let b = PhaseAnnotation::from_durations("b", &[2, 9]).unwrap();
        let gt = ground_truth_path(&a, &b).unwrap();
        assert_eq!(gt.anchors(), &[(1.0, 1.0), (6.0, 3.0), (11.0, 11.0)]);

        let same = ground_truth_path(&a, &a).unwrap();
        assert!(same.anchors().iter().all(|(x, y)| x == y));
    }

    #[test]
    fn phase_count_mismatch() {
        let a = ann(&[1, 2, 3, 3]);
        let b = ann(&[1, 2, 3, 4, 4]);
        assert!(matches!(
            ground_truth_path(&a, &b),
            Err(Error::PhaseCountMismatch { a: 3, b: 4 })
        ));
    }

    #[test]
    fn degenerate_anchor_rejected() {
        // last phase is a single frame: its anchor coincides with the end row
        let a = ann(&[1, 1, 2]);
        let b = ann(&[1, 2, 2]);
        assert!(matches!(
            ground_truth_path(&a, &b),
            Err(Error::NonMonotoneAnchors { .. })
        ));
    }

    #[test]
    fn phase_rate_enumeration() {
        let a = ann(&[1, 1, 2, 2]);
        let path = WarpPath::new(vec![(1, 1), (2, 2), (3, 2), (4, 3), (4, 4)], 4, 4).unwrap();
        // frame 3 only sees B-frame 2 (phase 1); the others have a match
        assert_eq!(correct_phase_rate(&path, &a, &a).unwrap(), 0.75);

        let diag = WarpPath::new(vec![(1, 1), (2, 2), (3, 3), (4, 4)], 4, 4).unwrap();
        assert_eq!(correct_phase_rate(&diag, &a, &a).unwrap(), 1.0);
    }

    #[test]
    fn phase_rate_counts_mismatched_frames() {
        // (1, 1) always matches phase 1, so the rate never drops to zero on
        // valid input; every later frame of A lands in the wrong phase here
        let a = ann(&[1, 2, 2, 2]);
        let b = ann(&[1, 1, 1, 2]);
        let path = WarpPath::new(vec![(1, 1), (2, 2), (3, 3), (4, 3)], 4, 3).unwrap();
        let b3 = ann(&[1, 1, 1]);
        assert!(correct_phase_rate(&path, &a, &b3).unwrap() == 0.25);
        let diag = WarpPath::new(vec![(1, 1), (2, 2), (3, 3), (4, 4)], 4, 4).unwrap();
        assert_eq!(correct_phase_rate(&diag, &a, &b).unwrap(), 0.5);
        assert!(matches!(
            correct_phase_rate(&diag, &a, &b3),
            Err(Error::LengthMismatch { .. })
        ));
    }
}
