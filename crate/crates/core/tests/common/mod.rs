//! Oracles and fixture generators shared by the integration tests.
#![allow(dead_code)]

use vidalign::align::CostMatrix;
use vidalign::features::{FrameObservation, Pose, SubjectBox, SubjectTrack, KEYPOINT_COUNT};
use vidalign::matrix::Matrix;
use vidalign::rng::SplitMix64;
use vidalign::series::FeatureSeries;

/// Minimum cost over every monotone path from (1,1) to (n,k), found by
/// walking all of them.
pub fn brute_force_min_cost(d: &CostMatrix) -> f64 {
    fn walk(d: &CostMatrix, i: usize, j: usize, acc: f64, best: &mut f64) {
        let acc = acc + d.at(i, j);
        if i == d.n() && j == d.k() {
            *best = best.min(acc);
            return;
        }
        if i < d.n() {
            walk(d, i + 1, j, acc, best);
        }
        if j < d.k() {
            walk(d, i, j + 1, acc, best);
        }
        if i < d.n() && j < d.k() {
            walk(d, i + 1, j + 1, acc, best);
        }
    }
    let mut best = f64::INFINITY;
    walk(d, 1, 1, 0.0, &mut best);
    best
}

/// Every monotone path from (1,1) to (n,k).
pub fn all_paths(n: usize, k: usize) -> Vec<Vec<(usize, usize)>> {
    fn walk(n: usize, k: usize, cur: &mut Vec<(usize, usize)>, out: &mut Vec<Vec<(usize, usize)>>) {
        let (i, j) = *cur.last().unwrap();
        if (i, j) == (n, k) {
            out.push(cur.clone());
            return;
        }
        for (di, dj) in [(1, 1), (0, 1), (1, 0)] {
            if i + di <= n && j + dj <= k {
                cur.push((i + di, j + dj));
                walk(n, k, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    walk(n, k, &mut vec![(1, 1)], &mut out);
    out
}

/// Absolute area of a simple polygon.
pub fn shoelace_area(pts: &[(f64, f64)]) -> f64 {
    let twice: f64 = (0..pts.len())
        .map(|a| {
            let (p, q) = (pts[a], pts[(a + 1) % pts.len()]);
            p.0 * q.1 - q.0 * p.1
        })
        .sum();
    twice.abs() / 2.0
}

pub fn random_series(rng: &mut SplitMix64, len: usize, dim: usize) -> FeatureSeries {
    let m = Matrix::from_fn(len, dim, |_, _| rng.uniform(-2.0, 2.0));
    FeatureSeries::new("rand", m).unwrap()
}

/// Random walk of a subject with each observation dropped with
/// probability `drop`. The first frame is always complete.
pub fn random_track(rng: &mut SplitMix64, len: usize, drop: f64) -> SubjectTrack {
    let (mut cx, mut cy) = (rng.uniform(100.0, 300.0), rng.uniform(80.0, 200.0));
    let (mut w, mut h) = (rng.uniform(40.0, 80.0), rng.uniform(90.0, 160.0));
    let mut offsets = [[0.0; 2]; KEYPOINT_COUNT];
    for o in offsets.iter_mut().skip(1) {
        *o = [rng.uniform(-30.0, 30.0), rng.uniform(-60.0, 60.0)];
    }
    let frames = (0..len)
        .map(|t| {
            cx += rng.normal() * 3.0;
            cy += rng.normal() * 2.0;
            w = (w + rng.normal()).max(10.0);
            h = (h + rng.normal()).max(10.0);
            let mut kp = [[0.0; 2]; KEYPOINT_COUNT];
            for (m, p) in kp.iter_mut().enumerate() {
                *p = [
                    cx + offsets[m][0] + rng.normal() * 2.0,
                    cy + offsets[m][1] + rng.normal() * 2.0,
                ];
            }
            let keep_box = t == 0 || rng.next_f64() >= drop;
            let keep_pose = t == 0 || rng.next_f64() >= drop;
            FrameObservation {
                bbox: keep_box.then(|| SubjectBox::new(cx, cy, w, h)),
                pose: keep_pose.then(|| Pose::new(kp)),
            }
        })
        .collect();
    SubjectTrack::new(frames)
}
