//! Synthetic multi-phase series with known correspondence, the wait-phase
//! perturbation, and benchmark suites built from them.
//!
//! A latent progress variable advances linearly through each phase. Every
//! phase maps progress to feature space through its own quadratic profile per
//! dimension, shared by all videos generated from the same profile seed.

mod suite;
mod wait;

pub use suite::{inject_corridor, run_suite, Corridor, PairScore, Suite, SuiteConfig, SuiteReport};
pub use wait::{add_wait_phase, WaitStrategy};

use crate::error::{Error, Result};
use crate::eval::{ground_truth_path, GroundTruthPath, PhaseAnnotation};
use crate::matrix::Matrix;
use crate::rng::SplitMix64;
use crate::series::{FeatureSeries, SERIES_WIDTH};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SynthSpec {
    pub phase_count: usize,
    pub durations_a: Vec<usize>,
    pub durations_b: Vec<usize>,
    pub feature_dim: usize,
    pub noise_std: f64,
    /// Seeds the per-phase profiles.
    pub seed: u64,
}

impl SynthSpec {
    pub fn new(durations_a: Vec<usize>, durations_b: Vec<usize>, seed: u64) -> Self {
        SynthSpec {
            phase_count: durations_a.len(),
            durations_a,
            durations_b,
            feature_dim: SERIES_WIDTH,
            noise_std: 0.0,
            seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidParameter(m));
        if self.phase_count == 0 {
            return bad("phase count must be positive".into());
        }
        for d in [&self.durations_a, &self.durations_b] {
            if d.len() != self.phase_count {
                return bad(format!(
                    "{} durations given for {} phases",
                    d.len(),
                    self.phase_count
                ));
            }
            if d.contains(&0) {
                return bad("phase durations must be positive".into());
            }
            if d.iter().sum::<usize>() < 2 {
                return bad("videos need at least two frames".into());
            }
        }
        if self.feature_dim == 0 {
            return bad("feature dimension must be positive".into());
        }
        if !self.noise_std.is_finite() || self.noise_std < 0.0 {
            return bad(format!(
                "noise std must be finite and >= 0, got {}",
                self.noise_std
            ));
        }
        Ok(())
    }
}

/// Quadratic progress-to-feature map per phase and dimension.
#[derive(Clone, Debug, PartialEq)]
pub struct PhaseProfiles {
    /// `[phase][dim] -> (c0, c1, c2)`
    coeffs: Vec<Vec<[f64; 3]>>,
}

impl PhaseProfiles {
    pub fn from_seed(seed: u64, phase_count: usize, dim: usize) -> Self {
        let mut rng = SplitMix64::derive(seed, 0);
        let coeffs = (0..phase_count)
            .map(|_| {
                (0..dim)
                    .map(|_| [rng.normal(), rng.normal(), 0.5 * rng.normal()])
                    .collect()
            })
            .collect();
        PhaseProfiles { coeffs }
    }

    pub fn dim(&self) -> usize {
        self.coeffs.first().map_or(0, Vec::len)
    }

    /// Feature vector of `phase` (0-based) at progress `s` in `[0, 1)`.
    pub fn eval(&self, phase: usize, s: f64, out: &mut [f64]) {
        for (o, c) in out.iter_mut().zip(&self.coeffs[phase]) {
            *o = c[0] + s * (c[1] + s * c[2]);
        }
    }

    /// One video: frame `t` of a phase lasting `L` frames has progress `t / L`.
    pub fn render(&self, durations: &[usize], noise_std: f64, rng: &mut SplitMix64) -> Matrix {
        let total: usize = durations.iter().sum();
        let mut out = Matrix::zeros(total, self.dim());
        let mut row = 0;
        for (p, &len) in durations.iter().enumerate() {
            for t in 0..len {
                let frame = out.row_mut(row);
                self.eval(p, t as f64 / len as f64, frame);
                if noise_std > 0.0 {
                    frame
                        .iter_mut()
                        .for_each(|v| *v += noise_std * rng.normal());
                }
                row += 1;
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SynthPair {
    pub a: FeatureSeries,
    pub b: FeatureSeries,
    pub annotation_a: PhaseAnnotation,
    pub annotation_b: PhaseAnnotation,
    pub ground_truth: GroundTruthPath,
}

/// Two videos sharing phase profiles, with their own phase durations and
/// independent noise drawn from `warp_seed`.
pub fn generate_pair(spec: &SynthSpec, warp_seed: u64) -> Result<SynthPair> {
    spec.validate()?;
    let profiles = PhaseProfiles::from_seed(spec.seed, spec.phase_count, spec.feature_dim);
    let id = |side: &str| format!("synth-{}-{}-{side}", spec.seed, warp_seed);
    let mut rng_a = SplitMix64::derive(warp_seed, 1);
    let mut rng_b = SplitMix64::derive(warp_seed, 2);
    let a = FeatureSeries::new(
        id("a"),
        profiles.render(&spec.durations_a, spec.noise_std, &mut rng_a),
    )?;
    let b = FeatureSeries::new(
        id("b"),
        profiles.render(&spec.durations_b, spec.noise_std, &mut rng_b),
    )?;
    let annotation_a = PhaseAnnotation::from_durations(id("a"), &spec.durations_a)?;
    let annotation_b = PhaseAnnotation::from_durations(id("b"), &spec.durations_b)?;
    let ground_truth = ground_truth_path(&annotation_a, &annotation_b)?;
    Ok(SynthPair {
        a,
        b,
        annotation_a,
        annotation_b,
        ground_truth,
    })
}

/// Parameters for a labelled dataset of one synthetic action.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DatasetSpec {
    pub videos: usize,
    pub phase_count: usize,
    pub min_phase_len: usize,
    pub max_phase_len: usize,
    pub feature_dim: usize,
    pub noise_std: f64,
    pub seed: u64,
}

impl Default for DatasetSpec {
    fn default() -> Self {
        DatasetSpec {
            videos: 30,
            phase_count: 3,
            min_phase_len: 8,
            max_phase_len: 20,
            feature_dim: SERIES_WIDTH,
            noise_std: 0.3,
            seed: 0,
        }
    }
}

/// Videos of one action: shared profiles, random phase durations, independent
/// noise. Ids are `video-000`, `video-001`, ...
pub fn generate_dataset(spec: &DatasetSpec) -> Result<Vec<(FeatureSeries, PhaseAnnotation)>> {
    if spec.min_phase_len == 0 || spec.min_phase_len > spec.max_phase_len {
        return Err(Error::InvalidParameter(format!(
            "bad phase length range {}..={}",
            spec.min_phase_len, spec.max_phase_len
        )));
    }
    let profiles = PhaseProfiles::from_seed(spec.seed, spec.phase_count, spec.feature_dim);
    (0..spec.videos)
        .map(|v| {
            let mut rng = SplitMix64::derive(spec.seed, 1000 + v as u64);
            let durations: Vec<usize> = (0..spec.phase_count)
                .map(|_| rng.range_inclusive(spec.min_phase_len, spec.max_phase_len))
                .collect();
            let id = format!("video-{v:03}");
            let series =
                FeatureSeries::new(&id, profiles.render(&durations, spec.noise_std, &mut rng))?;
            let ann = PhaseAnnotation::from_durations(&id, &durations)?;
            Ok((series, ann))
        })
        .collect()
}
