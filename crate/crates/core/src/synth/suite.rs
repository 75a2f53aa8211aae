//! Benchmark suites over synthetic pairs: the wait-phase perturbation and
//! spurious low-cost corridors away from the table diagonal.

use super::{add_wait_phase, generate_pair, SynthSpec, WaitStrategy};
use crate::align::{align_costs, cost_matrix, AlignmentConfig, CostMatrix, Method};
use crate::error::{Error, Result};
use crate::eval::{correct_phase_rate, eae, ground_truth_path};
use crate::rng::SplitMix64;
use crate::series::SERIES_WIDTH;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    /// The first video of every pair gets a wait phase prepended.
    WaitPhase,
    /// The distance table gets a low-cost corridor bowed away from the diagonal.
    Corridor,
}

impl Suite {
    pub fn methods(&self) -> &'static [Method] {
        &[Method::Trivial, Method::Dtw, Method::Ddtw]
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::WaitPhase => "wait-phase",
            Suite::Corridor => "corridor",
        })
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "wait-phase" | "wait" => Ok(Suite::WaitPhase),
            "corridor" => Ok(Suite::Corridor),
            _ => Err(Error::InvalidParameter(format!("unknown suite {s:?}"))),
        }
    }
}

/// Low-cost band running from `(1, 1)` through an apex off the diagonal to
/// `(n, k)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Corridor {
    /// Apex offset from the diagonal along the second axis, as a fraction of `k`.
    pub offset: f64,
    /// Cells within this many columns of the band center are attenuated.
    pub half_width: f64,
    /// Multiplier applied to attenuated cells.
    pub attenuation: f64,
}

impl Default for Corridor {
    fn default() -> Self {
        Corridor {
            offset: 0.3,
            half_width: 1.0,
            attenuation: 0.05,
        }
    }
}

/// Attenuates a corridor whose apex lies at a random row in the middle of the
/// table, on a random side of the diagonal.
pub fn inject_corridor(costs: &mut CostMatrix, corridor: &Corridor, rng: &mut SplitMix64) {
    let (n, k) = (costs.n() as f64, costs.k() as f64);
    let side = if rng.next_u64() & 1 == 0 { 1.0 } else { -1.0 };
    let apex_i = 1.0 + (n - 1.0) * rng.uniform(0.3, 0.7);
    let diag = |i: f64| 1.0 + (i - 1.0) * (k - 1.0) / (n - 1.0).max(1.0);
    let apex_j = (diag(apex_i) + side * corridor.offset * k).clamp(1.0, k);
    let center = |i: f64| {
        if i <= apex_i {
            1.0 + (i - 1.0) * (apex_j - 1.0) / (apex_i - 1.0).max(1e-9)
        } else {
            apex_j + (i - apex_i) * (k - apex_j) / (n - apex_i).max(1e-9)
        }
    };
    let m = costs.values_mut();
    for r in 0..m.rows() {
        let c0 = center(r as f64 + 1.0);
        for c in 0..m.cols() {
            if ((c as f64 + 1.0) - c0).abs() <= corridor.half_width {
                m.set(r, c, m.get(r, c) * corridor.attenuation);
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub pairs: usize,
    pub seed: u64,
    pub phase_count: usize,
    pub min_phase_len: usize,
    pub max_phase_len: usize,
    pub feature_dim: usize,
    pub noise_std: f64,
    /// Settings for the DDTW rows.
    pub align: AlignmentConfig,
    pub wait: WaitStrategy,
    pub corridor: Corridor,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            pairs: 100,
            seed: 0,
            phase_count: 4,
            min_phase_len: 6,
            max_phase_len: 16,
            feature_dim: SERIES_WIDTH,
            noise_std: 0.3,
            align: AlignmentConfig::default(),
            wait: WaitStrategy::Cycle,
            corridor: Corridor::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PairScore {
    pub pair: usize,
    pub method: Method,
    pub n: usize,
    pub k: usize,
    pub eae: f64,
    pub cpr: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: Suite,
    /// Pair-major, methods in [`Suite::methods`] order.
    pub rows: Vec<PairScore>,
}

impl SuiteReport {
    pub fn scores(&self, method: Method) -> impl Iterator<Item = &PairScore> + '_ {
        self.rows.iter().filter(move |r| r.method == method)
    }

    pub fn median_eae(&self, method: Method) -> f64 {
        median(self.scores(method).map(|r| r.eae).collect())
    }

    pub fn median_cpr(&self, method: Method) -> f64 {
        median(self.scores(method).map(|r| r.cpr).collect())
    }

    /// Fraction of pairs where `better` has EAE no larger than `than`.
    pub fn eae_win_rate(&self, better: Method, than: Method) -> f64 {
        let a: Vec<f64> = self.scores(better).map(|r| r.eae).collect();
        let b: Vec<f64> = self.scores(than).map(|r| r.eae).collect();
        let wins = a.iter().zip(&b).filter(|(x, y)| x <= y).count();
        wins as f64 / a.len().max(1) as f64
    }
}

fn median(mut xs: Vec<f64>) -> f64 {
    if xs.is_empty() {
        return f64::NAN;
    }
    xs.sort_by(f64::total_cmp);
    let m = xs.len() / 2;
    if xs.len() % 2 == 1 {
        xs[m]
    } else {
        (xs[m - 1] + xs[m]) / 2.0
    }
}

pub fn run_suite(suite: Suite, config: &SuiteConfig) -> Result<SuiteReport> {
    config.align.validate()?;
    if config.min_phase_len < 2 || config.min_phase_len > config.max_phase_len {
        return Err(Error::InvalidParameter(format!(
            "phase lengths must satisfy 2 <= min <= max, got {}..={}",
            config.min_phase_len, config.max_phase_len
        )));
    }
    let per_pair: Vec<Vec<PairScore>> = (0..config.pairs)
        .into_par_iter()
        .map(|p| run_pair(suite, config, p))
        .collect::<Result<_>>()?;
    Ok(SuiteReport {
        suite,
        rows: per_pair.into_iter().flatten().collect(),
    })
}

fn run_pair(suite: Suite, config: &SuiteConfig, pair: usize) -> Result<Vec<PairScore>> {
    let mut rng = SplitMix64::derive(config.seed, pair as u64);
    let mut durations = || -> Vec<usize> {
        (0..config.phase_count)
            .map(|_| rng.range_inclusive(config.min_phase_len, config.max_phase_len))
            .collect()
    };
    let spec = SynthSpec {
        phase_count: config.phase_count,
        durations_a: durations(),
        durations_b: durations(),
        feature_dim: config.feature_dim,
        noise_std: config.noise_std,
        seed: rng.next_u64(),
    };
    let warp_seed = rng.next_u64();
    let pair_data = generate_pair(&spec, warp_seed)?;

    let (a, ann_a, gt, mut costs) = match suite {
        Suite::WaitPhase => {
            let (a, ann_a) = add_wait_phase(&pair_data.a, &pair_data.annotation_a, config.wait)?;
            let gt = ground_truth_path(&ann_a, &pair_data.annotation_b)?;
            let costs = cost_matrix(&a, &pair_data.b)?;
            (a, ann_a, gt, costs)
        }
        Suite::Corridor => {
            let costs = cost_matrix(&pair_data.a, &pair_data.b)?;
            (
                pair_data.a,
                pair_data.annotation_a,
                pair_data.ground_truth,
                costs,
            )
        }
    };
    if suite == Suite::Corridor {
        inject_corridor(&mut costs, &config.corridor, &mut rng);
    }
    let (n, k) = (a.len(), pair_data.b.len());

    suite
        .methods()
        .iter()
        .map(|&method| {
            let cfg = AlignmentConfig {
                method,
                ..config.align
            };
            let result = align_costs(&costs, &cfg)?;
            Ok(PairScore {
                pair,
                method,
                n,
                k,
                eae: eae(&result.path, &gt, n, k)?,
                cpr: correct_phase_rate(&result.path, &ann_a, &pair_data.annotation_b)?,
            })
        })
        .collect()
}
