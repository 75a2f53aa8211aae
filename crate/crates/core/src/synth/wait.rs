use crate::error::{Error, Result};
use crate::eval::PhaseAnnotation;
use crate::matrix::Matrix;
use crate::series::FeatureSeries;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

/// Which frames fill the prepended wait phase.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WaitStrategy {
    /// Frames 1, 2, 3, 1, 2, 3, ...
    #[default]
    Cycle,
    /// Frame 1 repeated.
    HoldFirst,
}

impl fmt::Display for WaitStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            WaitStrategy::Cycle => "cycle",
            WaitStrategy::HoldFirst => "hold-first",
        })
    }
}

impl FromStr for WaitStrategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cycle" => Ok(WaitStrategy::Cycle),
            "hold-first" => Ok(WaitStrategy::HoldFirst),
            _ => Err(Error::InvalidParameter(format!(
                "unknown wait strategy {s:?}"
            ))),
        }
    }
}

/// Prepends `ceil(T / 2)` copies of the opening frames, giving `ceil(3T / 2)`
/// frames. The new frames belong to phase 1.
pub fn add_wait_phase(
    series: &FeatureSeries,
    annotation: &PhaseAnnotation,
    strategy: WaitStrategy,
) -> Result<(FeatureSeries, PhaseAnnotation)> {
    let t_len = series.len();
    if t_len < 3 {
        return Err(Error::LengthTooShort { len: t_len, min: 3 });
    }
    if annotation.len() != t_len {
        return Err(Error::LengthMismatch {
            expected: t_len,
            found: annotation.len(),
        });
    }
    let extra = t_len.div_ceil(2);
    let source = |r: usize| match strategy {
        WaitStrategy::Cycle => r % 3,
        WaitStrategy::HoldFirst => 0,
    };
    let mut data = Vec::with_capacity((t_len + extra) * series.dim());
    for r in 0..extra {
        data.extend_from_slice(series.frame(source(r)));
    }
    data.extend_from_slice(series.values().as_slice());
    let id = format!("{}_wait", series.video_id());
    let values = Matrix::from_vec(t_len + extra, series.dim(), data).unwrap();

    let mut phases = vec![1; extra];
    phases.extend_from_slice(&annotation.phases);
    Ok((
        FeatureSeries::new(&id, values)?,
        PhaseAnnotation::new(id, phases)?,
    ))
}
