//! Frame-distance tables and monotone alignment paths: plain DTW, DTW with a
//! penalty on cells far from the table diagonal, and the linear baseline.
//!
//! Frame indices in paths are 1-based. Table rows are frames of the first
//! series (`n` of them), columns frames of the second (`k`).

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::series::FeatureSeries;
use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::str::FromStr;

#[derive(Clone, Debug, PartialEq)]
pub struct CostMatrix(Matrix);

impl CostMatrix {
    pub fn new(values: Matrix) -> Result<Self> {
        if values.rows() == 0 || values.cols() == 0 {
            return Err(Error::InvalidParameter("empty cost matrix".into()));
        }
        if values.as_slice().iter().any(|v| !v.is_finite() || *v < 0.0) {
            return Err(Error::InvalidParameter(
                "cost entries must be finite and non-negative".into(),
            ));
        }
        Ok(CostMatrix(values))
    }

    /// Frames of the first series.
    pub fn n(&self) -> usize {
        self.0.rows()
    }

    /// Frames of the second series.
    pub fn k(&self) -> usize {
        self.0.cols()
    }

    /// Entry for 1-based frame indices.
    pub fn at(&self, i: usize, j: usize) -> f64 {
        self.0.get(i - 1, j - 1)
    }

    pub fn values(&self) -> &Matrix {
        &self.0
    }

    pub fn values_mut(&mut self) -> &mut Matrix {
        &mut self.0
    }

    pub fn transpose(&self) -> CostMatrix {
        CostMatrix(self.0.transpose())
    }

    /// Sum of entries visited by `path`.
    pub fn path_cost(&self, path: &WarpPath) -> f64 {
        path.steps().iter().map(|&(i, j)| self.at(i, j)).sum()
    }
}

/// Euclidean distance between every frame of `x` and every frame of `y`.
pub fn cost_matrix(x: &FeatureSeries, y: &FeatureSeries) -> Result<CostMatrix> {
    if x.dim() != y.dim() {
        return Err(Error::DimMismatch {
            left: x.dim(),
            right: y.dim(),
        });
    }
    let data: Vec<f64> = (0..x.len())
        .into_par_iter()
        .flat_map_iter(|i| {
            let xi = x.frame(i);
            (0..y.len()).map(move |j| {
                xi.iter()
                    .zip(y.frame(j))
                    .map(|(a, b)| (a - b) * (a - b))
                    .sum::<f64>()
                    .sqrt()
            })
        })
        .collect();
    Ok(CostMatrix(
        Matrix::from_vec(x.len(), y.len(), data).unwrap(),
    ))
}

/// Orthogonal distance from cell `(i, j)` to the line through the origin and
/// `(n, k)`. Evaluated as `|k*i - n*j| / sqrt(n^2 + k^2)`, which equals
/// `|(k/n)*i - j| / sqrt(k^2/n^2 + 1)` and is exactly zero on the line.
pub fn diagonal_distance(i: usize, j: usize, n: usize, k: usize) -> f64 {
    let num = (k as i128 * i as i128 - n as i128 * j as i128).unsigned_abs() as f64;
    num / (n as f64).hypot(k as f64)
}

/// Scales each cell farther than `margin` from the diagonal by
/// `1 + lambda * (d - margin)`.
pub fn penalize(costs: &CostMatrix, margin: f64, lambda: f64) -> CostMatrix {
    let (n, k) = (costs.n(), costs.k());
    CostMatrix(Matrix::from_fn(n, k, |r, c| {
        let v = costs.0.get(r, c);
        let d = diagonal_distance(r + 1, c + 1, n, k);
        if d <= margin {
            v
        } else {
            v * (1.0 + lambda * (d - margin))
        }
    }))
}

/// Monotone path from `(1, 1)` to `(n, k)` with unit steps.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WarpPath {
    steps: Vec<(usize, usize)>,
}

impl WarpPath {
    /// Validates the start, end and step structure for an `n x k` table.
    pub fn new(steps: Vec<(usize, usize)>, n: usize, k: usize) -> Result<Self> {
        let path = WarpPath { steps };
        path.validate(n, k)?;
        Ok(path)
    }

    pub(crate) fn new_unchecked(steps: Vec<(usize, usize)>) -> Self {
        WarpPath { steps }
    }

    pub fn steps(&self) -> &[(usize, usize)] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// The final cell, i.e. `(n, k)`.
    pub fn end(&self) -> (usize, usize) {
        *self.steps.last().expect("non-empty path")
    }

    pub fn validate(&self, n: usize, k: usize) -> Result<()> {
        let (first, last) = match (self.steps.first(), self.steps.last()) {
            (Some(f), Some(l)) => (*f, *l),
            _ => return Err(Error::InvalidPath("empty path".into())),
        };
        if first != (1, 1) || last != (n, k) {
            return Err(Error::EndpointMismatch { n, k });
        }
        for w in self.steps.windows(2) {
            let (a, b) = (w[0], w[1]);
            let step = (b.0.wrapping_sub(a.0), b.1.wrapping_sub(a.1));
            if !matches!(step, (1, 0) | (0, 1) | (1, 1)) {
                return Err(Error::InvalidPath(format!("illegal step {a:?} -> {b:?}")));
            }
        }
        Ok(())
    }

    /// The same alignment seen from the other series.
    pub fn transposed(&self) -> WarpPath {
        WarpPath {
            steps: self.steps.iter().map(|&(i, j)| (j, i)).collect(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Dtw,
    Ddtw,
    Trivial,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Dtw => "dtw",
            Method::Ddtw => "ddtw",
            Method::Trivial => "trivial",
        })
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dtw" => Ok(Method::Dtw),
            "ddtw" => Ok(Method::Ddtw),
            "trivial" => Ok(Method::Trivial),
            _ => Err(Error::InvalidParameter(format!("unknown method {s:?}"))),
        }
    }
}

/// Distance from the diagonal tolerated before the penalty applies.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Margin {
    /// 10% of the table diagonal, `0.1 * sqrt(n^2 + k^2)`.
    Auto,
    /// In cell units; may be `+inf`.
    Fixed(f64),
}

impl Margin {
    pub fn resolve(&self, n: usize, k: usize) -> f64 {
        match *self {
            Margin::Auto => 0.1 * (n as f64).hypot(k as f64),
            Margin::Fixed(m) => m,
        }
    }
}

impl fmt::Display for Margin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Margin::Auto => f.write_str("auto"),
            Margin::Fixed(m) => write!(f, "{m}"),
        }
    }
}

impl FromStr for Margin {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "auto" {
            return Ok(Margin::Auto);
        }
        match s.parse::<f64>() {
            Ok(m) if m >= 0.0 => Ok(Margin::Fixed(m)),
            _ => Err(Error::InvalidParameter(format!(
                "margin must be \"auto\" or a non-negative number, got {s:?}"
            ))),
        }
    }
}

impl Serialize for Margin {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Margin::Fixed(m) if m.is_finite() => s.serialize_f64(*m),
            other => s.serialize_str(&other.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for Margin {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(f64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(m) if m >= 0.0 => Ok(Margin::Fixed(m)),
            Raw::Num(m) => Err(serde::de::Error::custom(format!("negative margin {m}"))),
            Raw::Text(t) => t.parse().map_err(serde::de::Error::custom),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AlignmentConfig {
    pub method: Method,
    pub margin: Margin,
    pub lambda: f64,
}

impl Default for AlignmentConfig {
    fn default() -> Self {
        AlignmentConfig {
            method: Method::Ddtw,
            margin: Margin::Auto,
            lambda: 1.0,
        }
    }
}

impl AlignmentConfig {
    pub fn dtw() -> Self {
        AlignmentConfig {
            method: Method::Dtw,
            ..Default::default()
        }
    }

    pub fn trivial() -> Self {
        AlignmentConfig {
            method: Method::Trivial,
            ..Default::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !self.lambda.is_finite() || self.lambda < 0.0 {
            return Err(Error::InvalidParameter(format!(
                "lambda must be finite and non-negative, got {}",
                self.lambda
            )));
        }
        if let Margin::Fixed(m) = self.margin {
            if m.is_nan() || m < 0.0 {
                return Err(Error::InvalidParameter(format!("negative margin {m}")));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AlignmentResult {
    pub path: WarpPath,
    /// Sum of the (penalized, for DDTW) table entries along the path.
    pub total_cost: f64,
    pub method: Method,
    /// Resolved margin; only set for DDTW.
    pub margin: Option<f64>,
    /// Only set for DDTW.
    pub lambda: Option<f64>,
}

/// Globally minimal monotone path through `costs`.
///
/// Backtracking prefers the diagonal predecessor, then the horizontal one
/// (same row of the first series), then the vertical one.
pub fn dp_align(costs: &CostMatrix) -> AlignmentResult {
    let (n, k) = (costs.n(), costs.k());
    let d = &costs.0;
    let mut acc = Matrix::zeros(n, k);
    for r in 0..n {
        for c in 0..k {
            let best = match (r, c) {
                (0, 0) => 0.0,
                (0, _) => acc.get(0, c - 1),
                (_, 0) => acc.get(r - 1, 0),
                _ => acc
                    .get(r - 1, c - 1)
                    .min(acc.get(r, c - 1))
                    .min(acc.get(r - 1, c)),
            };
            acc.set(r, c, best + d.get(r, c));
        }
    }

    let (mut r, mut c) = (n - 1, k - 1);
    let mut steps = vec![(n, k)];
    while (r, c) != (0, 0) {
        let mut next = None;
        let mut consider = |cand: (usize, usize)| {
            let v = acc.get(cand.0, cand.1);
            if next.is_none_or(|(_, best)| v < best) {
                next = Some((cand, v));
            }
        };
        if r > 0 && c > 0 {
            consider((r - 1, c - 1));
        }
        if c > 0 {
            consider((r, c - 1));
        }
        if r > 0 {
            consider((r - 1, c));
        }
        (r, c) = next.expect("not at origin").0;
        steps.push((r + 1, c + 1));
    }
    steps.reverse();

    AlignmentResult {
        path: WarpPath::new_unchecked(steps),
        total_cost: acc.get(n - 1, k - 1),
        method: Method::Dtw,
        margin: None,
        lambda: None,
    }
}

/// Linear baseline: frame `i` of the first video maps to frame
/// `round(i * k / n)` of the second, with intermediate cells filled in so the
/// result is a valid path.
pub fn trivial_align(n: usize, k: usize) -> Result<WarpPath> {
    if n == 0 || k == 0 {
        return Err(Error::InvalidParameter(format!(
            "table must be at least 1x1, got {n}x{k}"
        )));
    }
    let mut steps = vec![(1, 1)];
    let (mut ci, mut cj) = (1, 1);
    for i in 1..=n {
        // round half up in exact integer arithmetic
        let target = ((2 * i * k + n) / (2 * n)).clamp(1, k);
        while ci < i {
            ci += 1;
            if cj < target {
                cj += 1;
            }
            steps.push((ci, cj));
        }
        while cj < target {
            cj += 1;
            steps.push((ci, cj));
        }
    }
    Ok(WarpPath::new_unchecked(steps))
}

/// Aligns over a precomputed distance table.
pub fn align_costs(costs: &CostMatrix, config: &AlignmentConfig) -> Result<AlignmentResult> {
    config.validate()?;
    let (n, k) = (costs.n(), costs.k());
    match config.method {
        Method::Dtw => Ok(dp_align(costs)),
        Method::Ddtw => {
            let margin = config.margin.resolve(n, k);
            let mut result = dp_align(&penalize(costs, margin, config.lambda));
            result.method = Method::Ddtw;
            result.margin = Some(margin);
            result.lambda = Some(config.lambda);
            Ok(result)
        }
        Method::Trivial => {
            let path = trivial_align(n, k)?;
            Ok(AlignmentResult {
                total_cost: costs.path_cost(&path),
                path,
                method: Method::Trivial,
                margin: None,
                lambda: None,
            })
        }
    }
}

pub fn align(
    x: &FeatureSeries,
    y: &FeatureSeries,
    config: &AlignmentConfig,
) -> Result<AlignmentResult> {
    align_costs(&cost_matrix(x, y)?, config)
}

pub fn dtw(x: &FeatureSeries, y: &FeatureSeries) -> Result<AlignmentResult> {
    Ok(dp_align(&cost_matrix(x, y)?))
}

pub fn ddtw(
    x: &FeatureSeries,
    y: &FeatureSeries,
    config: &AlignmentConfig,
) -> Result<AlignmentResult> {
    align(
        x,
        y,
        &AlignmentConfig {
            method: Method::Ddtw,
            ..*config
        },
    )
}
