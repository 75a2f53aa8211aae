//! Unsupervised video alignment toolkit.
//!
//! A video of a human action becomes a multivariate time series: per-frame
//! box and pose features of the main subject, concatenated with a 64-value
//! global embedding, smoothed and z-normalized ([`series`]). Pairs of series
//! are aligned with dynamic time warping, optionally penalizing cells far from
//! the table diagonal ([`align`]), and alignments are scored against phase
//! annotations ([`eval`]). [`synth`] generates labelled synthetic data for
//! benchmarks.

pub mod align;
pub mod error;
pub mod eval;
pub mod features;
pub mod io;
pub mod matrix;
pub mod rng;
pub mod series;
pub mod synth;

pub use error::{Error, Result};
pub use matrix::Matrix;
