use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("no frame has a {0}")]
    AllMissing(&'static str),

    #[error("degenerate box at frame {frame}: width {width}, height {height}")]
    DegenerateBox {
        frame: usize,
        width: f64,
        height: f64,
    },

    #[error("sequence too short: length {len}, need at least {min}")]
    LengthTooShort { len: usize, min: usize },

    #[error("box does not overlap the {width}x{height} frame")]
    EmptyIntersection { width: usize, height: usize },

    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("moving-average window must be odd and >= 1, got {0}")]
    BadWindow(usize),

    #[error("feature width mismatch: {left} vs {right}")]
    DimMismatch { left: usize, right: usize },

    #[error("phase count mismatch: {a} vs {b}")]
    PhaseCountMismatch { a: usize, b: usize },

    #[error("invalid phase annotation: {0}")]
    InvalidAnnotation(String),

    #[error("ground-truth anchors not strictly increasing: {prev:?} -> {next:?}")]
    NonMonotoneAnchors { prev: (f64, f64), next: (f64, f64) },

    #[error("path endpoints do not match the {n}x{k} table")]
    EndpointMismatch { n: usize, k: usize },

    #[error("invalid warp path: {0}")]
    InvalidPath(String),

    #[error("training set is empty")]
    EmptyTrainSet,

    #[error("neighbour count k={k} invalid for {train} training frames")]
    BadNeighbourCount { k: usize, train: usize },

    #[error("{videos} videos is too few for {folds} folds")]
    TooFewVideos { videos: usize, folds: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("line {line}: {message}")]
    Schema { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn schema(line: usize, message: impl Into<String>) -> Self {
        Error::Schema {
            line,
            message: message.into(),
        }
    }

    /// True for errors caused by malformed or inconsistent input rather than by
    /// the computation itself.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::Schema { .. }
                | Error::Io(_)
                | Error::Json(_)
                | Error::InvalidAnnotation(_)
                | Error::PhaseCountMismatch { .. }
                | Error::LengthMismatch { .. }
                | Error::DimMismatch { .. }
                | Error::AllMissing(_)
                | Error::DegenerateBox { .. }
                | Error::EmptyIntersection { .. }
                | Error::InvalidParameter(_)
                | Error::BadWindow(_)
                | Error::EndpointMismatch { .. }
                | Error::InvalidPath(_)
                | Error::TooFewVideos { .. }
                | Error::EmptyTrainSet
                | Error::BadNeighbourCount { .. }
                | Error::LengthTooShort { .. }
        )
    }
}
