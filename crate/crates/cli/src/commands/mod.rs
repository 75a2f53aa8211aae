pub mod align;
pub mod benchmark;
pub mod build;
pub mod classify;
pub mod eval;
pub mod mask;
pub mod synth;
pub mod validate;

use clap::ValueEnum;
use std::path::Path;
use vidalign::series::FeatureSeries;

/// Encoding of written series files.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum SeriesFormat {
    #[default]
    Bin,
    Csv,
}

impl SeriesFormat {
    pub fn extension(self) -> &'static str {
        match self {
            SeriesFormat::Bin => "series",
            SeriesFormat::Csv => "csv",
        }
    }

    pub fn write(self, path: &Path, series: &FeatureSeries) -> anyhow::Result<()> {
        crate::support::emit(path, |buf| match self {
            SeriesFormat::Bin => vidalign::io::write_series_bin(buf, series),
            SeriesFormat::Csv => vidalign::io::write_series_csv(buf, series),
        })
    }
}

pub fn read_series(path: &Path) -> anyhow::Result<FeatureSeries> {
    crate::support::parse_file(path, |b| vidalign::io::read_series(b))
}

pub fn read_annotations(path: &Path) -> anyhow::Result<Vec<vidalign::eval::PhaseAnnotation>> {
    crate::support::parse_file(path, |b| vidalign::io::read_annotations(b))
}
