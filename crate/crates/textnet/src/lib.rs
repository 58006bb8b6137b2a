//! File formats, orchestration, and reporting around `textnet-core`:
//! manifest-driven corpus ingestion, windowed measurement sweeps,
//! variability and classification reports, all reproducible byte-for-byte
//! from a single config.

#![forbid(unsafe_code)]

pub mod config;
pub mod corpus;
pub mod manifest;
pub mod pipeline;
pub mod reports;

use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: {message}")]
    Manifest { path: PathBuf, message: String },
    #[error("{path} row {row}: {message}")]
    ManifestRow { path: PathBuf, row: usize, message: String },
    #[error("config: {0}")]
    Config(String),
    #[error("{path}: {source}")]
    Csv { path: PathBuf, source: csv::Error },
    #[error("{path}: {message}")]
    Artifact { path: PathBuf, message: String },
    #[error(transparent)]
    Preprocess(#[from] textnet_core::preprocess::PreprocessError),
    #[error(transparent)]
    Sampling(#[from] textnet_core::sampling::SamplingError),
    #[error(transparent)]
    Network(#[from] textnet_core::network::NetworkError),
    #[error(transparent)]
    Measure(#[from] textnet_core::measures::MeasureError),
    #[error(transparent)]
    Feature(#[from] textnet_core::features::FeatureError),
    #[error(transparent)]
    Ml(#[from] textnet_core::ml::MlError),
}

impl PipelineError {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Self::Io { path: path.into(), source }
    }
}

pub type Result<T> = std::result::Result<T, PipelineError>;
