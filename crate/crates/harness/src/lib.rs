//! Experiment plumbing around the spanner algorithms: a reproducible point
//! generator, `key = value` configs, CSV/JSON run records, the runner that
//! certifies stretch at checkpoints, and ratio reports.

pub mod config;
pub mod gen;
pub mod record;
pub mod report;
pub mod run;

pub use config::{Algorithm, ExperimentConfig, Generator};
pub use gen::{uniform_points, Lcg};
pub use record::{read_records, write_csv, write_json, RunRecord, Status, CSV_HEADER};
pub use report::{report, write_report, Fit, Report, ReportRow};
pub use run::{checkpoints, run_experiment, run_one};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("config line {line}: {msg}")]
    Config { line: usize, msg: String },
    #[error("invalid parameter: {0}")]
    Param(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Geom(#[from] spanlab_geometry::GeomError),
    #[error(transparent)]
    Spanner(#[from] spanlab_spanners::SpannerError),
    #[error(transparent)]
    Adversary(#[from] spanlab_adversaries::AdversaryError),
    #[error(transparent)]
    Oracle(#[from] spanlab_oracle::OracleError),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

/// Output directory: `SPANLAB_OUT` wins over `requested`, which wins over
/// `spanlab-out`.
pub fn output_dir(requested: Option<&std::path::Path>) -> std::path::PathBuf {
    match std::env::var_os("SPANLAB_OUT") {
        Some(v) if !v.is_empty() => v.into(),
        _ => requested.map_or_else(|| "spanlab-out".into(), |p| p.to_path_buf()),
    }
}
