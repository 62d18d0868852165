//! Run records.
//!
//! CSV columns, in order (frozen): `run_id, algorithm, generator, eps, dim,
//! metric, n, seed, alg_weight, mst_weight, greedy_weight, opt1d_weight,
//! max_stretch, stretch_bound, runtime_ms, status`. Missing baselines are
//! empty fields. The JSON file is an array with one object per record and the
//! same field names.

use crate::HarnessError;
use serde::{Deserialize, Serialize};
use std::io::{Read, Write};
use std::path::Path;

pub const CSV_HEADER: &str = "run_id,algorithm,generator,eps,dim,metric,n,seed,alg_weight,mst_weight,greedy_weight,opt1d_weight,max_stretch,stretch_bound,runtime_ms,status";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Status {
    #[serde(rename = "ok")]
    Ok,
    #[serde(rename = "FAILED")]
    Failed,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub run_id: String,
    pub algorithm: String,
    pub generator: String,
    pub eps: f64,
    pub dim: usize,
    pub metric: String,
    pub n: usize,
    pub seed: u64,
    pub alg_weight: f64,
    pub mst_weight: f64,
    pub greedy_weight: Option<f64>,
    pub opt1d_weight: Option<f64>,
    pub max_stretch: f64,
    pub stretch_bound: f64,
    pub runtime_ms: u64,
    pub status: Status,
}

pub fn write_csv(w: impl Write, recs: &[RunRecord]) -> Result<(), HarnessError> {
    let mut wr = csv::WriterBuilder::new().has_headers(false).from_writer(w);
    wr.write_record(CSV_HEADER.split(','))?;
    for r in recs {
        wr.serialize(r)?;
    }
    wr.flush()?;
    Ok(())
}

pub fn write_json(mut w: impl Write, recs: &[RunRecord]) -> Result<(), HarnessError> {
    serde_json::to_writer_pretty(&mut w, recs)?;
    writeln!(w)?;
    Ok(())
}

pub fn read_csv(r: impl Read) -> Result<Vec<RunRecord>, HarnessError> {
    csv::Reader::from_reader(r).deserialize().map(|r| r.map_err(HarnessError::from)).collect()
}

/// Reads a `.json` array or a CSV file, chosen by extension.
pub fn read_records(path: &Path) -> Result<Vec<RunRecord>, HarnessError> {
    let f = std::io::BufReader::new(std::fs::File::open(path)?);
    if path.extension().is_some_and(|e| e == "json") {
        Ok(serde_json::from_reader(f)?)
    } else {
        read_csv(f)
    }
}
