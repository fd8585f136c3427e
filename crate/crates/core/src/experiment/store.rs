use std::fs::{File, OpenOptions};
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::SweepResult;
use crate::error::{Error, Result};

const HEADER: [&str; 9] = [
    "dataset",
    "strategy",
    "budget",
    "seed",
    "rho",
    "D",
    "raw_mean_distance",
    "removal_set",
    "fingerprint",
];

#[derive(Serialize, Deserialize)]
struct Row {
    dataset: String,
    strategy: String,
    budget: usize,
    seed: u64,
    rho: f64,
    #[serde(rename = "D")]
    d: f64,
    raw_mean_distance: f64,
    removal_set: String,
    fingerprint: String,
}

impl From<&SweepResult> for Row {
    fn from(r: &SweepResult) -> Self {
        Row {
            dataset: r.dataset.clone(),
            strategy: r.strategy.clone(),
            budget: r.budget,
            seed: r.seed,
            rho: r.rho,
            d: r.d,
            raw_mean_distance: r.raw_mean_distance,
            removal_set: r.removal_set.join(";"),
            fingerprint: r.fingerprint.clone(),
        }
    }
}

impl From<Row> for SweepResult {
    fn from(r: Row) -> Self {
        SweepResult {
            dataset: r.dataset,
            strategy: r.strategy,
            budget: r.budget,
            seed: r.seed,
            rho: r.rho,
            d: r.d,
            raw_mean_distance: r.raw_mean_distance,
            removal_set: if r.removal_set.is_empty() {
                Vec::new()
            } else {
                r.removal_set.split(';').map(str::to_string).collect()
            },
            fingerprint: r.fingerprint,
        }
    }
}

/// Writes records, header included, as results CSV.
pub fn write_results<W: Write>(records: &[SweepResult], out: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    w.write_record(HEADER)?;
    for r in records {
        w.serialize(Row::from(r))?;
    }
    w.flush().map_err(|e| Error::io("<results>", e))?;
    Ok(())
}

/// Parses results CSV, reporting the line of the first bad row.
pub fn read_results<R: Read>(input: R, origin: &Path) -> Result<Vec<SweepResult>> {
    let mut rdr = csv::Reader::from_reader(input);
    let headers = rdr.headers()?.clone();
    if headers.iter().ne(HEADER.iter().copied()) {
        return Err(Error::parse(origin, 1, "not a results file (unexpected header)"));
    }
    let mut out = Vec::new();
    for (i, row) in rdr.deserialize::<Row>().enumerate() {
        let row = row.map_err(|e| Error::parse(origin, i + 2, e.to_string()))?;
        out.push(row.into());
    }
    Ok(out)
}

/// Append-only results file. Records already on disk are loaded on open so
/// an interrupted campaign can resume where it stopped.
#[derive(Debug)]
pub struct ResultStore {
    path: PathBuf,
    records: Vec<SweepResult>,
}

impl ResultStore {
    pub fn open(path: impl Into<PathBuf>) -> Result<Self> {
        let path = path.into();
        let records = if path.exists() {
            let f = File::open(&path).map_err(|e| Error::io(&path, e))?;
            read_results(f, &path)?
        } else {
            Vec::new()
        };
        Ok(Self { path, records })
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn records(&self) -> &[SweepResult] {
        &self.records
    }

    pub fn append(&mut self, new: &[SweepResult]) -> Result<()> {
        if new.is_empty() {
            return Ok(());
        }
        let fresh = !self.path.exists();
        let file = OpenOptions::new()
            .create(true)
            .append(true)
            .open(&self.path)
            .map_err(|e| Error::io(&self.path, e))?;
        let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(file);
        if fresh {
            w.write_record(HEADER)?;
        }
        for r in new {
            w.serialize(Row::from(r))?;
        }
        w.flush().map_err(|e| Error::io(&self.path, e))?;
        self.records.extend_from_slice(new);
        Ok(())
    }
}
