//! CSV result files and their JSON metadata sidecar.
//!
//! Numbers are written in shortest round-trip form, so reading a file back
//! reproduces every value exactly.

use std::fs::{self, File};
use std::path::{Path, PathBuf};

use serde::Serialize;

use super::{CdfResult, SweepPoint, SweepResult};
use crate::config::ExperimentConfig;
use crate::error::{Error, Result};
use crate::scenario::SystemParams;

pub const SWEEP_HEADER: [&str; 5] = [
    "d_r_m",
    "median_se_dl_opt",
    "median_se_dl_base",
    "median_se_ul_opt",
    "median_se_ul_base",
];

pub const CDF_HEADER: [&str; 3] = ["se_complex", "se_real", "se_none"];

/// Everything needed to reproduce a result file.
#[derive(Debug, Clone, Serialize)]
pub struct RunMetadata {
    pub artifact: &'static str,
    pub version: &'static str,
    pub kind: &'static str,
    pub trials: usize,
    pub seed: u64,
    pub config: Option<ExperimentConfig>,
    pub params: SystemParams,
}

impl RunMetadata {
    pub fn new(kind: &'static str, trials: usize, params: &SystemParams, config: Option<&ExperimentConfig>) -> Self {
        Self {
            artifact: env!("CARGO_PKG_NAME"),
            version: env!("CARGO_PKG_VERSION"),
            kind,
            trials,
            seed: params.seed,
            config: config.cloned(),
            params: params.clone(),
        }
    }

    /// `<csv path>.meta.json`
    pub fn sidecar_path(csv: &Path) -> PathBuf {
        let mut name = csv.as_os_str().to_owned();
        name.push(".meta.json");
        PathBuf::from(name)
    }

    fn write(&self, csv: &Path) -> Result<()> {
        let path = Self::sidecar_path(csv);
        let text = serde_json::to_string_pretty(self).map_err(|e| Error::Format {
            path: path.clone(),
            message: e.to_string(),
        })?;
        fs::write(&path, text + "\n").map_err(|source| Error::Io { path, source })
    }
}

fn csv_error(path: &Path, e: csv::Error) -> Error {
    match e.into_kind() {
        csv::ErrorKind::Io(source) => Error::Io {
            path: path.to_owned(),
            source,
        },
        other => Error::Format {
            path: path.to_owned(),
            message: format!("{other:?}"),
        },
    }
}

fn write_rows(path: &Path, header: &[&str], rows: impl Iterator<Item = Vec<f64>>) -> Result<()> {
    let file = File::create(path).map_err(|source| Error::Io {
        path: path.to_owned(),
        source,
    })?;
    let mut w = csv::Writer::from_writer(file);
    w.write_record(header).map_err(|e| csv_error(path, e))?;
    for row in rows {
        w.write_record(row.iter().map(|x| x.to_string()))
            .map_err(|e| csv_error(path, e))?;
    }
    w.flush().map_err(|source| Error::Io {
        path: path.to_owned(),
        source,
    })
}

pub fn write_sweep(result: &SweepResult, path: &Path, meta: &RunMetadata) -> Result<()> {
    let rows = result.points.iter().map(|p| {
        vec![
            p.d_r,
            p.median_se_dl_opt,
            p.median_se_dl_base,
            p.median_se_ul_opt,
            p.median_se_ul_base,
        ]
    });
    write_rows(path, &SWEEP_HEADER, rows)?;
    meta.write(path)
}

/// Row `i` holds the `i`-th smallest sample of each mode.
pub fn write_cdf(result: &CdfResult, path: &Path, meta: &RunMetadata) -> Result<()> {
    let rows = (0..result.se_complex.len()).map(|i| vec![result.se_complex[i], result.se_real[i], result.se_none[i]]);
    write_rows(path, &CDF_HEADER, rows)?;
    meta.write(path)
}

fn read_rows(path: &Path, header: &[&str]) -> Result<Vec<Vec<f64>>> {
    let mut r = csv::Reader::from_path(path).map_err(|e| csv_error(path, e))?;
    let got = r.headers().map_err(|e| csv_error(path, e))?.clone();
    if got.iter().ne(header.iter().copied()) {
        return Err(Error::Format {
            path: path.to_owned(),
            message: format!("unexpected header {:?}, want {:?}", got, header),
        });
    }
    r.records()
        .map(|rec| {
            let rec = rec.map_err(|e| csv_error(path, e))?;
            rec.iter()
                .map(|field| {
                    field.parse::<f64>().map_err(|e| Error::Format {
                        path: path.to_owned(),
                        message: format!("bad number {field:?}: {e}"),
                    })
                })
                .collect()
        })
        .collect()
}

/// Reads a sweep CSV back; `median_iterations` is not stored and comes back NaN.
pub fn read_sweep_csv(path: &Path) -> Result<Vec<SweepPoint>> {
    Ok(read_rows(path, &SWEEP_HEADER)?
        .into_iter()
        .map(|r| SweepPoint {
            d_r: r[0],
            median_se_dl_opt: r[1],
            median_se_dl_base: r[2],
            median_se_ul_opt: r[3],
            median_se_ul_base: r[4],
            median_iterations: f64::NAN,
        })
        .collect())
}

/// Reads a CDF CSV back as `(complex, real, none)` columns.
pub fn read_cdf_csv(path: &Path) -> Result<(Vec<f64>, Vec<f64>, Vec<f64>)> {
    let rows = read_rows(path, &CDF_HEADER)?;
    Ok((
        rows.iter().map(|r| r[0]).collect(),
        rows.iter().map(|r| r[1]).collect(),
        rows.iter().map(|r| r[2]).collect(),
    ))
}
