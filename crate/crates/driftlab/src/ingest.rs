//! CSV ingestion of labelled streams.

use std::io::Read;
use std::path::Path;

use driftlab_core::streams::StreamRecord;
use serde::{Deserialize, Serialize};

use crate::error::{DriftlabError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum Normalization {
    #[default]
    None,
    MinMax,
    ZScore,
}

/// Column mapping for [`ingest_csv`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CsvSchema {
    pub target_column: String,
    /// Feature columns in order; `None` takes every other column.
    #[serde(default)]
    pub feature_columns: Option<Vec<String>>,
    #[serde(default)]
    pub normalization: Normalization,
    /// Rows whose statistics define the normalization. `0` means all rows
    /// before the 20% mark.
    #[serde(default)]
    pub prefix: usize,
}

impl CsvSchema {
    pub fn new(target_column: &str) -> Self {
        Self {
            target_column: target_column.into(),
            feature_columns: None,
            normalization: Normalization::None,
            prefix: 0,
        }
    }
}

pub fn ingest_csv(path: &Path, schema: &CsvSchema) -> Result<Vec<StreamRecord>> {
    let file = std::fs::File::open(path).map_err(|e| DriftlabError::io(path, e))?;
    ingest_reader(file, schema)
}

/// Parse a headed CSV into records in file order, with `concept_id = -1`.
/// Rows in error messages count from 1 for the first data row.
pub fn ingest_reader<R: Read>(reader: R, schema: &CsvSchema) -> Result<Vec<StreamRecord>> {
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
    let headers = rdr.headers()?.clone();
    let position = |name: &str| {
        headers
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| DriftlabError::MissingColumn(name.into()))
    };
    let target = position(&schema.target_column)?;
    let features: Vec<usize> = match &schema.feature_columns {
        Some(cols) => cols.iter().map(|c| position(c)).collect::<Result<_>>()?,
        None => (0..headers.len()).filter(|&i| i != target).collect(),
    };

    let mut records = Vec::new();
    for (i, row) in rdr.records().enumerate() {
        let row = row?;
        let cell = |col: usize| -> Result<f64> {
            let raw = row.get(col).unwrap_or("");
            raw.parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| DriftlabError::Parse {
                    row: i + 1,
                    column: headers[col].to_string(),
                    message: format!("`{raw}` is not a finite number"),
                })
        };
        records.push(StreamRecord {
            features: features.iter().map(|&c| cell(c)).collect::<Result<_>>()?,
            target: cell(target)?,
            index: i,
            concept_id: -1,
        });
    }
    normalize(&mut records, schema.normalization, schema.prefix);
    Ok(records)
}

fn default_prefix(n: usize) -> usize {
    (n / 5).max(1)
}

/// Normalize features with statistics of the first `prefix` records only.
pub fn normalize(records: &mut [StreamRecord], how: Normalization, prefix: usize) {
    if records.is_empty() || how == Normalization::None {
        return;
    }
    let prefix = if prefix == 0 { default_prefix(records.len()) } else { prefix };
    let head = &records[..prefix.min(records.len())];
    let dim = head[0].features.len();
    let (shift, scale): (Vec<f64>, Vec<f64>) = (0..dim)
        .map(|j| {
            let col = head.iter().map(|r| r.features[j]);
            match how {
                Normalization::MinMax => {
                    let lo = col.clone().fold(f64::INFINITY, f64::min);
                    let hi = col.fold(f64::NEG_INFINITY, f64::max);
                    (lo, if hi > lo { hi - lo } else { 1.0 })
                }
                _ => {
                    let n = head.len() as f64;
                    let mean = col.clone().sum::<f64>() / n;
                    let var = col.map(|x| (x - mean) * (x - mean)).sum::<f64>() / n;
                    (mean, if var > 0.0 { var.sqrt() } else { 1.0 })
                }
            }
        })
        .unzip();
    for r in records {
        for ((x, s), c) in r.features.iter_mut().zip(&shift).zip(&scale) {
            *x = (*x - s) / c;
        }
    }
}
