//! Stream, manifest and event files.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use driftlab_core::addm::{DriftEvent, EventRecord};
use driftlab_core::streams::{DriftSchedule, StreamRecord};

use crate::error::{DriftlabError, Result};

fn create(path: &Path) -> Result<BufWriter<File>> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(|e| DriftlabError::io(dir, e))?;
    }
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| DriftlabError::io(path, e))
}

/// CSV with header `f0..f{k-1},target,concept_id`.
pub fn write_stream_csv<W: Write>(out: W, records: &[StreamRecord]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let dim = records.first().map_or(0, |r| r.features.len());
    let mut header: Vec<String> = (0..dim).map(|j| format!("f{j}")).collect();
    header.push("target".into());
    header.push("concept_id".into());
    w.write_record(&header)?;
    for r in records {
        let mut row: Vec<String> = r.features.iter().map(f64::to_string).collect();
        row.push(r.target.to_string());
        row.push(r.concept_id.to_string());
        w.write_record(&row)?;
    }
    w.flush().map_err(|e| DriftlabError::io("<stream>", e))
}

pub fn save_stream(path: &Path, records: &[StreamRecord]) -> Result<()> {
    write_stream_csv(create(path)?, records)
}

/// Read a file written by [`write_stream_csv`].
pub fn load_stream(path: &Path) -> Result<Vec<StreamRecord>> {
    let file = File::open(path).map_err(|e| DriftlabError::io(path, e))?;
    let mut rdr = csv::Reader::from_reader(file);
    let headers = rdr.headers()?.clone();
    let concept = headers.iter().position(|h| h == "concept_id");
    let target = headers
        .iter()
        .position(|h| h == "target")
        .ok_or_else(|| DriftlabError::MissingColumn("target".into()))?;
    let features: Vec<usize> = (0..headers.len())
        .filter(|&i| i != target && Some(i) != concept)
        .collect();
    let mut out = Vec::new();
    for (i, row) in rdr.records().enumerate() {
        let row = row?;
        let num = |col: usize| -> Result<f64> {
            row.get(col)
                .and_then(|v| v.parse::<f64>().ok())
                .filter(|v| v.is_finite())
                .ok_or_else(|| DriftlabError::Parse {
                    row: i + 1,
                    column: headers[col].to_string(),
                    message: "not a finite number".into(),
                })
        };
        out.push(StreamRecord {
            features: features.iter().map(|&c| num(c)).collect::<Result<_>>()?,
            target: num(target)?,
            index: i,
            concept_id: match concept {
                Some(c) => num(c)? as i64,
                None => -1,
            },
        });
    }
    Ok(out)
}

pub fn save_manifest(path: &Path, schedule: &DriftSchedule) -> Result<()> {
    let mut w = create(path)?;
    serde_json::to_writer_pretty(&mut w, schedule)?;
    writeln!(w).map_err(|e| DriftlabError::io(path, e))
}

pub fn load_manifest(path: &Path) -> Result<DriftSchedule> {
    let text = std::fs::read_to_string(path).map_err(|e| DriftlabError::io(path, e))?;
    Ok(serde_json::from_str(&text)?)
}

/// One JSON object per line.
pub fn write_events<W: Write>(mut out: W, events: &[DriftEvent]) -> Result<()> {
    for e in events {
        serde_json::to_writer(&mut out, &EventRecord::from(e))?;
        writeln!(out).map_err(|e| DriftlabError::io("<events>", e))?;
    }
    Ok(())
}

pub fn save_events(path: &Path, events: &[DriftEvent]) -> Result<()> {
    let mut w = create(path)?;
    write_events(&mut w, events)?;
    w.flush().map_err(|e| DriftlabError::io(path, e))
}

pub(crate) fn write_text(path: &Path, text: &str) -> Result<()> {
    let mut w = create(path)?;
    w.write_all(text.as_bytes())
        .and_then(|_| w.flush())
        .map_err(|e| DriftlabError::io(path, e))
}
