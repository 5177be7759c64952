use std::path::Path;

use driftlab_core::addm::{AddmConfig, AddmDetector, DriftEvent};
use driftlab_core::baselines::make_baseline;
use driftlab_core::{DriftDetector, ErrorSeries};

use crate::bench::{DetectorEntry, DetectorSpec, Monitor, NeverFire, PeriodicDetector};
use crate::error::{DriftlabError, Result};
use crate::timing::Timed;

/// Column read when none is named.
pub const DEFAULT_LOSS_COLUMN: &str = "loss";

/// Read one numeric column of a headed CSV. Without a name, a `loss`
/// column is used, or the only column of a one-column file.
pub fn read_loss_column(path: &Path, column: Option<&str>) -> Result<Vec<f64>> {
    let file = std::fs::File::open(path).map_err(|e| DriftlabError::io(path, e))?;
    let mut reader = csv::Reader::from_reader(file);
    let headers = reader.headers()?.clone();
    let name = column.unwrap_or(DEFAULT_LOSS_COLUMN);
    let col = match headers.iter().position(|h| h.trim() == name) {
        Some(c) => c,
        None if column.is_none() && headers.len() == 1 => 0,
        None => return Err(DriftlabError::MissingColumn(name.into())),
    };
    let mut out = Vec::new();
    for (k, row) in reader.records().enumerate() {
        let row = row?;
        let cell = row.get(col).unwrap_or("").trim();
        let v: f64 = cell.parse().map_err(|_| DriftlabError::Parse {
            row: k + 1,
            column: headers[col].to_string(),
            message: format!("`{cell}` is not a number"),
        })?;
        if !v.is_finite() {
            return Err(DriftlabError::Parse {
                row: k + 1,
                column: headers[col].to_string(),
                message: "value is not finite".into(),
            });
        }
        out.push(v);
    }
    Ok(out)
}

/// Run one detector over a loss series. The first `n_reference` losses are
/// ADDM's reference errors; every detector observes the rest, indexed by
/// their position in `losses`. Events carry measured compute time.
pub fn detect_series(entry: &DetectorEntry, losses: &[f64], n_reference: usize) -> Result<Vec<DriftEvent>> {
    if n_reference >= losses.len() {
        return Err(DriftlabError::BadConfig(format!(
            "{} reference samples leave nothing to monitor in a series of {}",
            n_reference,
            losses.len()
        )));
    }
    let monitor = match &entry.spec {
        DetectorSpec::Addm(cfg) => {
            let reference = ErrorSeries::from_slice(&losses[..n_reference])?;
            Monitor::Addm(AddmDetector::new(&reference, cfg.clone())?)
        }
        DetectorSpec::Baseline(cfg) => Monitor::Baseline(make_baseline(cfg)?),
        DetectorSpec::Never => Monitor::Never(NeverFire),
        DetectorSpec::Periodic { period } => Monitor::Periodic(PeriodicDetector::new(*period)),
        DetectorSpec::Oracle => {
            return Err(DriftlabError::BadConfig(
                "the oracle needs a drift manifest and only runs inside the bench".into(),
            ))
        }
    };
    let id = entry.id();
    let mut det = Timed::new(monitor);
    let mut events = Vec::new();
    for (i, &v) in losses.iter().enumerate().skip(n_reference) {
        if let Some(mut e) = det.observe(i, v)? {
            e.detector_id = id.clone();
            events.push(e);
        }
    }
    Ok(events)
}

/// Reference length used when none is given: one ADDM window, or none for
/// detectors that keep no reference.
pub fn default_reference_len(entry: &DetectorEntry) -> usize {
    match &entry.spec {
        DetectorSpec::Addm(AddmConfig { window, .. }) => *window,
        _ => 0,
    }
}
