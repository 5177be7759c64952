use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{run_synthetic, BenchConfig, DetectorEntry, DetectorSpec};
use crate::error::{DriftlabError, Result};

/// Candidate values per parameter name; the grid is their product.
pub type ParamGrid = BTreeMap<String, Vec<f64>>;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridPoint {
    pub params: BTreeMap<String, f64>,
    pub tp: usize,
    pub fa: usize,
    pub mean_delay_samples: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TuneResult {
    pub best: DetectorEntry,
    pub best_params: BTreeMap<String, f64>,
    /// Every evaluated point in grid order.
    pub points: Vec<GridPoint>,
}

/// Grid search on an experimental stream: maximizes `TP - FA` summed over
/// the config's seeds, then prefers the smaller mean delay, then the earlier
/// grid point. `cfg.stream` is the experimental set; `cfg.detectors` is
/// ignored.
pub fn tune_detector(cfg: &BenchConfig, base: &DetectorEntry, grid: &ParamGrid) -> Result<TuneResult> {
    if grid.is_empty() || grid.values().any(Vec::is_empty) {
        return Err(DriftlabError::EmptyGrid);
    }
    let mut best: Option<(i64, f64, usize)> = None;
    let mut points = Vec::new();
    let mut entries = Vec::new();
    for (k, params) in product(grid).into_iter().enumerate() {
        let entry = with_params(base, &params)?;
        let mut run = cfg.clone();
        run.detectors = vec![entry.clone()];
        run.record_timing = false;
        let report = run_synthetic(&run)?;
        let d = &report.detectors[0];
        let score = d.tp as i64 - d.fa as i64;
        let delay = d.mean_delay_samples.unwrap_or(f64::INFINITY);
        let better = match best {
            None => true,
            Some((s, dl, _)) => score > s || (score == s && delay < dl),
        };
        if better {
            best = Some((score, delay, k));
        }
        points.push(GridPoint {
            params,
            tp: d.tp,
            fa: d.fa,
            mean_delay_samples: d.mean_delay_samples,
        });
        entries.push(entry);
    }
    let (_, _, k) = best.expect("grid is nonempty");
    Ok(TuneResult {
        best: entries.swap_remove(k),
        best_params: points[k].params.clone(),
        points,
    })
}

fn product(grid: &ParamGrid) -> Vec<BTreeMap<String, f64>> {
    let mut out = vec![BTreeMap::new()];
    for (name, values) in grid {
        out = out
            .into_iter()
            .flat_map(|p| {
                values.iter().map(move |&v| {
                    let mut q = p.clone();
                    q.insert(name.clone(), v);
                    q
                })
            })
            .collect();
    }
    out
}

fn as_count(name: &str, v: f64) -> Result<usize> {
    if v >= 1.0 && v.fract() == 0.0 {
        Ok(v as usize)
    } else {
        Err(DriftlabError::BadConfig(format!("`{name}` must be a positive integer, got {v}")))
    }
}

/// `base` with the named parameters overridden.
pub fn with_params(base: &DetectorEntry, params: &BTreeMap<String, f64>) -> Result<DetectorEntry> {
    let mut entry = base.clone();
    for (name, &v) in params {
        match &mut entry.spec {
            DetectorSpec::Baseline(b) => {
                b.params.insert(name.clone(), v);
            }
            DetectorSpec::Addm(a) => match name.as_str() {
                "window" => a.window = as_count(name, v)?,
                "min_gap" => a.min_gap = as_count(name, v)?,
                "p" => a.tar.p = as_count(name, v)?,
                "d" => a.tar.d = as_count(name, v)?,
                "bootstrap_reps" => a.tar.bootstrap_reps = as_count(name, v)?,
                "significance_level" => a.tar.significance_level = v,
                "min_regime_frac" => a.tar.min_regime_frac = v,
                _ => return Err(DriftlabError::BadConfig(format!("ADDM has no tunable `{name}`"))),
            },
            DetectorSpec::Periodic { period } if name == "period" => *period = as_count(name, v)?,
            _ => {
                return Err(DriftlabError::BadConfig(format!(
                    "{} has no tunable `{name}`",
                    base.id()
                )))
            }
        }
    }
    Ok(entry)
}
