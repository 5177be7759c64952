use driftlab_core::addm::EventRecord;
use driftlab_core::DriftDetector;
use rayon::prelude::*;

use super::detectors::{Monitor, RunContext};
use super::matching::match_events;
use super::prepare::{prepare, Prepared};
use super::{pool, BenchConfig, BenchReport, DetectorEntry, DetectorReport, Protocol, SeedRun, StreamSource};
use crate::error::{DriftlabError, Result};
use crate::timing::Timed;

/// Detection accuracy on a synthetic stream. For each seed the stream is
/// regenerated, the learner trained on the drift-free prefix, and every
/// detector fed the per-sample losses of the monitored part. Alarms are
/// matched by the index at which they fire.
pub fn run_synthetic(cfg: &BenchConfig) -> Result<BenchReport> {
    cfg.validate()?;
    if !matches!(cfg.stream, StreamSource::Synthetic(_)) {
        return Err(DriftlabError::BadConfig(
            "the synthetic protocol needs a generated stream with known drifts".into(),
        ));
    }
    let per_seed: Vec<(usize, Vec<SeedRun>)> = pool()?.install(|| {
        cfg.seeds
            .par_iter()
            .map(|&seed| run_seed(cfg, seed))
            .collect::<Result<_>>()
    })?;
    let true_drifts = per_seed.first().map_or(0, |(n, _)| *n);
    let detectors = cfg
        .detectors
        .iter()
        .enumerate()
        .map(|(k, entry)| {
            let runs = per_seed.iter().map(|(_, runs)| runs[k].clone()).collect();
            DetectorReport::from_runs(entry.id(), runs)
        })
        .collect();
    Ok(BenchReport {
        protocol: Protocol::Synthetic,
        stream: cfg.stream_name(),
        true_drifts,
        seeds: cfg.seeds.clone(),
        match_tolerance: cfg.match_tolerance,
        detectors,
    })
}

fn run_seed(cfg: &BenchConfig, seed: u64) -> Result<(usize, Vec<SeedRun>)> {
    let prep = prepare(cfg, seed)?;
    let losses: Vec<f64> = prep
        .records
        .iter()
        .map(|r| prep.loss(&prep.model, r))
        .collect();
    let runs = cfg
        .detectors
        .iter()
        .map(|entry| run_detector(cfg, entry, &prep, &losses, seed))
        .collect::<Result<_>>()?;
    Ok((prep.change_points.len(), runs))
}

fn run_detector(
    cfg: &BenchConfig,
    entry: &DetectorEntry,
    prep: &Prepared,
    losses: &[f64],
    seed: u64,
) -> Result<SeedRun> {
    let ctx = RunContext {
        seed,
        validation_errors: &losses[prep.n_train..prep.n_prefix],
        change_points: &prep.change_points,
        loss_kind: prep.loss_kind(),
    };
    let mut det = Timed::new(Monitor::build(entry, &ctx)?);
    let mut events = Vec::new();
    for t in prep.n_prefix..prep.records.len() {
        if let Some(mut e) = det.observe(prep.records[t].index, losses[t])? {
            e.detector_id = entry.id();
            if !cfg.record_timing {
                e.compute_time = 0.0;
            }
            events.push(e);
        }
    }
    let alarms: Vec<usize> = events.iter().map(|e| e.detected_at_index).collect();
    let m = match_events(&alarms, &prep.change_points, cfg.match_tolerance);
    Ok(SeedRun {
        seed,
        true_drifts: prep.change_points.clone(),
        events: events.iter().map(EventRecord::from).collect(),
        tp: m.tp,
        fa: m.fa,
        delays: m.delays,
        compute_seconds: if cfg.record_timing { det.total_seconds() } else { 0.0 },
        loss: None,
        nb_retrain: None,
    })
}
