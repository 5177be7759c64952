use driftlab_core::adaptation::{adapt_on_drift, AdaptConfig, Deployed, OnlineModel};
use driftlab_core::addm::{DriftEvent, EventRecord};
use driftlab_core::{DriftDetector, ErrorSeries};
use rayon::prelude::*;

use super::detectors::{Monitor, RunContext};
use super::matching::match_events;
use super::prepare::{learning_rate, prepare, Prepared};
use super::{pool, BenchConfig, BenchReport, DetectorEntry, DetectorReport, Protocol, RetrainMode, SeedRun};
use crate::error::Result;
use crate::timing::Timed;

/// Retrain-on-detection protocol. The deployed model predicts every
/// monitored sample; each detection schedules a retrain on the samples that
/// follow the drift (the estimated change point for ADDM, the alarm for the
/// others) once `adapt.min_recent` of them are available. After a retrain
/// the detector restarts on the new model's errors, and the next
/// `eval_window` losses enter the reported loss. Without detections the
/// loss is the mean over the whole monitored stream.
pub fn run_loss_protocol(cfg: &BenchConfig) -> Result<BenchReport> {
    cfg.validate()?;
    let per_seed: Vec<(usize, Vec<SeedRun>)> = pool()?.install(|| {
        cfg.seeds
            .par_iter()
            .map(|&seed| {
                let prep = prepare(cfg, seed)?;
                let runs = cfg
                    .detectors
                    .iter()
                    .map(|e| run_detector(cfg, e, &prep, seed))
                    .collect::<Result<Vec<_>>>()?;
                Ok((prep.change_points.len(), runs))
            })
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
        protocol: Protocol::Loss,
        stream: cfg.stream_name(),
        true_drifts,
        seeds: cfg.seeds.clone(),
        match_tolerance: cfg.match_tolerance,
        detectors,
    })
}

fn run_detector(cfg: &BenchConfig, entry: &DetectorEntry, prep: &Prepared, seed: u64) -> Result<SeedRun> {
    // New models train like the initial one in both retrain modes, so the
    // modes differ only in aggregation.
    let adapt = AdaptConfig {
        seed,
        epochs: cfg.learner.epochs,
        learning_rate: learning_rate(&cfg.learner, prep.classification),
        ..cfg.adapt.clone()
    };
    let min_recent = adapt.min_recent.max(1);
    let mut deployed = Deployed::Single(prep.model.clone());
    let validation: Vec<f64> = prep
        .validation()
        .iter()
        .map(|r| prep.loss(&prep.model, r))
        .collect();
    let ctx = RunContext {
        seed,
        validation_errors: &validation,
        change_points: &prep.change_points,
        loss_kind: prep.loss_kind(),
    };
    let mut det = Timed::new(Monitor::build(entry, &ctx)?);

    let start = prep.n_prefix;
    let records = &prep.records;
    // Losses of the deployed model, by position in `records`.
    let mut losses = vec![0.0; records.len()];
    let mut events: Vec<DriftEvent> = Vec::new();
    let mut pending: Option<(usize, DriftEvent)> = None;
    let mut eval_end = 0usize;
    let (mut eval_sum, mut eval_n) = (0.0, 0usize);
    let mut total = 0.0;

    for t in start..records.len() {
        let loss = prep.loss(&deployed, &records[t]);
        losses[t] = loss;
        total += loss;
        if t < eval_end {
            eval_sum += loss;
            eval_n += 1;
        }
        if let Some(mut e) = det.observe(records[t].index, loss)? {
            e.detector_id = entry.id();
            if !cfg.record_timing {
                e.compute_time = 0.0;
            }
            let from = match entry.spec {
                super::DetectorSpec::Addm(_) => e.stream_index,
                _ => e.detected_at_index + 1,
            };
            pending = Some((from.max(start), e.clone()));
            events.push(e);
        }
        let Some((from, event)) = pending.as_ref() else {
            continue;
        };
        if t + 1 < from + min_recent {
            continue;
        }
        let recent = &records[*from..=t];
        let new_model = match entry.retrain_mode() {
            RetrainMode::Aggregate => {
                let n_new = recent.len();
                let old_lo = from.saturating_sub(n_new).max(prep.n_train);
                let old_errors: Vec<f64> = if old_lo < start {
                    // Reach back into the validation part with the deployed
                    // model's errors there.
                    (old_lo..*from)
                        .map(|i| prep.loss(&deployed, &records[i]))
                        .collect()
                } else {
                    losses[old_lo..*from].to_vec()
                };
                let new_errors = &losses[*from..=t];
                let mut ev = event.clone();
                ev.stream_index = records[*from].index;
                match adapt_on_drift(&deployed, &ev, recent, &old_errors, new_errors, &adapt) {
                    Ok(ens) => Deployed::Ensemble(ens),
                    // Both error segments at zero: nothing to weigh, keep
                    // the fresh model.
                    Err(driftlab_core::Error::DegenerateZero) => Deployed::Single(scratch(prep, &adapt, recent)?),
                    Err(e) => return Err(e.into()),
                }
            }
            RetrainMode::Scratch => Deployed::Single(scratch(prep, &adapt, recent)?),
        };
        deployed = new_model;
        pending = None;
        eval_end = t + 1 + cfg.eval_window;

        let fresh: Vec<f64> = recent.iter().map(|r| prep.loss(&deployed, r)).collect();
        match det.inner_mut() {
            Monitor::Addm(a) => a.reset_reference(&ErrorSeries::from_slice(&fresh)?)?,
            other => {
                let ctx = RunContext {
                    validation_errors: &fresh,
                    ..ctx.clone()
                };
                *other = Monitor::build(entry, &ctx)?;
            }
        }
    }

    let monitored = records.len() - start;
    let loss = if events.is_empty() || eval_n == 0 {
        total / monitored as f64
    } else {
        eval_sum / eval_n as f64
    };
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
        loss: Some(loss),
        nb_retrain: Some(events.len()),
    })
}

fn scratch(prep: &Prepared, adapt: &AdaptConfig, recent: &[driftlab_core::streams::StreamRecord]) -> Result<OnlineModel> {
    Ok(OnlineModel::new(prep.model_kind(), prep.model.dim(), adapt.learning_rate).train(recent, adapt.epochs, adapt.seed)?)
}
