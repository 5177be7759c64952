use driftlab_core::adaptation::{ModelKind, OnlineModel, Predictor, Standardizer};
use driftlab_core::addm::LossKind;
use driftlab_core::streams::{generate, StreamRecord};

use super::{BenchConfig, LearnerSpec, StreamSource};
use crate::error::{DriftlabError, Result};
use crate::ingest::ingest_csv;

/// A stream made ready for monitoring: features standardized and regression
/// targets min-max squashed with statistics of the training part, and an
/// initial model trained on it.
#[derive(Debug, Clone)]
pub struct Prepared {
    pub records: Vec<StreamRecord>,
    pub classification: bool,
    /// Records `[0, n_train)` train the model, `[n_train, n_prefix)` give
    /// the validation errors, `[n_prefix, n)` are monitored.
    pub n_train: usize,
    pub n_prefix: usize,
    pub model: OnlineModel,
    pub loss_kind: LossKind,
    /// True change points inside the monitored part.
    pub change_points: Vec<usize>,
}

impl Prepared {
    pub fn loss_kind(&self) -> LossKind {
        self.loss_kind
    }

    /// Per-sample monitored loss, in `[0, 1]`.
    pub fn loss<P: Predictor + ?Sized>(&self, model: &P, r: &StreamRecord) -> f64 {
        sample_loss(self.loss_kind, model, r)
    }

    pub fn model_kind(&self) -> ModelKind {
        self.model.kind
    }

    pub fn monitored(&self) -> &[StreamRecord] {
        &self.records[self.n_prefix..]
    }

    pub fn validation(&self) -> &[StreamRecord] {
        &self.records[self.n_train..self.n_prefix]
    }
}

/// Squared error is capped at 1 so binary-error detectors accept it; the
/// squashed regression target and class probabilities rarely reach the cap.
fn sample_loss<P: Predictor + ?Sized>(kind: LossKind, model: &P, r: &StreamRecord) -> f64 {
    kind.loss(r.target, model.predict(&r.features)).min(1.0)
}

pub(crate) fn learning_rate(spec: &LearnerSpec, classification: bool) -> f64 {
    spec.learning_rate
        .unwrap_or(if classification { 0.1 } else { 0.01 })
}

/// Load or generate the stream for `seed` and train the initial model.
pub fn prepare(cfg: &BenchConfig, seed: u64) -> Result<Prepared> {
    let (mut records, classification, change_points) = match &cfg.stream {
        StreamSource::Synthetic(spec) => {
            let mut spec = spec.clone();
            spec.seed = seed;
            let (records, schedule) = generate(&spec)?;
            (records, spec.family.is_classification(), schedule.change_points)
        }
        StreamSource::Csv {
            path,
            schema,
            classification,
        } => (ingest_csv(path, schema)?, *classification, Vec::new()),
    };
    let n = records.len();
    let cap = (cfg.learner.prefix_cap * n as f64) as usize;
    let n_prefix = change_points.first().map_or(cap, |&c| c.min(cap));
    let n_train = (cfg.learner.train_fraction * n_prefix as f64) as usize;
    if n_train < 2 || n_prefix <= n_train || n_prefix >= n {
        return Err(DriftlabError::BadConfig(format!(
            "stream of {n} samples leaves no room for training ({n_train}) and validation ({})",
            n_prefix.saturating_sub(n_train)
        )));
    }

    let scaler = Standardizer::fit(&records[..n_train])?;
    let (lo, hi) = records[..n_train]
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), r| {
            (lo.min(r.target), hi.max(r.target))
        });
    let span = if hi > lo { hi - lo } else { 1.0 };
    for r in records.iter_mut() {
        *r = scaler.transform(r);
        if !classification {
            r.target = (r.target - lo) / span;
        }
    }
    if classification {
        if let Some(r) = records.iter().find(|r| r.target != 0.0 && r.target != 1.0) {
            return Err(DriftlabError::BadConfig(format!(
                "classification targets must be 0 or 1, found {} at row {}",
                r.target, r.index
            )));
        }
    }

    let kind = if classification {
        ModelKind::LogisticRegression
    } else {
        ModelKind::LinearRegression
    };
    let dim = records[0].features.len();
    let model = OnlineModel::new(kind, dim, learning_rate(&cfg.learner, classification)).train(
        &records[..n_train],
        cfg.learner.epochs,
        seed,
    )?;
    let change_points = change_points.into_iter().filter(|&c| c >= n_prefix).collect();
    let loss_kind = if classification {
        cfg.learner.classification_loss
    } else {
        LossKind::Squared
    };
    Ok(Prepared {
        records,
        classification,
        loss_kind,
        n_train,
        n_prefix,
        model,
        change_points,
    })
}
