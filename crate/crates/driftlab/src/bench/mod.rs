//! Benchmark harness: detection accuracy on synthetic streams and the
//! retrain-on-detection loss protocol.

mod detectors;
mod loss;
mod matching;
mod prepare;
mod report;
mod synthetic;
mod tune;

use std::path::PathBuf;

use driftlab_core::adaptation::AdaptConfig;
use driftlab_core::addm::{AddmConfig, EventRecord, LossKind};
use driftlab_core::baselines::{BaselineConfig, BaselineKind};
use driftlab_core::streams::{Family, GeneratorSpec};
use serde::{Deserialize, Serialize};

use crate::error::{DriftlabError, Result};
use crate::ingest::CsvSchema;

pub use detectors::{Monitor, NeverFire, OracleDetector, PeriodicDetector};
pub use loss::run_loss_protocol;
pub use matching::{match_events, Matching};
pub use prepare::{prepare, Prepared};
pub use report::{emit_report, render_csv, render_plotdata, ReportFormat};
pub use synthetic::run_synthetic;
pub use tune::{tune_detector, with_params, GridPoint, ParamGrid, TuneResult};

/// What a detector is.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum DetectorSpec {
    /// The threshold-autoregressive detector. The bench sets `loss_kind`
    /// from the stream and `seed` from the run seed.
    Addm(AddmConfig),
    /// A baseline. The bench sets `seed` from the run seed.
    Baseline(BaselineConfig),
    /// Fires exactly at every true change point.
    Oracle,
    Never,
    /// Fires on every `period`-th observed sample.
    Periodic { period: usize },
}

/// Model update after a detection in the loss protocol.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RetrainMode {
    /// Train a new model on recent data and deploy it alone.
    Scratch,
    /// Train a new model and deploy its severity-weighted aggregate with
    /// the current one.
    Aggregate,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DetectorEntry {
    /// Report label; defaults to the detector's id.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub retrain: Option<RetrainMode>,
    #[serde(flatten)]
    pub spec: DetectorSpec,
}

impl DetectorEntry {
    pub fn new(spec: DetectorSpec) -> Self {
        Self {
            label: None,
            retrain: None,
            spec,
        }
    }

    /// Parse a detector id: `ADDM` with defaults, a baseline id with its
    /// typical parameters, `ORACLE`, `NEVER` or `EVERY_<period>`.
    pub fn from_id(id: &str) -> Result<Self> {
        let spec = if id.eq_ignore_ascii_case(driftlab_core::addm::ADDM_ID) {
            DetectorSpec::Addm(AddmConfig::default())
        } else if let Some(kind) = BaselineKind::from_id(id) {
            DetectorSpec::Baseline(BaselineConfig::typical(kind))
        } else if id.eq_ignore_ascii_case("ORACLE") {
            DetectorSpec::Oracle
        } else if id.eq_ignore_ascii_case("NEVER") {
            DetectorSpec::Never
        } else if let Some(p) = id.strip_prefix("EVERY_").and_then(|p| p.parse().ok()) {
            DetectorSpec::Periodic { period: p }
        } else {
            return Err(DriftlabError::BadConfig(format!("unknown detector `{id}`")));
        };
        Ok(Self::new(spec))
    }

    pub fn labelled(mut self, label: &str) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn id(&self) -> String {
        if let Some(l) = &self.label {
            return l.clone();
        }
        match &self.spec {
            DetectorSpec::Addm(_) => driftlab_core::addm::ADDM_ID.into(),
            DetectorSpec::Baseline(b) => b.kind.id().into(),
            DetectorSpec::Oracle => "ORACLE".into(),
            DetectorSpec::Never => "NEVER".into(),
            DetectorSpec::Periodic { period } => format!("EVERY_{period}"),
        }
    }

    /// ADDM aggregates by default; everything else retrains from scratch.
    pub fn retrain_mode(&self) -> RetrainMode {
        self.retrain.unwrap_or(match self.spec {
            DetectorSpec::Addm(_) => RetrainMode::Aggregate,
            _ => RetrainMode::Scratch,
        })
    }
}

/// Where the stream comes from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StreamSource {
    /// Regenerated per run with the run seed.
    Synthetic(GeneratorSpec),
    Csv {
        path: PathBuf,
        schema: CsvSchema,
        classification: bool,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct LearnerSpec {
    pub epochs: usize,
    /// `None` picks 0.01 for regression and 0.1 for classification.
    pub learning_rate: Option<f64>,
    /// Share of the drift-free prefix used for training; the rest gives the
    /// validation errors.
    pub train_fraction: f64,
    /// Upper bound on the prefix as a share of the stream.
    pub prefix_cap: f64,
    /// Monitored loss for classification streams: `Squared` on the predicted
    /// probability or `ZeroOne`. Regression always uses squared error.
    pub classification_loss: LossKind,
}

impl Default for LearnerSpec {
    fn default() -> Self {
        Self {
            epochs: 20,
            learning_rate: None,
            train_fraction: 0.75,
            prefix_cap: 0.2,
            classification_loss: LossKind::Squared,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchConfig {
    pub detectors: Vec<DetectorEntry>,
    pub stream: StreamSource,
    #[serde(default)]
    pub learner: LearnerSpec,
    #[serde(default = "default_tolerance")]
    pub match_tolerance: usize,
    #[serde(default = "default_tolerance")]
    pub eval_window: usize,
    pub seeds: Vec<u64>,
    #[serde(default)]
    pub output_dir: Option<PathBuf>,
    /// Retraining settings of the loss protocol: `combine_mode` and
    /// `min_recent` apply; new models take epochs and learning rate from
    /// `learner`.
    #[serde(default)]
    pub adapt: AdaptConfig,
    /// When false, compute times are reported as zero so that reports are
    /// byte-for-byte reproducible.
    #[serde(default = "default_true")]
    pub record_timing: bool,
}

fn default_tolerance() -> usize {
    500
}

fn default_true() -> bool {
    true
}

impl BenchConfig {
    pub fn new(stream: StreamSource, detectors: Vec<DetectorEntry>, seeds: Vec<u64>) -> Self {
        Self {
            detectors,
            stream,
            learner: LearnerSpec::default(),
            match_tolerance: default_tolerance(),
            eval_window: default_tolerance(),
            seeds,
            output_dir: None,
            adapt: AdaptConfig::default(),
            record_timing: true,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(DriftlabError::BadConfig(m.into()));
        if self.match_tolerance == 0 {
            return bad("match_tolerance must be positive");
        }
        if self.eval_window == 0 {
            return bad("eval_window must be positive");
        }
        if self.seeds.is_empty() {
            return bad("seeds must not be empty");
        }
        let l = &self.learner;
        if !(l.train_fraction > 0.0 && l.train_fraction < 1.0) {
            return bad("learner.train_fraction must lie in (0, 1)");
        }
        if !(l.prefix_cap > 0.0 && l.prefix_cap < 1.0) {
            return bad("learner.prefix_cap must lie in (0, 1)");
        }
        if l.learning_rate.is_some_and(|r| !(r > 0.0 && r.is_finite())) {
            return bad("learner.learning_rate must be positive");
        }
        if l.classification_loss == LossKind::CrossEntropy {
            return bad("learner.classification_loss must be bounded: squared or zero_one");
        }
        for d in &self.detectors {
            if let DetectorSpec::Periodic { period: 0 } = d.spec {
                return bad("periodic detector needs a positive period");
            }
        }
        let mut ids: Vec<String> = self.detectors.iter().map(DetectorEntry::id).collect();
        ids.sort();
        if ids.windows(2).any(|w| w[0] == w[1]) {
            return bad("detector labels must be unique");
        }
        Ok(())
    }

    pub(crate) fn stream_name(&self) -> String {
        match &self.stream {
            StreamSource::Synthetic(spec) => spec.family.name().into(),
            StreamSource::Csv { path, .. } => path.display().to_string(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Protocol {
    Synthetic,
    Loss,
}

/// One detector on one seeded stream.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeedRun {
    pub seed: u64,
    pub true_drifts: Vec<usize>,
    pub events: Vec<EventRecord>,
    pub tp: usize,
    pub fa: usize,
    /// `detected_at_index - drift` of each true positive.
    pub delays: Vec<usize>,
    pub compute_seconds: f64,
    pub loss: Option<f64>,
    pub nb_retrain: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DetectorReport {
    pub id: String,
    /// Totals over seeds.
    pub tp: usize,
    pub fa: usize,
    /// Per-seed averages.
    pub mean_tp: f64,
    pub mean_fa: f64,
    pub mean_delay_samples: Option<f64>,
    /// Mean compute time of one run over the stream, in seconds.
    pub mtd_seconds: f64,
    pub loss: Option<f64>,
    pub nb_retrain: Option<usize>,
    pub runs: Vec<SeedRun>,
}

impl DetectorReport {
    fn from_runs(id: String, runs: Vec<SeedRun>) -> Self {
        let k = runs.len().max(1) as f64;
        let tp = runs.iter().map(|r| r.tp).sum();
        let fa = runs.iter().map(|r| r.fa).sum();
        let delays: Vec<usize> = runs.iter().flat_map(|r| r.delays.iter().copied()).collect();
        let mean_delay_samples = (!delays.is_empty())
            .then(|| delays.iter().sum::<usize>() as f64 / delays.len() as f64);
        let losses: Vec<f64> = runs.iter().filter_map(|r| r.loss).collect();
        let loss = (!losses.is_empty()).then(|| losses.iter().sum::<f64>() / losses.len() as f64);
        let nb_retrain = runs
            .iter()
            .map(|r| r.nb_retrain)
            .sum::<Option<usize>>();
        Self {
            id,
            tp,
            fa,
            mean_tp: tp as f64 / k,
            mean_fa: fa as f64 / k,
            mean_delay_samples,
            mtd_seconds: runs.iter().map(|r| r.compute_seconds).sum::<f64>() / k,
            loss,
            nb_retrain,
            runs,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchReport {
    pub protocol: Protocol,
    pub stream: String,
    /// True drifts inside the monitored part of each run.
    pub true_drifts: usize,
    pub seeds: Vec<u64>,
    pub match_tolerance: usize,
    pub detectors: Vec<DetectorReport>,
}

impl BenchReport {
    pub fn detector(&self, id: &str) -> Option<&DetectorReport> {
        self.detectors.iter().find(|d| d.id == id)
    }
}

/// Worker pool honouring `DRIFTLAB_THREADS`.
pub(crate) fn pool() -> Result<rayon::ThreadPool> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Ok(v) = std::env::var("DRIFTLAB_THREADS") {
        let n: usize = v
            .parse()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| DriftlabError::BadConfig(format!("DRIFTLAB_THREADS={v}")))?;
        b = b.num_threads(n);
    }
    b.build().map_err(|e| DriftlabError::BadConfig(e.to_string()))
}

/// Tuned baseline values of the benchmark protocol, per stream family:
/// ADWIN delta, Page-Hinkley lambda and KSWIN alpha. The other baselines
/// keep their defaults.
pub fn tuned_params(family: Family) -> [(BaselineKind, &'static str, f64); 3] {
    let (adwin, ph, kswin) = match family {
        Family::Friedman => (1e-4, 1e-6, 0.001),
        Family::FriedmanNoReturn => (1e-6, 1e-6, 0.0034),
        Family::Brieman2dPlanes => (1e-3, 1e-6, 0.0032),
        Family::Agrawal32 => (5e-6, 50.0, 0.0034),
        Family::Agrawal3213 => (4.2e-5, 50.0, 0.0029),
        Family::Mixed => (0.0441, 1e-6, 0.0059),
    };
    [
        (BaselineKind::Adwin, "delta", adwin),
        (BaselineKind::PageHinkley, "lambda", ph),
        (BaselineKind::Kswin, "alpha", kswin),
    ]
}

/// Baseline config for `kind` with the family's tuned value applied.
pub fn tuned_baseline(kind: BaselineKind, family: Family) -> BaselineConfig {
    let mut cfg = BaselineConfig::new(kind);
    for (k, name, v) in tuned_params(family) {
        if k == kind {
            cfg.params.insert(name.into(), v);
        }
    }
    cfg
}

/// ADDM with its defaults followed by the seven tuned baselines.
pub fn standard_detectors(family: Family) -> Vec<DetectorEntry> {
    let mut out = vec![DetectorEntry::new(DetectorSpec::Addm(AddmConfig::default()))];
    out.extend(
        BaselineKind::ALL
            .into_iter()
            .map(|k| DetectorEntry::new(DetectorSpec::Baseline(tuned_baseline(k, family)))),
    );
    out
}

#[cfg(test)]
pub(crate) fn param_map(pairs: &[(&str, f64)]) -> std::collections::BTreeMap<String, f64> {
    pairs.iter().map(|&(k, v)| (k.to_string(), v)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_json_round_trip() {
        let cfg = BenchConfig::new(
            StreamSource::Synthetic(GeneratorSpec::standard(Family::Mixed, 2_000, 0)),
            standard_detectors(Family::Mixed),
            vec![1, 2],
        );
        let text = serde_json::to_string(&cfg).unwrap();
        let back: BenchConfig = serde_json::from_str(&text).unwrap();
        assert_eq!(back, cfg);
    }

    #[test]
    fn minimal_json() {
        let text = r#"{
            "stream": {"synthetic": {"family": "Mixed", "n_samples": 1000, "noise_sigma": 0.0,
                "seed": 0, "schedule": {"change_points": [500], "transition": "Abrupt",
                "concept_sequence": [0, 1]}}},
            "detectors": [{"type": "addm", "window": 400},
                          {"type": "baseline", "kind": "Ddm"},
                          {"type": "oracle", "label": "truth"}],
            "seeds": [3]
        }"#;
        let cfg: BenchConfig = serde_json::from_str(text).unwrap();
        cfg.validate().unwrap();
        assert_eq!(cfg.match_tolerance, 500);
        let DetectorSpec::Addm(a) = &cfg.detectors[0].spec else {
            panic!()
        };
        assert_eq!(a.window, 400);
        assert_eq!(a.min_gap, 500);
        assert_eq!(cfg.detectors[2].id(), "truth");
    }

    #[test]
    fn validation_errors() {
        let mut cfg = BenchConfig::new(
            StreamSource::Synthetic(GeneratorSpec::standard(Family::Mixed, 2_000, 0)),
            vec![DetectorEntry::new(DetectorSpec::Never)],
            vec![],
        );
        assert!(cfg.validate().is_err());
        cfg.seeds = vec![0];
        cfg.validate().unwrap();
        cfg.match_tolerance = 0;
        assert!(cfg.validate().is_err());
        cfg.match_tolerance = 10;
        cfg.learner.classification_loss = LossKind::CrossEntropy;
        assert!(cfg.validate().is_err());
        cfg.learner.classification_loss = LossKind::ZeroOne;
        cfg.validate().unwrap();
        cfg.detectors.push(DetectorEntry::new(DetectorSpec::Never));
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn tuned_values_land_in_configs() {
        let c = tuned_baseline(BaselineKind::Kswin, Family::Mixed);
        assert_eq!(c.params["alpha"], 0.0059);
        let d = tuned_baseline(BaselineKind::Ddm, Family::Mixed);
        assert!(d.params.is_empty());
        for f in Family::ALL {
            for e in standard_detectors(f) {
                if let DetectorSpec::Baseline(b) = e.spec {
                    driftlab_core::baselines::make_baseline(&b).unwrap();
                }
            }
        }
    }
}
