//! The ADDM streaming detector.
//!
//! Losses of the deployed model are appended to a sliding window. Every
//! `window / 4` samples a time-index TAR model is fitted to the reference
//! (validation) errors followed by the window; a drift is reported when the
//! fitted change point lies in the streamed part and the bootstrap test
//! rejects the single-regime model. The post-drift part of the window then
//! becomes the new reference.

use alloc::collections::VecDeque;
use alloc::string::String;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::adaptation::severity;
use crate::detector::DriftDetector;
use crate::error::{Error, Result};
use crate::rng::derive_seed;
use crate::series::{check_finite, ErrorSeries};
use crate::setar::{bootstrap_rejects, fit_with_plan, subsample_ci, TarConfig, ThresholdCI, ThresholdMode};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum LossKind {
    Squared,
    CrossEntropy,
    ZeroOne,
}

/// Probabilities are clipped to `[EPS, 1 - EPS]` for cross-entropy.
const CE_EPS: f64 = 1e-12;

impl LossKind {
    /// Per-sample loss. For classification `prediction` is the predicted
    /// probability of class 1 and `target` is 0 or 1.
    pub fn loss(self, target: f64, prediction: f64) -> f64 {
        match self {
            LossKind::Squared => (target - prediction) * (target - prediction),
            LossKind::CrossEntropy => {
                let p = prediction.clamp(CE_EPS, 1.0 - CE_EPS);
                if target >= 0.5 {
                    -libm::log(p)
                } else {
                    -libm::log(1.0 - p)
                }
            }
            LossKind::ZeroOne => {
                if (prediction >= 0.5) == (target >= 0.5) {
                    0.0
                } else {
                    1.0
                }
            }
        }
    }

    fn check(self, value: f64) -> Result<()> {
        let ok = match self {
            LossKind::Squared | LossKind::CrossEntropy => value >= 0.0,
            LossKind::ZeroOne => (0.0..=1.0).contains(&value),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::DomainError {
                value,
                reason: "loss outside the range of the configured loss kind",
            })
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct AddmConfig {
    /// Sliding window length in samples.
    pub window: usize,
    pub tar: TarConfig,
    /// Minimum spacing between detections, in samples.
    pub min_gap: usize,
    pub loss_kind: LossKind,
    /// Master seed for the bootstrap tests.
    pub seed: u64,
    /// Nominal level of the subsampling interval attached to events;
    /// `None` skips the interval.
    pub ci_level: Option<f64>,
}

/// Per-fit significance level of the detector. A stream is tested about
/// `4 / window` times per sample on overlapping data, so the per-fit level
/// sits well below the usual 0.05 to keep stream-wide false alarms rare.
pub const DEFAULT_FIT_LEVEL: f64 = 0.002;
/// Bootstrap replicates per fit; enough to resolve [`DEFAULT_FIT_LEVEL`].
pub const DEFAULT_FIT_REPS: usize = 1000;

impl Default for AddmConfig {
    fn default() -> Self {
        Self {
            window: 500,
            tar: TarConfig {
                significance_level: DEFAULT_FIT_LEVEL,
                bootstrap_reps: DEFAULT_FIT_REPS,
                ..TarConfig::default()
            },
            min_gap: 500,
            loss_kind: LossKind::Squared,
            seed: 0,
            ci_level: Some(0.9),
        }
    }
}

impl AddmConfig {
    pub fn validate(&self) -> Result<()> {
        self.tar.validate()?;
        if self.window < self.tar.min_series_len() {
            return Err(Error::InvalidConfig(alloc::format!(
                "window {} is shorter than the minimum TAR series length {}",
                self.window,
                self.tar.min_series_len()
            )));
        }
        if self.min_gap == 0 {
            return Err(Error::InvalidConfig("min_gap must be at least 1".into()));
        }
        if let Some(level) = self.ci_level {
            if !(level > 0.0 && level < 1.0) {
                return Err(Error::InvalidConfig("ci_level must lie in (0, 1)".into()));
            }
        }
        Ok(())
    }

    /// Samples between successive fits.
    pub fn fit_every(&self) -> usize {
        (self.window / 4).max(1)
    }
}

/// A confirmed drift.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DriftEvent {
    pub detector_id: String,
    /// Estimated first sample of the new concept.
    pub stream_index: usize,
    /// Sample at which the alarm fired.
    pub detected_at_index: usize,
    /// Severity weight of the new concept; `None` for detectors that do not
    /// estimate it.
    pub severity: Option<f64>,
    pub ci: Option<ThresholdCI>,
    /// Detector processing time attributed to this detection, in seconds.
    pub compute_time: f64,
}

impl DriftEvent {
    pub fn at(detector_id: impl Into<String>, index: usize) -> Self {
        Self {
            detector_id: detector_id.into(),
            stream_index: index,
            detected_at_index: index,
            severity: None,
            ci: None,
            compute_time: 0.0,
        }
    }
}

/// Flat JSON-lines form of an event.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EventRecord {
    pub detector_id: String,
    pub stream_index: usize,
    pub detected_at_index: usize,
    pub severity: Option<f64>,
    pub ci_lower: Option<f64>,
    pub ci_upper: Option<f64>,
    pub compute_time: f64,
}

impl From<&DriftEvent> for EventRecord {
    fn from(e: &DriftEvent) -> Self {
        Self {
            detector_id: e.detector_id.clone(),
            stream_index: e.stream_index,
            detected_at_index: e.detected_at_index,
            severity: e.severity,
            ci_lower: e.ci.as_ref().map(|c| c.lower),
            ci_upper: e.ci.as_ref().map(|c| c.upper),
            compute_time: e.compute_time,
        }
    }
}

pub const ADDM_ID: &str = "ADDM";

/// Streaming detector state. One instance per stream.
#[derive(Debug, Clone)]
pub struct AddmDetector {
    cfg: AddmConfig,
    validation: Vec<f64>,
    window: VecDeque<f64>,
    window_index: VecDeque<usize>,
    samples_seen: usize,
    /// `samples_seen` at the last detection.
    last_detection: Option<usize>,
    last_stream_index: Option<usize>,
}

impl AddmDetector {
    pub fn new(validation_errors: &ErrorSeries, cfg: AddmConfig) -> Result<Self> {
        cfg.validate()?;
        let needed = cfg.tar.min_series_len();
        if validation_errors.len() < needed {
            return Err(Error::SeriesTooShort {
                needed,
                got: validation_errors.len(),
            });
        }
        for &v in validation_errors.values() {
            cfg.loss_kind.check(v)?;
        }
        Ok(Self {
            validation: validation_errors.values().to_vec(),
            window: VecDeque::with_capacity(cfg.window + 1),
            window_index: VecDeque::with_capacity(cfg.window + 1),
            samples_seen: 0,
            last_detection: None,
            last_stream_index: None,
            cfg,
        })
    }

    pub fn config(&self) -> &AddmConfig {
        &self.cfg
    }

    pub fn samples_seen(&self) -> usize {
        self.samples_seen
    }

    pub fn validation_errors(&self) -> &[f64] {
        &self.validation
    }

    pub fn window_len(&self) -> usize {
        self.window.len()
    }

    pub fn last_detection(&self) -> Option<usize> {
        self.last_detection
    }

    /// Replace the reference series, for instance after the monitored model
    /// was retrained, and drop the window. Detection spacing is kept.
    pub fn reset_reference(&mut self, errors: &ErrorSeries) -> Result<()> {
        let needed = self.cfg.tar.min_series_len();
        if errors.len() < needed {
            return Err(Error::SeriesTooShort {
                needed,
                got: errors.len(),
            });
        }
        for &v in errors.values() {
            self.cfg.loss_kind.check(v)?;
        }
        self.validation = errors.values().to_vec();
        self.window.clear();
        self.window_index.clear();
        Ok(())
    }

    /// Feed the loss of sample `stream_index`.
    pub fn observe_at(&mut self, stream_index: usize, loss: f64) -> Result<Option<DriftEvent>> {
        check_finite(&[loss]).map_err(|_| Error::NonFiniteValue {
            index: stream_index,
        })?;
        self.cfg.loss_kind.check(loss)?;
        self.window.push_back(loss);
        self.window_index.push_back(stream_index);
        if self.window.len() > self.cfg.window {
            self.window.pop_front();
            self.window_index.pop_front();
        }
        self.samples_seen += 1;

        if self.samples_seen % self.cfg.fit_every() != 0 {
            return Ok(None);
        }
        if let Some(last) = self.last_detection {
            if self.samples_seen - last < self.cfg.min_gap {
                return Ok(None);
            }
        }
        Ok(self.try_detect(stream_index))
    }

    fn try_detect(&mut self, now: usize) -> Option<DriftEvent> {
        let tar = &self.cfg.tar;
        let n_val = self.validation.len();
        let mut combined = Vec::with_capacity(n_val + self.window.len());
        combined.extend_from_slice(&self.validation);
        combined.extend(self.window.iter().copied());
        if combined.len() < tar.min_series_len() || self.window.is_empty() {
            return None;
        }
        let series = ErrorSeries::new(combined, 0).ok()?;
        // Degenerate windows (constant losses, singular regimes) carry no
        // evidence of change.
        let (mut fit, design, plan) = fit_with_plan(&series, tar).ok()?;
        let change = fit.threshold_index;
        if change < n_val {
            return None;
        }
        let stream_index = self.window_index[change - n_val];
        if let Some(prev) = self.last_stream_index {
            if stream_index < prev + self.cfg.min_gap {
                return None;
            }
        }
        let seed = derive_seed(self.cfg.seed, self.samples_seen as u64);
        if !bootstrap_rejects(&fit, &design, &plan, tar, seed).ok()? {
            return None;
        }

        let values = series.values();
        let severity = severity(values[..change].as_ref(), values[change..].as_ref())
            .ok()
            .map(|s| s.w);
        let ci = self.cfg.ci_level.and_then(|level| {
            fit.p_value = None;
            let mut ci = subsample_ci(&series, tar, &fit, level).ok()?;
            if tar.threshold_mode == ThresholdMode::TimeIndex {
                let offset = self.window_index[0] as f64 - n_val as f64;
                ci.lower += offset;
                ci.upper += offset;
            }
            Some(ci)
        });

        let post = values[change..].to_vec();
        self.validation = post;
        self.window.clear();
        self.window_index.clear();
        self.last_detection = Some(self.samples_seen);
        self.last_stream_index = Some(stream_index);

        Some(DriftEvent {
            detector_id: ADDM_ID.into(),
            stream_index,
            detected_at_index: now,
            severity,
            ci,
            compute_time: 0.0,
        })
    }
}

impl DriftDetector for AddmDetector {
    fn id(&self) -> String {
        ADDM_ID.into()
    }

    fn observe(&mut self, stream_index: usize, value: f64) -> Result<Option<DriftEvent>> {
        self.observe_at(stream_index, value)
    }
}

/// Run the streaming detector over a whole loss series. Sample `i` of
/// `stream` gets stream index `stream.start_index() + i`.
pub fn detect_offline(
    validation_errors: &ErrorSeries,
    stream: &ErrorSeries,
    cfg: &AddmConfig,
) -> Result<Vec<DriftEvent>> {
    let mut det = AddmDetector::new(validation_errors, cfg.clone())?;
    let mut events = Vec::new();
    for (i, &loss) in stream.values().iter().enumerate() {
        if let Some(e) = det.observe_at(stream.start_index() + i, loss)? {
            events.push(e);
        }
    }
    Ok(events)
}
