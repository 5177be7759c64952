use driftlab_core::addm::{AddmDetector, DriftEvent};
use driftlab_core::baselines::{make_baseline, Baseline};
use driftlab_core::{DriftDetector, ErrorSeries, Result};

use super::{DetectorEntry, DetectorSpec};

/// Fires at exactly the given indices.
#[derive(Debug, Clone)]
pub struct OracleDetector {
    drifts: Vec<usize>,
}

impl OracleDetector {
    pub fn new(mut drifts: Vec<usize>) -> Self {
        drifts.sort_unstable();
        Self { drifts }
    }
}

impl DriftDetector for OracleDetector {
    fn id(&self) -> String {
        "ORACLE".into()
    }

    fn observe(&mut self, stream_index: usize, _: f64) -> Result<Option<DriftEvent>> {
        Ok(self
            .drifts
            .binary_search(&stream_index)
            .is_ok()
            .then(|| DriftEvent::at("ORACLE", stream_index)))
    }
}

#[derive(Debug, Clone, Default)]
pub struct NeverFire;

impl DriftDetector for NeverFire {
    fn id(&self) -> String {
        "NEVER".into()
    }

    fn observe(&mut self, _: usize, _: f64) -> Result<Option<DriftEvent>> {
        Ok(None)
    }
}

/// Fires on every `period`-th call.
#[derive(Debug, Clone)]
pub struct PeriodicDetector {
    period: usize,
    seen: usize,
}

impl PeriodicDetector {
    pub fn new(period: usize) -> Self {
        Self {
            period: period.max(1),
            seen: 0,
        }
    }
}

impl DriftDetector for PeriodicDetector {
    fn id(&self) -> String {
        format!("EVERY_{}", self.period)
    }

    fn observe(&mut self, stream_index: usize, _: f64) -> Result<Option<DriftEvent>> {
        self.seen += 1;
        Ok((self.seen % self.period == 0).then(|| DriftEvent::at(self.id(), stream_index)))
    }
}

/// A bench detector instance.
pub enum Monitor {
    Addm(AddmDetector),
    Baseline(Baseline),
    Oracle(OracleDetector),
    Never(NeverFire),
    Periodic(PeriodicDetector),
}

/// Per-run inputs a detector may need.
#[derive(Clone)]
pub(crate) struct RunContext<'a> {
    pub seed: u64,
    pub validation_errors: &'a [f64],
    pub change_points: &'a [usize],
    pub loss_kind: driftlab_core::LossKind,
}

impl Monitor {
    pub(crate) fn build(entry: &DetectorEntry, ctx: &RunContext) -> Result<Monitor> {
        Ok(match &entry.spec {
            DetectorSpec::Addm(cfg) => {
                let mut cfg = cfg.clone();
                cfg.loss_kind = ctx.loss_kind;
                cfg.seed = ctx.seed;
                let val = ErrorSeries::from_slice(ctx.validation_errors)?;
                Monitor::Addm(AddmDetector::new(&val, cfg)?)
            }
            DetectorSpec::Baseline(cfg) => {
                let mut cfg = cfg.clone();
                cfg.seed = ctx.seed;
                Monitor::Baseline(make_baseline(&cfg)?)
            }
            DetectorSpec::Oracle => Monitor::Oracle(OracleDetector::new(ctx.change_points.to_vec())),
            DetectorSpec::Never => Monitor::Never(NeverFire),
            DetectorSpec::Periodic { period } => Monitor::Periodic(PeriodicDetector::new(*period)),
        })
    }

    fn inner(&mut self) -> &mut dyn DriftDetector {
        match self {
            Monitor::Addm(d) => d,
            Monitor::Baseline(d) => d,
            Monitor::Oracle(d) => d,
            Monitor::Never(d) => d,
            Monitor::Periodic(d) => d,
        }
    }
}

impl DriftDetector for Monitor {
    fn id(&self) -> String {
        match self {
            Monitor::Addm(d) => d.id(),
            Monitor::Baseline(d) => d.id(),
            Monitor::Oracle(d) => d.id(),
            Monitor::Never(d) => d.id(),
            Monitor::Periodic(d) => d.id(),
        }
    }

    fn observe(&mut self, stream_index: usize, value: f64) -> Result<Option<DriftEvent>> {
        self.inner().observe(stream_index, value)
    }
}
