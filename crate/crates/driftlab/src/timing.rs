use std::time::Instant;

use driftlab_core::addm::DriftEvent;
use driftlab_core::{DriftDetector, Result};

/// Wraps a detector and charges the wall time of its `observe` calls to the
/// next event it emits.
pub struct Timed<D> {
    inner: D,
    pending: f64,
    total: f64,
}

impl<D: DriftDetector> Timed<D> {
    pub fn new(inner: D) -> Self {
        Self {
            inner,
            pending: 0.0,
            total: 0.0,
        }
    }

    /// Seconds spent in `observe` so far.
    pub fn total_seconds(&self) -> f64 {
        self.total
    }

    pub fn inner(&self) -> &D {
        &self.inner
    }

    pub fn inner_mut(&mut self) -> &mut D {
        &mut self.inner
    }
}

impl<D: DriftDetector> DriftDetector for Timed<D> {
    fn id(&self) -> String {
        self.inner.id()
    }

    fn observe(&mut self, stream_index: usize, value: f64) -> Result<Option<DriftEvent>> {
        let start = Instant::now();
        let out = self.inner.observe(stream_index, value);
        let dt = start.elapsed().as_secs_f64();
        self.pending += dt;
        self.total += dt;
        let mut event = out?;
        if let Some(e) = event.as_mut() {
            e.compute_time = self.pending;
            self.pending = 0.0;
        }
        Ok(event)
    }
}
