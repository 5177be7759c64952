use alloc::string::String;

use serde::{Deserialize, Serialize};

use crate::addm::DriftEvent;
use crate::error::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum Signal {
    #[default]
    None,
    Warning,
    Drift,
}

/// Common streaming interface shared by ADDM and the baseline detectors.
///
/// `observe` takes the loss of sample `stream_index` and returns an event
/// when a drift is confirmed at that step.
pub trait DriftDetector {
    fn id(&self) -> String;

    fn observe(&mut self, stream_index: usize, value: f64) -> Result<Option<DriftEvent>>;
}

impl<D: DriftDetector + ?Sized> DriftDetector for alloc::boxed::Box<D> {
    fn id(&self) -> String {
        (**self).id()
    }

    fn observe(&mut self, stream_index: usize, value: f64) -> Result<Option<DriftEvent>> {
        (**self).observe(stream_index, value)
    }
}
