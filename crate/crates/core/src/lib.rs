//! Concept drift detection over a learner's error stream.
//!
//! The centre of the crate is [`setar`], which fits two-regime threshold
//! autoregressive models by least squares with an exhaustive threshold scan,
//! and [`addm`], which runs those fits over a sliding window of losses to
//! emit drift events. Around it sit the comparison detectors in
//! [`baselines`], severity-weighted model aggregation in [`adaptation`] and
//! seeded synthetic drift streams in [`streams`].
//!
//! The crate is `no_std` and only needs `alloc`. IO, timing and the CLI live
//! in the companion `driftlab` crate.
#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(any(test, feature = "std"))]
extern crate std;

pub mod adaptation;
pub mod addm;
pub mod baselines;
pub mod detector;
mod error;
pub mod linalg;
pub mod rng;
pub mod series;
pub mod setar;
pub mod streams;

pub use addm::{AddmConfig, AddmDetector, DriftEvent, LossKind};
pub use detector::{DriftDetector, Signal};
pub use error::{Error, Result};
pub use series::ErrorSeries;
pub use setar::{TarConfig, TarFit, ThresholdCI, ThresholdMode};
