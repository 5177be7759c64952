//! Severity-weighted model adaptation.
//!
//! After a drift the deployed model is combined with a model trained on the
//! most recent samples, weighting the new model by the drift severity
//! `w = max(Q3_old, Q3_new) / (Q3_old + Q3_new)`, where `Q3` is the third
//! quartile of the losses in each concept.

mod ensemble;
mod model;
mod severity;

pub use ensemble::{adapt_on_drift, aggregate, AdaptConfig, CombineMode, Deployed, EnsembleModel, OldModel, WeightedModel};
pub use model::{ModelKind, OnlineModel, Predictor, Standardizer};
pub use severity::{severity, SeverityWeight};
