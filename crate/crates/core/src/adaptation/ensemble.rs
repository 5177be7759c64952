use alloc::vec;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use super::model::{sigmoid, ModelKind, OnlineModel, Predictor};
use super::severity::{severity, SeverityWeight};
use crate::addm::DriftEvent;
use crate::error::{Error, Result};
use crate::streams::StreamRecord;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CombineMode {
    /// Average the parameter vectors.
    WeightAverage,
    /// Average the outputs (probabilities for logistic models).
    OutputAverage,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeightedModel {
    pub weight: f64,
    pub model: OnlineModel,
}

/// The pre-drift side of an ensemble. Repeated output-averaged drifts fold
/// the previous ensemble into a flat mixture, so nesting never exceeds one
/// level.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum OldModel {
    Single(OnlineModel),
    Mixture(Vec<WeightedModel>),
}

impl Predictor for OldModel {
    fn predict(&self, features: &[f64]) -> f64 {
        match self {
            OldModel::Single(m) => m.predict(features),
            OldModel::Mixture(parts) => parts
                .iter()
                .map(|p| p.weight * p.model.predict(features))
                .sum(),
        }
    }
}

impl OldModel {
    fn kind_and_dim(&self) -> Option<(ModelKind, usize)> {
        match self {
            OldModel::Single(m) => Some((m.kind, m.dim())),
            OldModel::Mixture(parts) => parts.first().map(|p| (p.model.kind, p.model.dim())),
        }
    }

    fn components(&self) -> Vec<WeightedModel> {
        match self {
            OldModel::Single(m) => vec![WeightedModel {
                weight: 1.0,
                model: m.clone(),
            }],
            OldModel::Mixture(parts) => parts.clone(),
        }
    }

    /// Collapse to one parameter vector by weight averaging.
    fn collapse(&self) -> Result<OnlineModel> {
        match self {
            OldModel::Single(m) => Ok(m.clone()),
            OldModel::Mixture(parts) => {
                let first = &parts.first().ok_or(Error::EmptyBatch)?.model;
                let mut out = first.clone();
                out.weights.iter_mut().for_each(|w| *w = 0.0);
                for p in parts {
                    check_compatible(first, &p.model)?;
                    for (acc, w) in out.weights.iter_mut().zip(&p.model.weights) {
                        *acc += p.weight * w;
                    }
                }
                Ok(out)
            }
        }
    }
}

/// `M = (1 − w) · M_old + w · M_new`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnsembleModel {
    pub old: OldModel,
    pub new: OnlineModel,
    pub w: SeverityWeight,
    pub combine_mode: CombineMode,
}

impl EnsembleModel {
    /// The parameter-averaged model (weight-average mode).
    pub fn merged(&self) -> Result<OnlineModel> {
        let old = self.old.collapse()?;
        check_compatible(&old, &self.new)?;
        let w = self.w.w;
        let mut out = self.new.clone();
        for (m, o) in out.weights.iter_mut().zip(&old.weights) {
            *m = (1.0 - w) * o + w * *m;
        }
        Ok(out)
    }
}

impl Predictor for EnsembleModel {
    fn predict(&self, features: &[f64]) -> f64 {
        let w = self.w.w;
        match (self.combine_mode, &self.old) {
            (CombineMode::WeightAverage, OldModel::Single(old)) => {
                // Weight averaging commutes with the linear predictor.
                let lin = |m: &OnlineModel| {
                    m.weights[0]
                        + m.weights[1..]
                            .iter()
                            .zip(features)
                            .map(|(a, b)| a * b)
                            .sum::<f64>()
                };
                let z = (1.0 - w) * lin(old) + w * lin(&self.new);
                match self.new.kind {
                    ModelKind::LinearRegression => z,
                    ModelKind::LogisticRegression => sigmoid(z),
                }
            }
            (CombineMode::WeightAverage, _) => match self.merged() {
                Ok(m) => m.predict(features),
                Err(_) => (1.0 - w) * self.old.predict(features) + w * self.new.predict(features),
            },
            (CombineMode::OutputAverage, old) => {
                (1.0 - w) * old.predict(features) + w * self.new.predict(features)
            }
        }
    }
}

fn check_compatible(a: &OnlineModel, b: &OnlineModel) -> Result<()> {
    if a.kind != b.kind {
        return Err(Error::KindMismatch);
    }
    if a.weights.len() != b.weights.len() {
        return Err(Error::DimensionMismatch {
            expected: a.weights.len(),
            got: b.weights.len(),
        });
    }
    Ok(())
}

/// Combine a pre-drift and a post-drift model with severity weight `w`.
pub fn aggregate(
    old: &OnlineModel,
    new: &OnlineModel,
    w: SeverityWeight,
    mode: CombineMode,
) -> Result<EnsembleModel> {
    aggregate_old(OldModel::Single(old.clone()), new, w, mode)
}

fn aggregate_old(
    old: OldModel,
    new: &OnlineModel,
    w: SeverityWeight,
    mode: CombineMode,
) -> Result<EnsembleModel> {
    let old = match mode {
        CombineMode::WeightAverage => {
            let single = old.collapse()?;
            check_compatible(&single, new)?;
            OldModel::Single(single)
        }
        CombineMode::OutputAverage => {
            if let Some((_, dim)) = old.kind_and_dim() {
                if dim != new.dim() {
                    return Err(Error::DimensionMismatch {
                        expected: dim,
                        got: new.dim(),
                    });
                }
            }
            old
        }
    };
    Ok(EnsembleModel {
        old,
        new: new.clone(),
        w,
        combine_mode: mode,
    })
}

/// The model in service: a single learner or an aggregate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Deployed {
    Single(OnlineModel),
    Ensemble(EnsembleModel),
}

impl Predictor for Deployed {
    fn predict(&self, features: &[f64]) -> f64 {
        match self {
            Deployed::Single(m) => m.predict(features),
            Deployed::Ensemble(e) => e.predict(features),
        }
    }
}

impl Deployed {
    /// The deployed model viewed as the "old" side of a new aggregate.
    fn flatten(&self) -> Result<OldModel> {
        match self {
            Deployed::Single(m) => Ok(OldModel::Single(m.clone())),
            Deployed::Ensemble(e) => match e.combine_mode {
                CombineMode::WeightAverage => Ok(OldModel::Single(e.merged()?)),
                CombineMode::OutputAverage => {
                    let w = e.w.w;
                    let mut parts: Vec<WeightedModel> = e
                        .old
                        .components()
                        .into_iter()
                        .map(|p| WeightedModel {
                            weight: (1.0 - w) * p.weight,
                            model: p.model,
                        })
                        .collect();
                    parts.push(WeightedModel {
                        weight: w,
                        model: e.new.clone(),
                    });
                    Ok(OldModel::Mixture(parts))
                }
            },
        }
    }

    fn template(&self) -> &OnlineModel {
        match self {
            Deployed::Single(m) => m,
            Deployed::Ensemble(e) => &e.new,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct AdaptConfig {
    pub epochs: usize,
    pub learning_rate: f64,
    pub combine_mode: CombineMode,
    pub seed: u64,
    /// Minimum number of post-drift samples before the new model is trained.
    pub min_recent: usize,
}

impl Default for AdaptConfig {
    fn default() -> Self {
        Self {
            epochs: 10,
            learning_rate: 0.01,
            combine_mode: CombineMode::WeightAverage,
            seed: 0,
            min_recent: 200,
        }
    }
}

/// Train a fresh model on `recent`, weigh it by the severity of the
/// `old_errors` → `new_errors` change and aggregate it with `current`.
pub fn adapt_on_drift(
    current: &Deployed,
    event: &DriftEvent,
    recent: &[StreamRecord],
    old_errors: &[f64],
    new_errors: &[f64],
    cfg: &AdaptConfig,
) -> Result<EnsembleModel> {
    if recent.is_empty() {
        return Err(Error::EmptyBatch);
    }
    if let Some(r) = recent.iter().find(|r| r.index < event.stream_index) {
        return Err(Error::InvalidConfig(alloc::format!(
            "record {} precedes the drift at {}",
            r.index,
            event.stream_index
        )));
    }
    let template = current.template();
    let new = OnlineModel::new(template.kind, template.dim(), cfg.learning_rate).train(
        recent,
        cfg.epochs,
        cfg.seed,
    )?;
    let w = severity(old_errors, new_errors)?;
    aggregate_old(current.flatten()?, &new, w, cfg.combine_mode)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lin(weights: Vec<f64>) -> OnlineModel {
        OnlineModel {
            kind: ModelKind::LinearRegression,
            weights,
            learning_rate: 0.1,
            steps: 0,
        }
    }

    fn sw(w: f64) -> SeverityWeight {
        SeverityWeight {
            q3_old: 1.0 - w,
            q3_new: w,
            w,
        }
    }

    #[test]
    fn weight_average_is_affine() {
        let w = SeverityWeight::from_quartiles(1.0, 3.0).unwrap();
        let e = aggregate(&lin(vec![0.0, 0.0]), &lin(vec![4.0, 8.0]), w, CombineMode::WeightAverage)
            .unwrap();
        assert_eq!(e.merged().unwrap().weights, vec![3.0, 6.0]);
        assert_eq!(e.predict(&[1.0]), 9.0);
    }

    #[test]
    fn output_average_is_convex() {
        let w = SeverityWeight::from_quartiles(1.0, 3.0).unwrap();
        let e = aggregate(&lin(vec![1.0, 0.0]), &lin(vec![3.0, 0.0]), w, CombineMode::OutputAverage)
            .unwrap();
        assert!((e.predict(&[0.7]) - 2.5).abs() < 1e-12);
    }

    #[test]
    fn identical_models_are_idempotent() {
        let m = lin(vec![0.3, -1.2, 2.0]);
        let w = SeverityWeight::from_quartiles(1.0, 1.0).unwrap();
        for mode in [CombineMode::WeightAverage, CombineMode::OutputAverage] {
            let e = aggregate(&m, &m, w, mode).unwrap();
            let x = [0.4, -0.9];
            assert!((e.predict(&x) - m.predict(&x)).abs() < 1e-12);
        }
    }

    #[test]
    fn extreme_weights() {
        let old = lin(vec![1.0, 1.0]);
        let new = lin(vec![-2.0, 5.0]);
        let all_new = aggregate(&old, &new, sw(1.0), CombineMode::WeightAverage).unwrap();
        assert_eq!(all_new.merged().unwrap().weights, new.weights);
        let all_old = aggregate(&old, &new, sw(0.0), CombineMode::WeightAverage).unwrap();
        assert_eq!(all_old.merged().unwrap().weights, old.weights);
    }

    #[test]
    fn mismatches() {
        let mut logit = lin(vec![0.0, 0.0]);
        logit.kind = ModelKind::LogisticRegression;
        assert_eq!(
            aggregate(&lin(vec![0.0, 0.0]), &logit, sw(0.6), CombineMode::WeightAverage),
            Err(Error::KindMismatch)
        );
        assert!(matches!(
            aggregate(&lin(vec![0.0]), &lin(vec![0.0, 1.0]), sw(0.6), CombineMode::WeightAverage),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn logistic_output_average_stays_in_unit_interval() {
        let mut a = lin(vec![5.0, 3.0]);
        a.kind = ModelKind::LogisticRegression;
        let mut b = lin(vec![-4.0, -7.0]);
        b.kind = ModelKind::LogisticRegression;
        let e = aggregate(&a, &b, sw(0.8), CombineMode::OutputAverage).unwrap();
        for x in [-10.0, -1.0, 0.0, 1.0, 10.0] {
            let p = e.predict(&[x]);
            assert!((0.0..=1.0).contains(&p));
        }
    }

    #[test]
    fn repeated_output_average_stays_flat() {
        let m0 = lin(vec![0.0, 1.0]);
        let m1 = lin(vec![1.0, 1.0]);
        let m2 = lin(vec![2.0, 1.0]);
        let e1 = aggregate(&m0, &m1, sw(0.75), CombineMode::OutputAverage).unwrap();
        let deployed = Deployed::Ensemble(e1.clone());
        let old = deployed.flatten().unwrap();
        let e2 = aggregate_old(old, &m2, sw(0.5), CombineMode::OutputAverage).unwrap();
        let OldModel::Mixture(parts) = &e2.old else {
            panic!("expected a flat mixture")
        };
        assert_eq!(parts.len(), 2);
        let x = [0.3];
        let want = 0.5 * e1.predict(&x) + 0.5 * m2.predict(&x);
        assert!((e2.predict(&x) - want).abs() < 1e-12);
    }

    #[test]
    fn adapt_requires_post_drift_records() {
        let current = Deployed::Single(lin(vec![0.0, 0.0]));
        let event = DriftEvent::at("ADDM", 100);
        let early = [StreamRecord {
            features: vec![1.0],
            target: 1.0,
            index: 50,
            concept_id: 0,
        }];
        assert!(adapt_on_drift(&current, &event, &early, &[1.0], &[2.0], &AdaptConfig::default()).is_err());
        assert_eq!(
            adapt_on_drift(&current, &event, &[], &[1.0], &[2.0], &AdaptConfig::default()),
            Err(Error::EmptyBatch)
        );
    }
}
