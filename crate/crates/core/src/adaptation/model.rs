use alloc::vec;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::rng_from_seed;
use crate::streams::StreamRecord;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ModelKind {
    LinearRegression,
    LogisticRegression,
}

pub trait Predictor {
    /// Regression output, or the probability of class 1.
    fn predict(&self, features: &[f64]) -> f64;
}

/// Linear or logistic model trained by plain SGD. `weights[0]` is the
/// intercept.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OnlineModel {
    pub kind: ModelKind,
    pub weights: Vec<f64>,
    pub learning_rate: f64,
    pub steps: u64,
}

pub(crate) fn sigmoid(z: f64) -> f64 {
    if z >= 0.0 {
        1.0 / (1.0 + libm::exp(-z))
    } else {
        let e = libm::exp(z);
        e / (1.0 + e)
    }
}

impl OnlineModel {
    pub fn new(kind: ModelKind, dim: usize, learning_rate: f64) -> Self {
        Self {
            kind,
            weights: vec![0.0; dim + 1],
            learning_rate,
            steps: 0,
        }
    }

    pub fn dim(&self) -> usize {
        self.weights.len() - 1
    }

    fn linear(&self, x: &[f64]) -> f64 {
        self.weights[0]
            + self.weights[1..]
                .iter()
                .zip(x)
                .map(|(w, v)| w * v)
                .sum::<f64>()
    }

    /// SGD over `epochs` passes of the shuffled batch. Squared loss for
    /// regression, log loss for logistic regression.
    pub fn train(&self, batch: &[StreamRecord], epochs: usize, seed: u64) -> Result<OnlineModel> {
        if batch.is_empty() {
            return Err(Error::EmptyBatch);
        }
        let dim = self.dim();
        for r in batch {
            if r.features.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: r.features.len(),
                });
            }
            if self.kind == ModelKind::LogisticRegression && r.target != 0.0 && r.target != 1.0 {
                return Err(Error::DomainError {
                    value: r.target,
                    reason: "logistic targets must be 0 or 1",
                });
            }
        }
        let mut model = self.clone();
        let mut rng = rng_from_seed(seed);
        let mut order: Vec<usize> = (0..batch.len()).collect();
        for _ in 0..epochs {
            order.shuffle(&mut rng);
            for &i in &order {
                let r = &batch[i];
                let residual = model.predict(&r.features) - r.target;
                let step = model.learning_rate * residual;
                model.weights[0] -= step;
                for (w, x) in model.weights[1..].iter_mut().zip(&r.features) {
                    *w -= step * x;
                }
                model.steps += 1;
            }
        }
        Ok(model)
    }
}

impl Predictor for OnlineModel {
    fn predict(&self, features: &[f64]) -> f64 {
        let z = self.linear(features);
        match self.kind {
            ModelKind::LinearRegression => z,
            ModelKind::LogisticRegression => sigmoid(z),
        }
    }
}

/// Per-feature z-scoring with statistics from a fitting batch. Constant
/// features are centred but not scaled.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Standardizer {
    pub mean: Vec<f64>,
    pub scale: Vec<f64>,
}

impl Standardizer {
    pub fn fit(batch: &[StreamRecord]) -> Result<Self> {
        let first = batch.first().ok_or(Error::EmptyBatch)?;
        let dim = first.features.len();
        let n = batch.len() as f64;
        let mut mean = vec![0.0; dim];
        for r in batch {
            if r.features.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: r.features.len(),
                });
            }
            for (m, x) in mean.iter_mut().zip(&r.features) {
                *m += x / n;
            }
        }
        let mut var = vec![0.0; dim];
        for r in batch {
            for ((v, m), x) in var.iter_mut().zip(&mean).zip(&r.features) {
                *v += (x - m) * (x - m) / n;
            }
        }
        let scale = var
            .into_iter()
            .map(|v| if v > 0.0 { libm::sqrt(v) } else { 1.0 })
            .collect();
        Ok(Self { mean, scale })
    }

    pub fn transform(&self, record: &StreamRecord) -> StreamRecord {
        let mut out = record.clone();
        for ((x, m), s) in out.features.iter_mut().zip(&self.mean).zip(&self.scale) {
            *x = (*x - m) / s;
        }
        out
    }
}
