use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::series::quantile;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeverityWeight {
    pub q3_old: f64,
    pub q3_new: f64,
    /// Weight of the new model in the aggregate.
    pub w: f64,
}

impl SeverityWeight {
    pub fn from_quartiles(q3_old: f64, q3_new: f64) -> Result<Self> {
        for q in [q3_old, q3_new] {
            if !q.is_finite() {
                return Err(Error::NonFiniteValue { index: 0 });
            }
            if q < 0.0 {
                return Err(Error::DomainError {
                    value: q,
                    reason: "error quartiles must be non-negative",
                });
            }
        }
        let total = q3_old + q3_new;
        if total == 0.0 {
            return Err(Error::DegenerateZero);
        }
        Ok(Self {
            q3_old,
            q3_new,
            w: q3_old.max(q3_new) / total,
        })
    }
}

/// Drift severity from the losses observed before and after the drift.
pub fn severity(old_errors: &[f64], new_errors: &[f64]) -> Result<SeverityWeight> {
    if old_errors.is_empty() || new_errors.is_empty() {
        return Err(Error::EmptySegment);
    }
    for (index, &v) in old_errors.iter().chain(new_errors).enumerate() {
        if !v.is_finite() {
            return Err(Error::NonFiniteValue { index });
        }
        if v < 0.0 {
            return Err(Error::DomainError {
                value: v,
                reason: "losses must be non-negative",
            });
        }
    }
    let q3_old = quantile(old_errors, 0.75).expect("nonempty");
    let q3_new = quantile(new_errors, 0.75).expect("nonempty");
    SeverityWeight::from_quartiles(q3_old, q3_new)
}
