//! Two-regime threshold autoregressive (TAR) models.
//!
//! A fit regresses `Y_t` on `X_t = (1, Y_{t-1}, ..., Y_{t-p})` separately in
//! two regimes selected by a threshold variable, and picks the threshold
//! that minimizes the pooled residual variance `(1/T) Σ ε̂²`. The threshold
//! variable is either the lagged series value `Y_{t-d}` (self-exciting) or
//! the observation's stream index, in which case the fitted threshold is a
//! change point in time.

mod design;
mod fit;
mod inference;
mod scan;

pub use design::{build_lag_design, ols_fit, LagDesign, RegimeFit};
pub use fit::{fit_and_test, fit_tar};
pub use inference::{significance_test, subsample_ci};

pub(crate) use fit::fit_with_plan;
pub(crate) use inference::bootstrap_rejects;

use alloc::format;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ThresholdMode {
    /// Regimes split on the lagged value `Y_{t-d}`.
    SelfExciting,
    /// Regimes split on the observation index: a structural break in time.
    TimeIndex,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct TarConfig {
    /// Autoregressive order.
    pub p: usize,
    /// Threshold delay, `1 <= d <= p`.
    pub d: usize,
    pub threshold_mode: ThresholdMode,
    /// Trimming fraction: each regime keeps at least this share of rows.
    pub min_regime_frac: f64,
    pub significance_level: f64,
    pub bootstrap_reps: usize,
}

impl Default for TarConfig {
    fn default() -> Self {
        Self {
            p: 5,
            d: 2,
            threshold_mode: ThresholdMode::TimeIndex,
            min_regime_frac: 0.15,
            significance_level: 0.05,
            bootstrap_reps: 200,
        }
    }
}

impl TarConfig {
    pub fn validate(&self) -> Result<()> {
        if self.p == 0 {
            return Err(Error::InvalidConfig("p must be at least 1".into()));
        }
        if self.d == 0 || self.d > self.p {
            return Err(Error::InvalidConfig(format!(
                "d = {} must satisfy 1 <= d <= p = {}",
                self.d, self.p
            )));
        }
        if !(self.min_regime_frac > 0.0 && self.min_regime_frac < 0.5) {
            return Err(Error::InvalidConfig(
                "min_regime_frac must lie in (0, 0.5)".into(),
            ));
        }
        if !(self.significance_level > 0.0 && self.significance_level < 1.0) {
            return Err(Error::InvalidConfig(
                "significance_level must lie in (0, 1)".into(),
            ));
        }
        if self.bootstrap_reps == 0 {
            return Err(Error::InvalidConfig(
                "bootstrap_reps must be positive".into(),
            ));
        }
        Ok(())
    }

    /// Shortest series that leaves room for two identifiable regimes.
    pub fn min_series_len(&self) -> usize {
        self.p + self.d.max(1) + 2 * (self.p + 2)
    }

    /// Minimum number of rows per regime for a design of `n_obs` rows.
    pub fn min_regime_rows(&self, n_obs: usize) -> usize {
        let trimmed = libm::ceil(self.min_regime_frac * n_obs as f64) as usize;
        trimmed.max(self.p + 2)
    }
}

/// A fitted two-regime model.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TarFit {
    /// Regime-1 coefficients `(φ₀, ..., φ_p)`.
    pub phi: Vec<f64>,
    /// Regime-2 coefficients `(β₀, ..., β_p)`.
    pub beta: Vec<f64>,
    /// Fitted threshold in the threshold variable's scale. In time-index mode
    /// this is the midpoint between the last regime-1 and the first regime-2
    /// index.
    pub threshold: f64,
    /// Stream index of the first observation in regime 2.
    pub threshold_index: usize,
    pub sigma2: f64,
    pub sigma2_linear: f64,
    /// `n_obs · (σ̂²_linear − σ̂²) / σ̂²`.
    pub f_stat: f64,
    /// Bootstrap p-value, `None` until tested.
    pub p_value: Option<f64>,
    pub n_obs: usize,
}

impl TarFit {
    pub fn is_significant(&self, level: f64) -> bool {
        self.p_value.is_some_and(|p| p <= level)
    }
}

/// Confidence interval for a fitted threshold, in the threshold variable's
/// scale.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThresholdCI {
    pub lower: f64,
    pub upper: f64,
    pub nominal_level: f64,
    pub subsample_size: usize,
    pub n_subsamples: usize,
}

impl ThresholdCI {
    pub fn contains(&self, value: f64) -> bool {
        self.lower <= value && value <= self.upper
    }

    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }
}
