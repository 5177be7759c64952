use alloc::vec::Vec;

use rand::Rng;

use super::design::regime_ols;
use super::scan::ScanPlan;
use super::{fit_tar, LagDesign, TarConfig, TarFit, ThresholdCI, ThresholdMode};
use crate::error::{Error, Result};
use crate::rng::derived_rng;
use crate::series::{quantile_sorted, ErrorSeries};

/// Subsample length exponent: blocks hold `ceil(n_obs^0.7)` rows.
const SUBSAMPLE_EXPONENT: f64 = 0.7;
const N_SUBSAMPLES: usize = 100;

/// Fixed-regressor bootstrap p-value of the sup-F statistic.
///
/// Each replicate keeps the regressors and replaces the targets with the
/// pooled AR fit's fitted values plus residuals drawn with replacement, then
/// recomputes sup-F over the same admissible splits. Replicate `b` draws from
/// its own generator seeded by `(seed, b)`.
pub fn significance_test(
    fit: &TarFit,
    design: &LagDesign,
    cfg: &TarConfig,
    seed: u64,
) -> Result<f64> {
    cfg.validate()?;
    if fit.f_stat <= 0.0 {
        return Ok(1.0);
    }
    let plan = ScanPlan::new(design, cfg)?;
    let boot = Bootstrap::new(design)?;
    let exceed = (0..cfg.bootstrap_reps)
        .filter(|&b| boot.replicate_sup_f(&plan, design, seed, b as u64) >= fit.f_stat)
        .count();
    Ok(exceed as f64 / cfg.bootstrap_reps as f64)
}

/// Decide `p_value <= significance_level` without running every replicate:
/// stops once the exceedance count rules out rejection. The decision equals
/// the one [`significance_test`] would reach with the same seed.
pub(crate) fn bootstrap_rejects(
    fit: &TarFit,
    design: &LagDesign,
    plan: &ScanPlan,
    cfg: &TarConfig,
    seed: u64,
) -> Result<bool> {
    if fit.f_stat <= 0.0 {
        return Ok(false);
    }
    let reps = cfg.bootstrap_reps;
    let allowed = libm::floor(cfg.significance_level * reps as f64 + 1e-9) as usize;
    let boot = Bootstrap::new(design)?;
    let mut exceed = 0;
    for b in 0..reps {
        if boot.replicate_sup_f(plan, design, seed, b as u64) >= fit.f_stat {
            exceed += 1;
            if exceed > allowed {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

struct Bootstrap {
    fitted: Vec<f64>,
    residuals: Vec<f64>,
}

impl Bootstrap {
    fn new(design: &LagDesign) -> Result<Self> {
        let n = design.n_rows();
        let rows: Vec<usize> = (0..n).collect();
        let (coef, _) = regime_ols(design, &rows)?;
        let fitted: Vec<f64> = (0..n).map(|i| design.predict_row(i, &coef)).collect();
        let residuals = design
            .targets()
            .iter()
            .zip(&fitted)
            .map(|(y, f)| y - f)
            .collect();
        Ok(Self { fitted, residuals })
    }

    fn replicate_sup_f(&self, plan: &ScanPlan, design: &LagDesign, seed: u64, rep: u64) -> f64 {
        let mut rng = derived_rng(seed, rep);
        let n = self.fitted.len();
        let y: Vec<f64> = self
            .fitted
            .iter()
            .map(|f| f + self.residuals[rng.random_range(0..n)])
            .collect();
        plan.scan(design, &y).sup_f(n)
    }
}

/// Subsampling confidence interval for the fitted threshold.
///
/// Refits the model on contiguous blocks of `ceil(n_obs^0.7)` rows and uses
/// the spread of the block thresholds around the full-sample threshold.
/// In time-index mode only blocks that contain the fitted change with room
/// for both regimes are used, and deviations stay in index units (the break
/// date is estimated to O(1) samples at any sample size). In self-exciting
/// mode blocks tile the series and deviations are rescaled by `b / n`.
pub fn subsample_ci(
    series: &ErrorSeries,
    cfg: &TarConfig,
    fit: &TarFit,
    level: f64,
) -> Result<ThresholdCI> {
    cfg.validate()?;
    if !(level > 0.0 && level < 1.0) {
        return Err(Error::InvalidConfig("level must lie in (0, 1)".into()));
    }
    if let Some(p) = fit.p_value {
        if p > cfg.significance_level {
            return Err(Error::NotSignificant { p_value: p });
        }
    }
    let p = cfg.p;
    let n_obs = fit.n_obs;
    let b = (libm::ceil(libm::pow(n_obs as f64, SUBSAMPLE_EXPONENT)) as usize).min(n_obs);
    let min_rows = cfg.min_regime_rows(b);
    if b < 2 * min_rows || b + p < cfg.min_series_len() {
        return Err(Error::SeriesTooShort {
            needed: 2 * min_rows,
            got: b,
        });
    }

    // Candidate block starts, as row positions (row i targets series[i + p]).
    let (first, last) = match cfg.threshold_mode {
        ThresholdMode::TimeIndex => {
            let change_row = fit
                .threshold_index
                .checked_sub(series.start_index() + p)
                .ok_or(Error::InvalidConfig("fit does not belong to series".into()))?;
            let lo = (change_row + min_rows).saturating_sub(b);
            let hi = change_row.saturating_sub(min_rows).min(n_obs - b);
            if lo > hi {
                return Err(Error::SeriesTooShort {
                    needed: 2 * min_rows,
                    got: b,
                });
            }
            (lo, hi)
        }
        ThresholdMode::SelfExciting => (0, n_obs - b),
    };
    let span = last - first;
    let count = N_SUBSAMPLES.min(span + 1);
    let mut starts: Vec<usize> = (0..count)
        .map(|j| {
            if count == 1 {
                first
            } else {
                first + (j * span + (count - 1) / 2) / (count - 1)
            }
        })
        .collect();
    starts.dedup();

    let scale = match cfg.threshold_mode {
        ThresholdMode::TimeIndex => 1.0,
        ThresholdMode::SelfExciting => b as f64 / n_obs as f64,
    };
    let mut deviations: Vec<f64> = starts
        .iter()
        .filter_map(|&s| {
            let block = series.slice(s, b + p);
            fit_tar(&block, cfg)
                .ok()
                .map(|f| scale * (f.threshold - fit.threshold))
        })
        .collect();
    if deviations.is_empty() {
        return Err(Error::NoAdmissibleSplit);
    }
    deviations.sort_by(f64::total_cmp);
    let alpha = 1.0 - level;
    let q_lo = quantile_sorted(&deviations, alpha / 2.0);
    let q_hi = quantile_sorted(&deviations, 1.0 - alpha / 2.0);
    Ok(ThresholdCI {
        lower: (fit.threshold - q_hi).min(fit.threshold),
        upper: (fit.threshold - q_lo).max(fit.threshold),
        nominal_level: level,
        subsample_size: b,
        n_subsamples: deviations.len(),
    })
}
