use alloc::vec::Vec;

use super::design::regime_ols;
use super::scan::{f_statistic, ScanPlan};
use super::{build_lag_design, significance_test, LagDesign, TarConfig, TarFit, ThresholdMode};
use crate::error::{Error, Result};
use crate::series::ErrorSeries;

/// Splits whose fast SSR lies within this relative band of the minimum are
/// re-evaluated from explicit residuals before the argmin is taken.
const REFINE_BAND: f64 = 1e-7;
const MAX_REFINED: usize = 64;
/// Relative SSR difference below which two splits count as tied.
const TIE_TOL: f64 = 1e-12;

/// Least-squares TAR fit with exhaustive threshold search. The returned
/// fit has `p_value = None`; see [`fit_and_test`].
pub fn fit_tar(series: &ErrorSeries, cfg: &TarConfig) -> Result<TarFit> {
    fit_with_plan(series, cfg).map(|(fit, _, _)| fit)
}

/// [`fit_tar`] followed by [`significance_test`] with the given seed.
pub fn fit_and_test(series: &ErrorSeries, cfg: &TarConfig, seed: u64) -> Result<TarFit> {
    let (mut fit, design, _) = fit_with_plan(series, cfg)?;
    fit.p_value = Some(significance_test(&fit, &design, cfg, seed)?);
    Ok(fit)
}

pub(crate) fn fit_with_plan(
    series: &ErrorSeries,
    cfg: &TarConfig,
) -> Result<(TarFit, LagDesign, ScanPlan)> {
    cfg.validate()?;
    let needed = cfg.min_series_len();
    if series.len() < needed {
        return Err(Error::SeriesTooShort {
            needed,
            got: series.len(),
        });
    }
    let design = build_lag_design(series, cfg)?;
    let n = design.n_rows();
    let all_rows: Vec<usize> = (0..n).collect();
    let (_, ssr_linear) = regime_ols(&design, &all_rows)?;
    let plan = ScanPlan::new(&design, cfg)?;
    let scan = plan.scan(&design, design.targets());

    let fast_min = scan.min_ssr();
    let band = REFINE_BAND * fast_min.max(ssr_linear * 1e-9) + f64::MIN_POSITIVE;
    let mut near: Vec<usize> = (0..plan.splits.len())
        .filter(|&j| scan.ssr[j] <= fast_min + band)
        .collect();
    if near.len() > MAX_REFINED {
        near.sort_by(|&a, &b| scan.ssr[a].total_cmp(&scan.ssr[b]).then(a.cmp(&b)));
        near.truncate(MAX_REFINED);
        near.sort_unstable();
    }

    // Candidates are visited in increasing threshold order, so a tie keeps
    // the smaller threshold.
    let mut best: Option<(usize, f64, Vec<f64>, Vec<f64>)> = None;
    for j in near {
        let pos = plan.splits[j].pos;
        let (lo_rows, hi_rows) = plan.order.split_at(pos);
        let (Ok((phi, s1)), Ok((beta, s2))) =
            (regime_ols(&design, lo_rows), regime_ols(&design, hi_rows))
        else {
            continue;
        };
        let ssr = s1 + s2;
        let better = match &best {
            None => true,
            Some((_, b, _, _)) => ssr < b - TIE_TOL * b.abs(),
        };
        if better {
            best = Some((j, ssr, phi, beta));
        }
    }
    let (j, ssr, phi, beta) = best.ok_or(Error::NoAdmissibleSplit)?;
    let ssr = ssr.min(ssr_linear);
    let pos = plan.splits[j].pos;

    let tv = design.threshold_var();
    let last_lower = tv[plan.order[pos - 1]];
    let (threshold, threshold_index) = match cfg.threshold_mode {
        ThresholdMode::TimeIndex => {
            let first_upper = design.times()[plan.order[pos]];
            (last_lower + 0.5, first_upper)
        }
        ThresholdMode::SelfExciting => {
            let first_upper = plan.order[pos..]
                .iter()
                .map(|&i| design.times()[i])
                .min()
                .expect("regime 2 is nonempty");
            (last_lower, first_upper)
        }
    };

    let fit = TarFit {
        phi,
        beta,
        threshold,
        threshold_index,
        sigma2: ssr / n as f64,
        sigma2_linear: ssr_linear / n as f64,
        f_stat: f_statistic(n, ssr_linear, ssr),
        p_value: None,
        n_obs: n,
    };
    Ok((fit, design, plan))
}
