//! Exhaustive threshold scan with precomputed regime factorizations.
//!
//! Rows are sorted by the threshold variable; a split at position `i` puts
//! the first `i` sorted rows in regime 1. Regressors stay fixed across
//! bootstrap replicates, so every admissible split's two Cholesky factors
//! are computed once and each scan only needs the cumulative `Xᵀy`.

use alloc::vec;
use alloc::vec::Vec;

use super::{LagDesign, TarConfig};
use crate::error::{Error, Result};
use crate::linalg::Cholesky;

pub(crate) struct Split {
    /// Number of sorted rows in regime 1.
    pub pos: usize,
    lower: Cholesky,
    upper: Cholesky,
}

pub(crate) struct ScanPlan {
    k: usize,
    pub order: Vec<usize>,
    pub splits: Vec<Split>,
    pooled: Cholesky,
}

pub(crate) struct ScanResult {
    /// Fast SSR per admissible split, parallel to `ScanPlan::splits`.
    pub ssr: Vec<f64>,
    pub pooled_ssr: f64,
}

impl ScanPlan {
    pub fn new(design: &LagDesign, cfg: &TarConfig) -> Result<Self> {
        let n = design.n_rows();
        let k = design.n_cols();
        let tv = design.threshold_var();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| tv[a].total_cmp(&tv[b]));

        let mut total = vec![0.0; k * k];
        let mut cum = Vec::with_capacity((n + 1) * k * k);
        cum.extend_from_slice(&total);
        for &i in &order {
            let row = design.row(i);
            for a in 0..k {
                for b in 0..=a {
                    total[a * k + b] += row[a] * row[b];
                }
            }
            cum.extend_from_slice(&total);
        }
        let pooled = Cholesky::factor(&total, k)?;

        let min_rows = cfg.min_regime_rows(n);
        let mut splits = Vec::new();
        let mut upper = vec![0.0; k * k];
        if n >= 2 * min_rows {
            for pos in min_rows..=n - min_rows {
                // Splits fall only between distinct threshold values.
                if tv[order[pos - 1]] == tv[order[pos]] {
                    continue;
                }
                let lower_m = &cum[pos * k * k..(pos + 1) * k * k];
                for (u, (t, l)) in upper.iter_mut().zip(total.iter().zip(lower_m)) {
                    *u = t - l;
                }
                let (Ok(lower), Ok(upper)) =
                    (Cholesky::factor(lower_m, k), Cholesky::factor(&upper, k))
                else {
                    continue;
                };
                splits.push(Split { pos, lower, upper });
            }
        }
        if splits.is_empty() {
            return Err(Error::NoAdmissibleSplit);
        }
        Ok(Self {
            k,
            order,
            splits,
            pooled,
        })
    }

    /// Fast SSR of every admissible split for the target vector `y`
    /// (indexed like the design rows).
    pub fn scan(&self, design: &LagDesign, y: &[f64]) -> ScanResult {
        let k = self.k;
        let n = self.order.len();
        let mut cum_xty = Vec::with_capacity((n + 1) * k);
        let mut cum_yy = Vec::with_capacity(n + 1);
        let mut xty = vec![0.0; k];
        let mut yy = 0.0;
        cum_xty.extend_from_slice(&xty);
        cum_yy.push(0.0);
        for &i in &self.order {
            let yi = y[i];
            for (acc, x) in xty.iter_mut().zip(design.row(i)) {
                *acc += x * yi;
            }
            yy += yi * yi;
            cum_xty.extend_from_slice(&xty);
            cum_yy.push(yy);
        }
        let mut scratch = vec![0.0; k];
        let pooled_ssr = (yy - self.pooled.inv_quad_form(&xty, &mut scratch)).max(0.0);
        let mut upper_xty = vec![0.0; k];
        let ssr = self
            .splits
            .iter()
            .map(|s| {
                let lo = &cum_xty[s.pos * k..(s.pos + 1) * k];
                for (u, (t, l)) in upper_xty.iter_mut().zip(xty.iter().zip(lo)) {
                    *u = t - l;
                }
                let yy_lo = cum_yy[s.pos];
                let ssr_lo = (yy_lo - s.lower.inv_quad_form(lo, &mut scratch)).max(0.0);
                let ssr_hi =
                    (yy - yy_lo - s.upper.inv_quad_form(&upper_xty, &mut scratch)).max(0.0);
                ssr_lo + ssr_hi
            })
            .collect();
        ScanResult { ssr, pooled_ssr }
    }
}

impl ScanResult {
    pub fn min_ssr(&self) -> f64 {
        self.ssr.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// `n · (SSR_linear − SSR_min) / SSR_min`, the sup-F statistic.
    pub fn sup_f(&self, n_obs: usize) -> f64 {
        f_statistic(n_obs, self.pooled_ssr, self.min_ssr())
    }
}

pub(crate) fn f_statistic(n_obs: usize, ssr_linear: f64, ssr_split: f64) -> f64 {
    let gain = (ssr_linear - ssr_split).max(0.0);
    if ssr_split > 0.0 {
        n_obs as f64 * gain / ssr_split
    } else if gain > 0.0 {
        f64::INFINITY
    } else {
        0.0
    }
}
