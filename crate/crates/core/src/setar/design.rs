use alloc::vec;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use super::{TarConfig, ThresholdMode};
use crate::error::{Error, Result};
use crate::linalg::Cholesky;
use crate::series::{check_finite, ErrorSeries};

/// Regression design of an AR(p) model: one row `(1, Y_{t-1}, ..., Y_{t-p})`
/// per target `Y_t`, plus the threshold variable of that row.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LagDesign {
    cols: usize,
    rows: Vec<f64>,
    targets: Vec<f64>,
    threshold_var: Vec<f64>,
    times: Vec<usize>,
}

impl LagDesign {
    /// Assemble a design from explicit rows. Row `i` is paired with
    /// `targets[i]`, `threshold_var[i]` and stream index `i`.
    pub fn from_parts(
        rows: Vec<Vec<f64>>,
        targets: Vec<f64>,
        threshold_var: Vec<f64>,
    ) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::SeriesTooShort { needed: 1, got: 0 });
        }
        for len in [targets.len(), threshold_var.len()] {
            if len != n {
                return Err(Error::DimensionMismatch { expected: n, got: len });
            }
        }
        let cols = rows[0].len();
        let mut flat = Vec::with_capacity(n * cols);
        for row in &rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    got: row.len(),
                });
            }
            flat.extend_from_slice(row);
        }
        check_finite(&flat)?;
        check_finite(&targets)?;
        check_finite(&threshold_var)?;
        Ok(Self {
            cols,
            rows: flat,
            targets,
            threshold_var,
            times: (0..n).collect(),
        })
    }

    pub fn n_rows(&self) -> usize {
        self.targets.len()
    }

    pub fn n_cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.rows[i * self.cols..(i + 1) * self.cols]
    }

    pub fn targets(&self) -> &[f64] {
        &self.targets
    }

    pub fn threshold_var(&self) -> &[f64] {
        &self.threshold_var
    }

    /// Stream index of each row's target.
    pub fn times(&self) -> &[usize] {
        &self.times
    }

    pub(crate) fn predict_row(&self, i: usize, coef: &[f64]) -> f64 {
        self.row(i).iter().zip(coef).map(|(x, c)| x * c).sum()
    }
}

/// Build the lagged regression design for `series`. Needs more than `p`
/// values; the stricter two-regime length check lives in [`super::fit_tar`].
pub fn build_lag_design(series: &ErrorSeries, cfg: &TarConfig) -> Result<LagDesign> {
    cfg.validate()?;
    let y = series.values();
    check_finite(y)?;
    let p = cfg.p;
    if y.len() <= p {
        return Err(Error::SeriesTooShort {
            needed: p + 1,
            got: y.len(),
        });
    }
    let n = y.len() - p;
    let cols = p + 1;
    let mut rows = Vec::with_capacity(n * cols);
    let mut targets = Vec::with_capacity(n);
    let mut threshold_var = Vec::with_capacity(n);
    let mut times = Vec::with_capacity(n);
    for t in p..y.len() {
        rows.push(1.0);
        for lag in 1..=p {
            rows.push(y[t - lag]);
        }
        targets.push(y[t]);
        let stream_t = series.start_index() + t;
        threshold_var.push(match cfg.threshold_mode {
            ThresholdMode::SelfExciting => y[t - cfg.d],
            ThresholdMode::TimeIndex => stream_t as f64,
        });
        times.push(stream_t);
    }
    Ok(LagDesign {
        cols,
        rows,
        targets,
        threshold_var,
        times,
    })
}

/// Per-regime least-squares coefficients and the pooled residual variance.
/// An empty regime yields an empty coefficient vector.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegimeFit {
    pub phi: Vec<f64>,
    pub beta: Vec<f64>,
    /// `(1/T) Σ ε̂²` over both regimes.
    pub sigma2: f64,
}

/// Least squares within each regime; `in_regime2[i]` assigns row `i`.
pub fn ols_fit(design: &LagDesign, in_regime2: &[bool]) -> Result<RegimeFit> {
    let n = design.n_rows();
    if in_regime2.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: in_regime2.len(),
        });
    }
    let (r2, r1): (Vec<usize>, Vec<usize>) = (0..n).partition(|&i| in_regime2[i]);
    let (phi, ssr1) = regime_ols(design, &r1)?;
    let (beta, ssr2) = regime_ols(design, &r2)?;
    Ok(RegimeFit {
        phi,
        beta,
        sigma2: (ssr1 + ssr2) / n as f64,
    })
}

/// OLS on the listed rows, with the SSR taken from explicit residuals.
pub(crate) fn regime_ols(design: &LagDesign, idx: &[usize]) -> Result<(Vec<f64>, f64)> {
    if idx.is_empty() {
        return Ok((Vec::new(), 0.0));
    }
    let k = design.n_cols();
    if idx.len() < k + 1 {
        return Err(Error::SeriesTooShort {
            needed: k + 1,
            got: idx.len(),
        });
    }
    let mut xtx = vec![0.0; k * k];
    let mut xty = vec![0.0; k];
    for &i in idx {
        let row = design.row(i);
        let y = design.targets[i];
        for a in 0..k {
            xty[a] += row[a] * y;
            for b in 0..=a {
                xtx[a * k + b] += row[a] * row[b];
            }
        }
    }
    let coef = Cholesky::factor(&xtx, k)?.solve(&xty);
    let ssr = idx
        .iter()
        .map(|&i| {
            let e = design.targets[i] - design.predict_row(i, &coef);
            e * e
        })
        .sum();
    Ok((coef, ssr))
}
