use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An ordered run of per-sample losses, anchored at `start_index` in the
/// parent stream.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErrorSeries {
    values: Vec<f64>,
    start_index: usize,
}

impl ErrorSeries {
    pub fn new(values: Vec<f64>, start_index: usize) -> Result<Self> {
        check_finite(&values)?;
        Ok(Self {
            values,
            start_index,
        })
    }

    pub fn from_slice(values: &[f64]) -> Result<Self> {
        Self::new(values.to_vec(), 0)
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn start_index(&self) -> usize {
        self.start_index
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Sub-series over `range` of positions, keeping absolute indexing.
    pub fn slice(&self, start: usize, len: usize) -> ErrorSeries {
        ErrorSeries {
            values: self.values[start..start + len].to_vec(),
            start_index: self.start_index + start,
        }
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }
}

pub(crate) fn check_finite(values: &[f64]) -> Result<()> {
    match values.iter().position(|v| !v.is_finite()) {
        Some(index) => Err(Error::NonFiniteValue { index }),
        None => Ok(()),
    }
}

/// Quantile by linear interpolation between closest ranks (the `type 7`
/// estimator). `q` is clamped to `[0, 1]`; returns `None` for empty input.
pub fn quantile(values: &[f64], q: f64) -> Option<f64> {
    if values.is_empty() {
        return None;
    }
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    Some(quantile_sorted(&sorted, q))
}

pub(crate) fn quantile_sorted(sorted: &[f64], q: f64) -> f64 {
    let q = q.clamp(0.0, 1.0);
    let h = (sorted.len() - 1) as f64 * q;
    let lo = libm::floor(h) as usize;
    let hi = (lo + 1).min(sorted.len() - 1);
    sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo])
}

#[cfg(test)]
pub(crate) fn mean(values: &[f64]) -> f64 {
    if values.is_empty() {
        return 0.0;
    }
    values.iter().sum::<f64>() / values.len() as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn rejects_non_finite() {
        let err = ErrorSeries::new(vec![0.0, f64::NAN], 0).unwrap_err();
        assert_eq!(err, Error::NonFiniteValue { index: 1 });
    }

    #[test]
    fn interpolated_quantiles() {
        let v = [1.0, 2.0, 3.0, 4.0];
        assert_eq!(quantile(&v, 0.75), Some(3.25));
        assert_eq!(quantile(&v, 0.0), Some(1.0));
        assert_eq!(quantile(&v, 1.0), Some(4.0));
        assert_eq!(quantile(&[5.0], 0.75), Some(5.0));
        assert_eq!(quantile(&[], 0.5), None);
    }

    #[test]
    fn slice_keeps_absolute_index() {
        let s = ErrorSeries::new(vec![1.0, 2.0, 3.0, 4.0], 10).unwrap();
        let sub = s.slice(1, 2);
        assert_eq!(sub.values(), &[2.0, 3.0]);
        assert_eq!(sub.start_index(), 11);
    }
}
