use alloc::collections::VecDeque;
use alloc::vec::Vec;

use rand::Rng;

use crate::detector::Signal;
use crate::rng::derived_rng;

/// A detection also needs the KS statistic above this value.
const MIN_STATISTIC: f64 = 0.1;
/// Above this many lattice cells the p-value uses the limiting law.
const EXACT_CELLS: usize = 4_000_000;

/// Sliding-window Kolmogorov-Smirnov detector: compares the newest
/// `stat_size` values against `stat_size` draws from the older part of a
/// `window_size` window.
///
/// Draws at step `t` (counted since the last reset) come from a generator
/// seeded by `(seed, t)`, so the sample does not depend on earlier tests.
#[derive(Debug, Clone)]
pub struct Kswin {
    alpha: f64,
    window_size: usize,
    stat_size: usize,
    seed: u64,
    window: VecDeque<f64>,
    steps: u64,
}

impl Kswin {
    pub fn new(alpha: f64, window_size: usize, stat_size: usize, seed: u64) -> Self {
        Self {
            alpha,
            window_size,
            stat_size,
            seed,
            window: VecDeque::with_capacity(window_size + 1),
            steps: 0,
        }
    }

    pub(super) fn update(&mut self, x: f64) -> Signal {
        self.steps += 1;
        self.window.push_back(x);
        if self.window.len() > self.window_size {
            self.window.pop_front();
        }
        if self.window.len() < self.window_size {
            return Signal::None;
        }
        let old = self.window_size - self.stat_size;
        let mut rng = derived_rng(self.seed, self.steps);
        let reference: Vec<f64> = (0..self.stat_size)
            .map(|_| self.window[rng.random_range(0..old)])
            .collect();
        let recent: Vec<f64> = self.window.range(old..).copied().collect();
        let (d, p) = ks_two_sample(&reference, &recent);
        if p <= self.alpha && d > MIN_STATISTIC {
            let keep = self.window.len() - self.stat_size;
            self.window.drain(..keep);
            self.steps = 0;
            Signal::Drift
        } else {
            Signal::None
        }
    }
}

/// Two-sided two-sample Kolmogorov-Smirnov test. Returns the statistic and
/// the p-value, exact (by lattice path counting) unless the samples are
/// large.
///
/// # Panics
/// If either sample is empty.
pub fn ks_two_sample(a: &[f64], b: &[f64]) -> (f64, f64) {
    assert!(!a.is_empty() && !b.is_empty(), "samples must be nonempty");
    let mut xa = a.to_vec();
    let mut xb = b.to_vec();
    xa.sort_by(f64::total_cmp);
    xb.sort_by(f64::total_cmp);
    let (n, m) = (xa.len(), xb.len());
    // Statistic as an integer multiple of 1 / (n m).
    let (mut i, mut j, mut dmax) = (0usize, 0usize, 0u64);
    while i < n && j < m {
        let v = if xa[i] <= xb[j] { xa[i] } else { xb[j] };
        while i < n && xa[i] == v {
            i += 1;
        }
        while j < m && xb[j] == v {
            j += 1;
        }
        dmax = dmax.max(((i * m) as i64 - (j * n) as i64).unsigned_abs());
    }
    let stat = dmax as f64 / (n * m) as f64;
    let p = if n * m <= EXACT_CELLS {
        1.0 - prob_inside(n, m, dmax)
    } else {
        kolmogorov_sf(libm::sqrt((n * m) as f64 / (n + m) as f64) * stat)
    };
    (stat, p.clamp(0.0, 1.0))
}

/// Probability that a uniformly random monotone lattice path from (0, 0) to
/// (n, m) keeps `|i m - j n| < dmax` at every point.
fn prob_inside(n: usize, m: usize, dmax: u64) -> f64 {
    if dmax == 0 {
        return 0.0;
    }
    let inside = |i: usize, j: usize| ((i * m) as i64 - (j * n) as i64).unsigned_abs() < dmax;
    // row[j] = probability of reaching (i, j) without leaving the band.
    let mut row = alloc::vec![0.0f64; m + 1];
    row[0] = 1.0;
    for j in 1..=m {
        row[j] = if inside(0, j) { row[j - 1] * step_b(0, j - 1, n, m) } else { 0.0 };
    }
    for i in 1..=n {
        let mut next = alloc::vec![0.0f64; m + 1];
        for j in 0..=m {
            if !inside(i, j) {
                continue;
            }
            let mut v = row[j] * step_a(i - 1, j, n, m);
            if j > 0 {
                v += next[j - 1] * step_b(i, j - 1, n, m);
            }
            next[j] = v;
        }
        row = next;
    }
    row[m]
}

/// Probability that the next step of a uniform path at (i, j) advances `i`.
fn step_a(i: usize, j: usize, n: usize, m: usize) -> f64 {
    (n - i) as f64 / ((n - i) + (m - j)) as f64
}

fn step_b(i: usize, j: usize, n: usize, m: usize) -> f64 {
    (m - j) as f64 / ((n - i) + (m - j)) as f64
}

/// Survival function of the Kolmogorov distribution.
fn kolmogorov_sf(x: f64) -> f64 {
    if x <= 0.0 {
        return 1.0;
    }
    let mut s = 0.0;
    for k in 1..=100 {
        let kf = k as f64;
        let term = libm::exp(-2.0 * kf * kf * x * x);
        s += if k % 2 == 1 { term } else { -term };
        if term < 1e-16 {
            break;
        }
    }
    (2.0 * s).clamp(0.0, 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Exact p-value by enumerating every split of the pooled sample.
    fn permutation_p(a: &[f64], b: &[f64]) -> f64 {
        let pooled: Vec<f64> = a.iter().chain(b).copied().collect();
        let n = a.len();
        let total = pooled.len();
        let observed = ks_two_sample(a, b).0;
        let (mut hit, mut count) = (0u64, 0u64);
        for mask in 0u32..(1 << total) {
            if mask.count_ones() as usize != n {
                continue;
            }
            let (mut x, mut y) = (Vec::new(), Vec::new());
            for (k, &v) in pooled.iter().enumerate() {
                if mask >> k & 1 == 1 {
                    x.push(v);
                } else {
                    y.push(v);
                }
            }
            count += 1;
            if ks_two_sample(&x, &y).0 >= observed - 1e-12 {
                hit += 1;
            }
        }
        hit as f64 / count as f64
    }

    #[test]
    fn matches_permutation_enumeration() {
        let cases: [(&[f64], &[f64]); 3] = [
            (&[0.1, 0.4, 0.5, 0.9, 1.3], &[0.2, 0.35, 0.6, 0.7, 0.8, 1.1]),
            (&[0.1, 0.2, 0.3, 0.4], &[0.5, 0.6, 0.7, 0.8, 0.9, 1.0]),
            (&[1.0, 2.0, 3.0, 4.0, 5.0, 6.0], &[3.5, 4.5, 5.5, 6.5, 7.5]),
        ];
        for (a, b) in cases {
            let (_, p) = ks_two_sample(a, b);
            assert!((p - permutation_p(a, b)).abs() < 1e-12, "{a:?} {b:?}");
        }
    }

    #[test]
    fn statistic_of_disjoint_samples_is_one() {
        let (d, p) = ks_two_sample(&[1.0, 2.0, 3.0], &[4.0, 5.0, 6.0]);
        assert_eq!(d, 1.0);
        assert!((p - 0.1).abs() < 1e-12);
    }

    #[test]
    fn identical_samples_have_unit_p() {
        let a = [0.0, 1.0, 0.0, 1.0];
        let (d, p) = ks_two_sample(&a, &a);
        assert_eq!(d, 0.0);
        assert_eq!(p, 1.0);
    }

    #[test]
    fn limiting_law_agrees_with_exact_for_moderate_samples() {
        let a: Vec<f64> = (0..200).map(|i| i as f64 / 200.0).collect();
        let b: Vec<f64> = (0..200).map(|i| 0.1 + i as f64 / 200.0).collect();
        let (d, exact) = ks_two_sample(&a, &b);
        let approx = kolmogorov_sf(libm::sqrt(100.0) * d);
        assert!((exact - approx).abs() < 0.02, "{exact} {approx}");
    }

    #[test]
    fn window_resets_to_recent_values() {
        let mut k = Kswin::new(0.005, 100, 30, 1);
        let mut fired = None;
        for t in 0..400 {
            let x = if t < 200 { (t % 10) as f64 / 10.0 } else { 5.0 + (t % 10) as f64 / 10.0 };
            if k.update(x) == Signal::Drift {
                fired = Some(t);
                break;
            }
        }
        let t = fired.unwrap();
        assert!((200..230).contains(&t), "{t}");
        assert_eq!(k.window.len(), 30);
    }
}
