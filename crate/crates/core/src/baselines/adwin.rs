use alloc::collections::VecDeque;
use alloc::vec::Vec;

use crate::detector::Signal;

/// Buckets per row before the two oldest merge.
const MAX_BUCKETS: usize = 5;
/// Cut checks run every `CLOCK` samples.
const CLOCK: usize = 32;
/// No cut is searched while the window holds this many samples or fewer.
const MIN_WINDOW: usize = 10;
/// Each side of a cut holds more than this many samples.
const MIN_SUBWINDOW: usize = 5;

#[derive(Debug, Clone, Copy)]
struct Bucket {
    total: f64,
    variance: f64,
}

/// Adaptive window over an exponential histogram. Row `i` holds buckets
/// summarizing `2^i` samples each; within a row the front is oldest.
#[derive(Debug, Clone)]
pub struct Adwin {
    delta: f64,
    rows: Vec<VecDeque<Bucket>>,
    width: usize,
    total: f64,
    variance: f64,
    ticks: usize,
}

impl Adwin {
    pub fn new(delta: f64) -> Self {
        Self {
            delta,
            rows: Vec::new(),
            width: 0,
            total: 0.0,
            variance: 0.0,
            ticks: 0,
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn mean(&self) -> f64 {
        if self.width == 0 {
            0.0
        } else {
            self.total / self.width as f64
        }
    }

    pub fn bucket_count(&self) -> usize {
        self.rows.iter().map(VecDeque::len).sum()
    }

    pub(super) fn update(&mut self, value: f64) -> Signal {
        self.insert(value);
        self.ticks += 1;
        if self.ticks % CLOCK == 0 && self.width > MIN_WINDOW && self.shrink() {
            Signal::Drift
        } else {
            Signal::None
        }
    }

    fn insert(&mut self, value: f64) {
        self.width += 1;
        if self.width > 1 {
            let prev = (self.width - 1) as f64;
            let d = value - self.total / prev;
            self.variance += prev * d * d / self.width as f64;
        }
        self.total += value;
        if self.rows.is_empty() {
            self.rows.push(VecDeque::new());
        }
        self.rows[0].push_back(Bucket {
            total: value,
            variance: 0.0,
        });
        self.compress();
    }

    fn compress(&mut self) {
        let mut i = 0;
        while i < self.rows.len() && self.rows[i].len() > MAX_BUCKETS {
            let size = (1u64 << i) as f64;
            let a = self.rows[i].pop_front().expect("row is full");
            let b = self.rows[i].pop_front().expect("row is full");
            let d = a.total / size - b.total / size;
            let merged = Bucket {
                total: a.total + b.total,
                variance: a.variance + b.variance + size * size * d * d / (2.0 * size),
            };
            if i + 1 == self.rows.len() {
                self.rows.push(VecDeque::new());
            }
            self.rows[i + 1].push_back(merged);
            i += 1;
        }
    }

    fn drop_oldest(&mut self) {
        let row = self.rows.len() - 1;
        let b = self.rows[row].pop_front().expect("top row is nonempty");
        let n1 = (1u64 << row) as f64;
        self.width -= 1 << row;
        self.total -= b.total;
        let w = self.width as f64;
        if self.width > 0 {
            let d = b.total / n1 - self.total / w;
            self.variance -= b.variance + n1 * w * d * d / (n1 + w);
            self.variance = self.variance.max(0.0);
        } else {
            self.variance = 0.0;
        }
        while self.rows.last().is_some_and(VecDeque::is_empty) {
            self.rows.pop();
        }
    }

    /// Drop old buckets while some split of the window shows two means that
    /// differ beyond the bound. Returns whether anything was dropped.
    fn shrink(&mut self) -> bool {
        let mut changed = false;
        while self.find_cut() {
            self.drop_oldest();
            changed = true;
        }
        changed
    }

    fn find_cut(&self) -> bool {
        let (mut n0, mut u0) = (0usize, 0.0);
        for (row, buckets) in self.rows.iter().enumerate().rev() {
            for b in buckets {
                n0 += 1 << row;
                u0 += b.total;
                let n1 = self.width - n0;
                if n1 == 0 {
                    return false;
                }
                if n0 > MIN_SUBWINDOW + 1
                    && n1 > MIN_SUBWINDOW + 1
                    && self.cut(n0, u0, n1, self.total - u0)
                {
                    return true;
                }
            }
        }
        false
    }

    fn cut(&self, n0: usize, u0: f64, n1: usize, u1: f64) -> bool {
        let diff = (u0 / n0 as f64 - u1 / n1 as f64).abs();
        diff > cut_bound(self.width, n0, n1, self.variance / self.width as f64, self.delta)
    }
}

/// Bernstein-type threshold on the mean difference of a split of a window
/// of `width` samples with per-sample variance `v`.
pub(super) fn cut_bound(width: usize, n0: usize, n1: usize, v: f64, delta: f64) -> f64 {
    let dd = libm::log(2.0 * libm::log(width as f64) / delta);
    let m = 1.0 / (n0 - MIN_SUBWINDOW + 1) as f64 + 1.0 / (n1 - MIN_SUBWINDOW + 1) as f64;
    libm::sqrt(2.0 * m * v * dd) + 2.0 / 3.0 * dd * m
}
